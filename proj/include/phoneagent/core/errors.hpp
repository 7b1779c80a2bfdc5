#pragma once

#include <stdexcept>
#include <string>

namespace phoneagent {

/// Root of every error thrown by the library. The CLI maps subclasses to
/// distinct process exit codes (see README, "Exit codes").
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file or directory that should exist does not.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A file exists but its content does not match the expected schema.
/// The message names the offending field path.
class DecodeError : public Error {
 public:
  DecodeError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Invalid configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Failure talking to a device backend; carries the raw driver output.
class DeviceError : public Error {
 public:
  DeviceError(const std::string& message, std::string raw_output = {})
      : Error(message), raw_output_(std::move(raw_output)) {}
  const std::string& raw_output() const { return raw_output_; }

 private:
  std::string raw_output_;
};

class PerceptionError : public Error {
 public:
  using Error::Error;
};

/// Model endpoint failure after the retry budget is spent.
class TransportError : public Error {
 public:
  TransportError(const std::string& message, int attempts)
      : Error(message), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// A scripted backend received a request it has no answer for. This is a
/// bug in the test script and must never be swallowed.
class ScriptMissError : public Error {
 public:
  ScriptMissError(std::string caller, int step, const std::string& message)
      : Error(message), caller_(std::move(caller)), step_(step) {}
  const std::string& caller() const { return caller_; }
  int step() const { return step_; }

 private:
  std::string caller_;
  int step_;
};

/// A model response did not follow the agent's response grammar.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace phoneagent
