#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace phoneagent {

using Json = nlohmann::ordered_json;

// Typed field access for decoding files. Every failure is a DecodeError whose
// field() is the dotted path of the offending value, e.g. `shortcuts[2].name`.
namespace fields {

std::string join(const std::string& path, std::string_view key);
std::string index(const std::string& path, std::size_t i);

const Json& object(const Json& value, const std::string& path);
const Json& array(const Json& value, const std::string& path);
const Json& required(const Json& object, std::string_view key, const std::string& path);
const Json* optional(const Json& object, std::string_view key);

std::string string(const Json& object, std::string_view key, const std::string& path);
std::string string_or(const Json& object, std::string_view key, const std::string& path,
                      std::string fallback);
long long integer(const Json& object, std::string_view key, const std::string& path);
long long integer_or(const Json& object, std::string_view key, const std::string& path,
                     long long fallback);
double number_or(const Json& object, std::string_view key, const std::string& path,
                 double fallback);
bool boolean_or(const Json& object, std::string_view key, const std::string& path, bool fallback);

/// Fixed-length integer array such as `[x, y]` or `[x, y, w, h]`.
std::vector<int> int_tuple(const Json& value, std::size_t n, const std::string& path);

}  // namespace fields

/// Parses a JSON file. Missing file -> NotFoundError; syntax error ->
/// DecodeError with field "<file>".
Json read_json_file(const std::filesystem::path& path);

/// Writes `value` with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace phoneagent
