#pragma once

#include <chrono>
#include <functional>
#include <string>

#include "phoneagent/llm/request.hpp"

namespace phoneagent {

inline constexpr const char* kModelUrlEnv = "PHONEAGENT_MODEL_URL";
inline constexpr const char* kApiKeyEnv = "PHONEAGENT_API_KEY";
inline constexpr const char* kModelNameEnv = "PHONEAGENT_MODEL";

struct HttpBackendOptions {
  /// Full endpoint, e.g. "https://api.example.com/v1/chat/completions". A URL
  /// without a path gets "/v1/chat/completions".
  std::string url;
  std::string api_key;  // sent as "Authorization: Bearer <key>" when non-empty
  std::string model;
  std::chrono::seconds timeout{120};
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};  // doubles after each failure
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleep_for

  /// Reads PHONEAGENT_MODEL_URL, PHONEAGENT_API_KEY and PHONEAGENT_MODEL.
  /// Throws ConfigError when the URL is unset.
  static HttpBackendOptions from_environment();
};

/// Chat-completions client. Images travel as base64 PNG data URLs in
/// `image_url` parts; the reply is `choices[0].message.content`.
class HttpBackend final : public ModelBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options);
  std::string complete(const ModelRequest& request) override;

  /// The JSON body sent for `request`.
  Json build_body(const ModelRequest& request) const;

 private:
  HttpBackendOptions options_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
};

}  // namespace phoneagent
