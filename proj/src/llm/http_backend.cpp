#include "phoneagent/llm/http_backend.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "phoneagent/core/base64.hpp"
#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/overloaded.hpp"

namespace phoneagent {
namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v == nullptr ? std::string{} : std::string(v);
}

}  // namespace

HttpBackendOptions HttpBackendOptions::from_environment() {
  HttpBackendOptions options;
  options.url = env_or_empty(kModelUrlEnv);
  if (options.url.empty()) throw ConfigError(std::string(kModelUrlEnv) + " is not set");
  options.api_key = env_or_empty(kApiKeyEnv);
  options.model = env_or_empty(kModelNameEnv);
  return options;
}

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
  if (options_.attempts < 1) throw ConfigError("model request attempts must be >= 1");
  const auto scheme = options_.url.find("://");
  if (scheme == std::string::npos) throw ConfigError("model url needs a scheme: " + options_.url);
  const auto slash = options_.url.find('/', scheme + 3);
  origin_ = options_.url.substr(0, slash);
  path_ = slash == std::string::npos ? "/v1/chat/completions" : options_.url.substr(slash);
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

Json HttpBackend::build_body(const ModelRequest& request) const {
  Json messages = Json::array();
  for (const auto& message : request.messages) {
    Json content = Json::array();
    for (const auto& part : message.parts) {
      std::visit(Overloaded{
                     [&](const TextPart& t) { content.push_back({{"type", "text"}, {"text", t.text}}); },
                     [&](const ImagePart& i) {
                       const ImageBytes bytes = read_image(i.image);
                       content.push_back({{"type", "image_url"},
                                          {"image_url", {{"url", "data:image/png;base64," + base64_encode(bytes)}}}});
                     },
                 },
                 part);
    }
    messages.push_back({{"role", std::string(to_string(message.role))}, {"content", std::move(content)}});
  }
  Json body = Json::object();
  if (!options_.model.empty()) body["model"] = options_.model;
  body["messages"] = std::move(messages);
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_output_tokens;
  return body;
}

std::string HttpBackend::complete(const ModelRequest& request) {
  validate(request);
  const std::string body = build_body(request).dump();

  httplib::Client client(origin_);
  if (!client.is_valid()) throw ConfigError("invalid model url: " + options_.url);
  const auto t = options_.timeout.count();
  client.set_connection_timeout(t);
  client.set_read_timeout(t);
  client.set_write_timeout(t);
  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);

  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    if (attempt > 1) {
      options_.sleep(backoff);
      backoff *= 2;
    }
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    const Json parsed = Json::parse(res->body, nullptr, false);
    const Json* content = nullptr;
    if (!parsed.is_discarded() && parsed.contains("choices") && parsed["choices"].is_array() &&
        !parsed["choices"].empty()) {
      const Json& choice = parsed["choices"][0];
      if (choice.contains("message") && choice["message"].contains("content") &&
          choice["message"]["content"].is_string()) {
        content = &choice["message"]["content"];
      }
    }
    if (content == nullptr) {
      last_error = "response has no choices[0].message.content";
      continue;
    }
    return content->get<std::string>();
  }
  throw TransportError("model request failed after " + std::to_string(options_.attempts) +
                           " attempts: " + last_error,
                       options_.attempts);
}

}  // namespace phoneagent
