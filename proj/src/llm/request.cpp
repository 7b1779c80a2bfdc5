#include "phoneagent/llm/request.hpp"

#include <stdexcept>

#include "phoneagent/core/overloaded.hpp"

namespace phoneagent {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

void validate(const ModelRequest& request) {
  if (request.caller.empty()) throw std::invalid_argument("model request has no caller tag");
  if (request.messages.empty()) throw std::invalid_argument("model request has no messages");
  for (const auto& message : request.messages) {
    for (const auto& part : message.parts) {
      const auto* image = std::get_if<ImagePart>(&part);
      if (image == nullptr) continue;
      if (const auto* path = std::get_if<std::filesystem::path>(&image->image)) {
        if (!std::filesystem::is_regular_file(*path)) {
          throw std::invalid_argument("image part is not a readable file: " + path->string());
        }
      } else if (!std::get<std::shared_ptr<const ImageBytes>>(image->image)) {
        throw std::invalid_argument("image part has no data");
      }
    }
  }
}

std::string request_text(const ModelRequest& request) {
  std::string out;
  for (const auto& message : request.messages) {
    for (const auto& part : message.parts) {
      if (const auto* text = std::get_if<TextPart>(&part)) {
        if (!out.empty()) out += '\n';
        out += text->text;
      }
    }
  }
  return out;
}

std::size_t image_count(const ModelRequest& request) {
  std::size_t n = 0;
  for (const auto& message : request.messages) {
    for (const auto& part : message.parts) n += std::holds_alternative<ImagePart>(part) ? 1 : 0;
  }
  return n;
}

Json request_to_json(const ModelRequest& request, const std::filesystem::path& base) {
  Json messages = Json::array();
  for (const auto& message : request.messages) {
    Json parts = Json::array();
    for (const auto& part : message.parts) {
      std::visit(Overloaded{
                     [&](const TextPart& t) { parts.push_back({{"type", "text"}, {"text", t.text}}); },
                     [&](const ImagePart& i) {
                       Json entry = {{"type", "image"}};
                       if (const auto* path = std::get_if<std::filesystem::path>(&i.image)) {
                         const auto rel = path->lexically_relative(base);
                         const bool under = !base.empty() && !rel.empty() && *rel.begin() != "..";
                         entry["path"] = (under ? rel : *path).generic_string();
                       } else {
                         const auto& blob = std::get<std::shared_ptr<const ImageBytes>>(i.image);
                         entry["inline_bytes"] = blob ? blob->size() : 0;
                       }
                       parts.push_back(std::move(entry));
                     },
                 },
                 part);
    }
    messages.push_back({{"role", std::string(to_string(message.role))}, {"parts", std::move(parts)}});
  }
  Json out = Json::object();
  out["caller"] = request.caller;
  out["temperature"] = request.temperature;
  out["max_output_tokens"] = request.max_output_tokens;
  out["messages"] = std::move(messages);
  return out;
}

}  // namespace phoneagent
