#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

enum class Role { System, User, Assistant };
std::string_view to_string(Role role);

struct TextPart {
  std::string text;
};

struct ImagePart {
  ImageHandle image;
};

using Part = std::variant<TextPart, ImagePart>;

struct Message {
  Role role = Role::User;
  std::vector<Part> parts;
};

/// One chat-style completion request. `caller` names the agent issuing it
/// (manager, operator, reflector, ...) and keys scripted responses.
struct ModelRequest {
  std::string caller;
  std::vector<Message> messages;
  double temperature = 0.0;
  int max_output_tokens = 2048;
};

/// Throws std::invalid_argument: no messages, empty caller, or an image part
/// whose file does not exist.
void validate(const ModelRequest& request);

/// All text parts joined with newlines, in message order. This is what
/// scripted `contains` patterns and prompt-content assertions look at.
std::string request_text(const ModelRequest& request);

std::size_t image_count(const ModelRequest& request);

/// Audit form. File images are written as paths relative to `base` when they
/// lie under it; in-memory images as `{"inline_bytes": n}`.
Json request_to_json(const ModelRequest& request, const std::filesystem::path& base);

class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  /// Returns the raw model text. Throws TransportError or ScriptMissError.
  virtual std::string complete(const ModelRequest& request) = 0;
};

}  // namespace phoneagent
