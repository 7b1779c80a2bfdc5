#include "phoneagent/perception/remote_perceptor.hpp"

#include <httplib.h>

#include "phoneagent/core/base64.hpp"
#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace {

class StageClient {
 public:
  StageClient(const RemotePerceptionOptions& options, std::string image)
      : client_(options.base_url), image_(std::move(image)) {
    if (!client_.is_valid()) throw PerceptionError("invalid perception service url: " + options.base_url);
    const auto t = options.timeout.count();
    client_.set_connection_timeout(t);
    client_.set_read_timeout(t);
    client_.set_write_timeout(t);
  }

  Json post(const std::string& endpoint, const Json* boxes) {
    Json body = Json::object();
    body["image"] = image_;
    if (boxes != nullptr) body["boxes"] = *boxes;
    auto res = client_.Post(endpoint, body.dump(), "application/json");
    if (!res) {
      throw PerceptionError(endpoint + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw PerceptionError(endpoint + ": HTTP " + std::to_string(res->status));
    }
    Json parsed = Json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      throw PerceptionError(endpoint + ": response is not a JSON object");
    }
    return parsed;
  }

 private:
  httplib::Client client_;
  std::string image_;
};

std::vector<Box> boxes_of(const Json& response, const std::string& endpoint) {
  const Json* boxes = response.contains("boxes") ? &response["boxes"] : nullptr;
  if (boxes == nullptr || !boxes->is_array()) throw PerceptionError(endpoint + ": missing boxes");
  std::vector<Box> out;
  for (std::size_t i = 0; i < boxes->size(); ++i) {
    try {
      const auto b = fields::int_tuple((*boxes)[i], 4, fields::index("boxes", i));
      out.push_back({b[0], b[1], b[2], b[3]});
    } catch (const DecodeError& e) {
      throw PerceptionError(endpoint + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> strings_of(const Json& response, const char* key, std::size_t expected,
                                    const std::string& endpoint) {
  const Json* list = response.contains(key) ? &response[key] : nullptr;
  if (list == nullptr || !list->is_array()) throw PerceptionError(endpoint + ": missing " + key);
  if (list->size() != expected) {
    throw PerceptionError(endpoint + ": expected " + std::to_string(expected) + " " + key + ", got " +
                          std::to_string(list->size()));
  }
  std::vector<std::string> out;
  for (const auto& v : *list) {
    if (!v.is_string()) throw PerceptionError(endpoint + ": " + key + " must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Json boxes_to_json(const std::vector<Box>& boxes) {
  Json out = Json::array();
  for (const auto& b : boxes) out.push_back({b.x, b.y, b.width, b.height});
  return out;
}

}  // namespace

RemotePerceptor::RemotePerceptor(RemotePerceptionOptions options) : options_(std::move(options)) {}

PerceptionResult RemotePerceptor::perceive(const ScreenState& state) {
  ImageBytes png;
  try {
    png = read_image(state.image);
  } catch (const Error& e) {
    throw PerceptionError(std::string("cannot read screenshot: ") + e.what());
  }
  if (png.empty()) throw PerceptionError("screenshot is empty");
  StageClient client(options_, base64_encode(png));

  PerceptionResult result;
  auto add = [&](PerceivedElement::Kind kind, const std::vector<Box>& boxes,
                 const std::vector<std::string>& contents) {
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      PerceivedElement e;
      e.kind = kind;
      e.content = contents[i];
      e.box = boxes[i];
      e.center = boxes[i].center();
      result.elements.push_back(std::move(e));
    }
  };

  const auto text_boxes = boxes_of(client.post("/ocr/detection", nullptr), "/ocr/detection");
  const Json text_boxes_json = boxes_to_json(text_boxes);
  const auto texts = strings_of(client.post("/ocr/recognition", &text_boxes_json), "texts",
                                text_boxes.size(), "/ocr/recognition");
  add(PerceivedElement::Kind::Text, text_boxes, texts);

  const auto icon_boxes = boxes_of(client.post("/icon/grounding", nullptr), "/icon/grounding");
  const Json icon_boxes_json = boxes_to_json(icon_boxes);
  const auto captions = strings_of(client.post("/icon/caption", &icon_boxes_json), "captions",
                                   icon_boxes.size(), "/icon/caption");
  add(PerceivedElement::Kind::Icon, icon_boxes, captions);

  normalize(result, state.width, state.height);
  return result;
}

}  // namespace phoneagent
