#include "phoneagent/perception/perception.hpp"

#include <algorithm>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {

void normalize(PerceptionResult& result, int width, int height) {
  for (auto& e : result.elements) {
    auto clamp_x = [&](int v) { return std::clamp(v, 0, width); };
    auto clamp_y = [&](int v) { return std::clamp(v, 0, height); };
    const int x0 = clamp_x(e.box.x), y0 = clamp_y(e.box.y);
    const int x1 = clamp_x(e.box.x + e.box.width), y1 = clamp_y(e.box.y + e.box.height);
    e.box = {x0, y0, x1 - x0, y1 - y0};
    e.center = {clamp_x(e.center.x), clamp_y(e.center.y)};
  }
  std::stable_sort(result.elements.begin(), result.elements.end(),
                   [](const PerceivedElement& a, const PerceivedElement& b) {
                     if (a.box.y != b.box.y) return a.box.y < b.box.y;
                     return a.box.x < b.box.x;
                   });
}

std::string format_perception(const PerceptionResult& result) {
  std::string out;
  for (const auto& e : result.elements) {
    out += "- ";
    out += e.kind == PerceivedElement::Kind::Text ? "text " : "icon ";
    out += quote(e.content);
    out += " at (" + std::to_string(e.center.x) + ", " + std::to_string(e.center.y) + ")\n";
  }
  return out;
}

Json perception_to_json(const PerceptionResult& result) {
  Json out = Json::array();
  for (const auto& e : result.elements) {
    Json entry = Json::object();
    entry["kind"] = e.kind == PerceivedElement::Kind::Text ? "text" : "icon";
    entry["content"] = e.content;
    entry["center"] = {e.center.x, e.center.y};
    entry["box"] = {e.box.x, e.box.y, e.box.width, e.box.height};
    if (e.truth_kind) entry["truth_kind"] = std::string(to_string(*e.truth_kind));
    out.push_back(std::move(entry));
  }
  return out;
}

PerceptionResult perception_from_json(const Json& value, const std::string& path) {
  fields::array(value, path);
  PerceptionResult result;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string epath = fields::index(path, i);
    const Json& entry = value[i];
    PerceivedElement e;
    const std::string kind = fields::string(entry, "kind", epath);
    if (kind != "text" && kind != "icon") throw DecodeError(fields::join(epath, "kind"), "expected text or icon");
    e.kind = kind == "text" ? PerceivedElement::Kind::Text : PerceivedElement::Kind::Icon;
    e.content = fields::string(entry, "content", epath);
    const auto center = fields::int_tuple(fields::required(entry, "center", epath), 2, fields::join(epath, "center"));
    const auto box = fields::int_tuple(fields::required(entry, "box", epath), 4, fields::join(epath, "box"));
    e.center = {center[0], center[1]};
    e.box = {box[0], box[1], box[2], box[3]};
    if (fields::optional(entry, "truth_kind") != nullptr) {
      e.truth_kind = parse_element_kind(fields::string(entry, "truth_kind", epath));
      if (!e.truth_kind) throw DecodeError(fields::join(epath, "truth_kind"), "unknown element kind");
    }
    result.elements.push_back(std::move(e));
  }
  return result;
}

}  // namespace phoneagent
