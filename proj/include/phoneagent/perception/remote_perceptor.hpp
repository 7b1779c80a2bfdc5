#pragma once

#include <chrono>
#include <string>

#include "phoneagent/perception/perception.hpp"

namespace phoneagent {

struct RemotePerceptionOptions {
  std::string base_url;  // e.g. "http://127.0.0.1:8100"
  std::chrono::seconds timeout{30};
};

/// Client for a perception service exposing one HTTP endpoint per stage.
/// Every request is a JSON POST whose `image` field is the base64 PNG.
///
///   POST /ocr/detection    {image}        -> {"boxes": [[x, y, w, h], ...]}
///   POST /ocr/recognition  {image, boxes} -> {"texts": ["...", ...]}
///   POST /icon/grounding   {image}        -> {"boxes": [[x, y, w, h], ...]}
///   POST /icon/caption     {image, boxes} -> {"captions": ["...", ...]}
///
/// Recognition and captioning answer one string per input box. Text and icon
/// lists are merged without deduplication and then ordered by box origin.
/// Any transport failure, non-200 status, or malformed body is a
/// PerceptionError.
class RemotePerceptor final : public Perceptor {
 public:
  explicit RemotePerceptor(RemotePerceptionOptions options);
  PerceptionResult perceive(const ScreenState& state) override;

 private:
  RemotePerceptionOptions options_;
};

}  // namespace phoneagent
