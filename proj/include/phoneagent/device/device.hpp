#pragma once

#include <string_view>

#include "phoneagent/core/action.hpp"
#include "phoneagent/core/screen.hpp"

namespace phoneagent {

/// One open session on a phone. Operations on a session are serialized by
/// the caller; sessions are not thread-safe.
class Device {
 public:
  virtual ~Device() = default;

  /// Performs `operation` and returns the resulting screen.
  virtual ScreenState execute(const AtomicOperation& operation) = 0;

  /// Screen as it is now, without acting.
  virtual ScreenState capture() = 0;

  virtual int width() = 0;
  virtual int height() = 0;
  virtual std::string_view backend_name() const = 0;
};

}  // namespace phoneagent
