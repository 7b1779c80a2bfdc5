#pragma once

#include <functional>
#include <string_view>

namespace phoneagent {

using WarningSink = std::function<void(std::string_view)>;

/// Emits a warning through the installed sink (stderr by default).
void warn(std::string_view message);

/// Installs `sink` and returns the previous one. Pass an empty function to
/// restore the stderr default.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace phoneagent
