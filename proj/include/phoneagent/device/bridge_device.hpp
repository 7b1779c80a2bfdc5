#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phoneagent/device/device.hpp"

namespace phoneagent {

struct CommandResult {
  int exit_code = 0;
  std::string output;  // stdout and stderr combined
};

/// Runs one external command given as an argument vector.
class CommandRunner {
 public:
  virtual ~CommandRunner() = default;
  virtual CommandResult run(const std::vector<std::string>& argv) = 0;
};

/// Runs commands through /bin/sh with every argument single-quoted.
class ShellCommandRunner final : public CommandRunner {
 public:
  CommandResult run(const std::vector<std::string>& argv) override;
};

struct BridgeOptions {
  std::string adb = "adb";
  std::string serial;  // empty: the only attached device
  std::filesystem::path screenshot_dir = ".";
  std::string remote_screenshot = "/sdcard/phoneagent_screen.png";
  /// App name -> package used by Open_App.
  std::map<std::string, std::string> app_packages;
  std::chrono::seconds wait_duration{10};
  std::function<void(std::chrono::seconds)> sleep;  // defaults to this_thread::sleep_for
};

/// Real phone over the Android debug bridge. Each operation maps to exactly
/// one shell-out:
///
///   Tap(x,y)          adb [-s S] shell input tap X Y
///   Swipe(..)         adb [-s S] shell input swipe X1 Y1 X2 Y2 500
///   Type(t)           adb [-s S] shell input text <escaped t>
///   Enter             adb [-s S] shell input keyevent KEYCODE_ENTER
///   Back              adb [-s S] shell input keyevent KEYCODE_BACK
///   Home              adb [-s S] shell input keyevent KEYCODE_HOME
///   Switch_App        adb [-s S] shell input keyevent KEYCODE_APP_SWITCH
///   Open_App(a)       adb [-s S] shell monkey -p <package of a> -c android.intent.category.LAUNCHER 1
///   Wait              (no command) sleeps wait_duration
///   capture           adb [-s S] shell screencap -p <remote>; adb [-s S] pull <remote> <local>
///   size              adb [-s S] shell wm size
///
/// A non-zero exit status, or output starting with "error:", is a
/// DeviceError carrying the raw output.
class BridgeDevice final : public Device {
 public:
  BridgeDevice(BridgeOptions options, std::shared_ptr<CommandRunner> runner);

  ScreenState execute(const AtomicOperation& operation) override;
  ScreenState capture() override;
  int width() override;
  int height() override;
  std::string_view backend_name() const override { return "bridge"; }

  /// The argument vector for `operation`; empty for Wait.
  std::vector<std::string> command_for(const AtomicOperation& operation) const;

 private:
  std::vector<std::string> adb(std::vector<std::string> args) const;
  CommandResult run_checked(const std::vector<std::string>& argv);
  void query_size();

  BridgeOptions options_;
  std::shared_ptr<CommandRunner> runner_;
  std::optional<std::pair<int, int>> size_;
  int steps_ = 0;
};

/// Escapes text for `input text`: spaces become %s and shell
/// metacharacters are backslash-escaped for the device shell.
std::string escape_input_text(std::string_view text);

}  // namespace phoneagent
