#include "phoneagent/device/bridge_device.hpp"

#include <cstdio>
#include <regex>
#include <thread>

#include <sys/wait.h>

#include "phoneagent/core/errors.hpp"
#include "phoneagent/core/overloaded.hpp"
#include "phoneagent/device/render.hpp"

namespace phoneagent {
namespace {

std::string shell_quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

CommandResult ShellCommandRunner::run(const std::vector<std::string>& argv) {
  std::string command;
  for (const auto& arg : argv) {
    if (!command.empty()) command += ' ';
    command += shell_quote(arg);
  }
  command += " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return {127, "failed to start: " + command};
  CommandResult result;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  return result;
}

std::string escape_input_text(std::string_view text) {
  static constexpr std::string_view kSpecial = "()<>|;&*\\~\"'`$!#?[]{}%";
  std::string out;
  for (char c : text) {
    if (c == ' ') {
      out += "%s";
    } else if (kSpecial.find(c) != std::string_view::npos) {
      out += '\\';
      out += c;
    } else {
      out += c;
    }
  }
  return out;
}

BridgeDevice::BridgeDevice(BridgeOptions options, std::shared_ptr<CommandRunner> runner)
    : options_(std::move(options)), runner_(std::move(runner)) {
  if (!options_.sleep) options_.sleep = [](std::chrono::seconds d) { std::this_thread::sleep_for(d); };
}

std::vector<std::string> BridgeDevice::adb(std::vector<std::string> args) const {
  std::vector<std::string> argv{options_.adb};
  if (!options_.serial.empty()) {
    argv.push_back("-s");
    argv.push_back(options_.serial);
  }
  argv.insert(argv.end(), std::make_move_iterator(args.begin()), std::make_move_iterator(args.end()));
  return argv;
}

std::vector<std::string> BridgeDevice::command_for(const AtomicOperation& operation) const {
  auto keyevent = [&](const char* key) { return adb({"shell", "input", "keyevent", key}); };
  return std::visit(
      Overloaded{
          [&](const op::OpenApp& o) {
            auto it = options_.app_packages.find(o.app_name);
            if (it == options_.app_packages.end()) {
              throw DeviceError("no package configured for app '" + o.app_name + "'");
            }
            return adb({"shell", "monkey", "-p", it->second, "-c", "android.intent.category.LAUNCHER", "1"});
          },
          [&](const op::Tap& o) {
            return adb({"shell", "input", "tap", std::to_string(o.x), std::to_string(o.y)});
          },
          [&](const op::Swipe& o) {
            return adb({"shell", "input", "swipe", std::to_string(o.x1), std::to_string(o.y1),
                        std::to_string(o.x2), std::to_string(o.y2), "500"});
          },
          [&](const op::Type& o) { return adb({"shell", "input", "text", escape_input_text(o.text)}); },
          [&](const op::Enter&) { return keyevent("KEYCODE_ENTER"); },
          [&](const op::SwitchApp&) { return keyevent("KEYCODE_APP_SWITCH"); },
          [&](const op::Back&) { return keyevent("KEYCODE_BACK"); },
          [&](const op::Home&) { return keyevent("KEYCODE_HOME"); },
          [&](const op::Wait&) { return std::vector<std::string>{}; },
      },
      operation);
}

CommandResult BridgeDevice::run_checked(const std::vector<std::string>& argv) {
  CommandResult result = runner_->run(argv);
  if (result.exit_code != 0 || result.output.rfind("error:", 0) == 0) {
    std::string joined;
    for (const auto& a : argv) joined += (joined.empty() ? "" : " ") + a;
    throw DeviceError("bridge command failed (" + std::to_string(result.exit_code) + "): " + joined,
                      result.output);
  }
  return result;
}

void BridgeDevice::query_size() {
  if (size_) return;
  const CommandResult result = run_checked(adb({"shell", "wm", "size"}));
  // "Physical size: 1080x2400", optionally followed by "Override size: ..."
  static const std::regex kSize(R"((Override|Physical) size:\s*(\d+)x(\d+))");
  std::optional<std::pair<int, int>> physical, override_size;
  for (std::sregex_iterator it(result.output.begin(), result.output.end(), kSize), end; it != end; ++it) {
    const std::pair<int, int> dims{std::stoi((*it)[2]), std::stoi((*it)[3])};
    ((*it)[1] == "Override" ? override_size : physical) = dims;
  }
  size_ = override_size ? override_size : physical;
  if (!size_) throw DeviceError("cannot parse screen size", result.output);
}

int BridgeDevice::width() {
  query_size();
  return size_->first;
}

int BridgeDevice::height() {
  query_size();
  return size_->second;
}

ScreenState BridgeDevice::execute(const AtomicOperation& operation) {
  if (std::holds_alternative<op::Wait>(operation)) {
    options_.sleep(options_.wait_duration);
  } else {
    run_checked(command_for(operation));
  }
  ++steps_;
  return capture();
}

ScreenState BridgeDevice::capture() {
  run_checked(adb({"shell", "screencap", "-p", options_.remote_screenshot}));
  std::filesystem::create_directories(options_.screenshot_dir);
  const auto local = options_.screenshot_dir / ("bridge_screen_" + std::to_string(steps_) + ".png");
  run_checked(adb({"pull", options_.remote_screenshot, local.string()}));

  ScreenState screen;
  screen.step_index = steps_;
  screen.image = local;
  const ImageBytes bytes = read_image(screen.image);
  const auto dims = png_dimensions(bytes);
  if (!dims) throw DeviceError("pulled screenshot is not a PNG: " + local.string());
  screen.width = dims->first;
  screen.height = dims->second;
  size_ = dims;
  return screen;
}

}  // namespace phoneagent
