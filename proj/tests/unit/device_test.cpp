#include <gtest/gtest.h>

#include "phoneagent/core/errors.hpp"
#include "phoneagent/device/bridge_device.hpp"
#include "phoneagent/device/render.hpp"
#include "phoneagent/device/sim_device.hpp"
#include "testkit.hpp"

namespace phoneagent {
namespace {

using testkit::demo_graph;

Json minimal_graph() {
  return Json::parse(R"({
    "name": "mini", "screen": {"width": 400, "height": 800}, "home": "home",
    "apps": [{"name": "A", "entry": "a.main"}],
    "pages": [
      {"id": "home", "elements": [{"id": "icon.a", "kind": "icon", "label": "A", "box": [10, 10, 80, 80], "opens": "A"}]},
      {"id": "a.main", "app": "A", "elements": [
        {"id": "a.field", "kind": "text_field", "label": "Query", "box": [10, 10, 300, 60]},
        {"id": "a.next", "kind": "button", "label": "Next", "box": [10, 100, 100, 60]}]},
      {"id": "a.next_page", "app": "A", "elements": []}
    ],
    "transitions": [{"from": "a.main", "tap": "a.next", "to": "a.next_page"}]
  })");
}

TEST(AppGraph, LoadsAndAddsSwitcher) {
  const AppGraph g = app_graph_from_json(minimal_graph());
  EXPECT_NE(g.find_page(kSwitcherPage), nullptr);
  EXPECT_NE(g.find_tap("a.main", "a.next"), nullptr);
  EXPECT_EQ(g.page("a.main").hit_test({20, 20})->id, "a.field");
  EXPECT_EQ(g.page("a.main").hit_test({390, 790}), nullptr);
}

TEST(AppGraph, StructuralErrorsAreDecodeErrors) {
  auto broken = [](auto mutate) {
    Json j = minimal_graph();
    mutate(j);
    return j;
  };
  EXPECT_THROW(app_graph_from_json(broken([](Json& j) { j["home"] = "nowhere"; })), DecodeError);
  EXPECT_THROW(app_graph_from_json(broken([](Json& j) { j["transitions"][0]["to"] = "nowhere"; })), DecodeError);
  EXPECT_THROW(app_graph_from_json(broken([](Json& j) { j["pages"][1]["elements"][0]["box"] = {390, 0, 50, 50}; })),
               DecodeError);
  EXPECT_THROW(app_graph_from_json(broken([](Json& j) { j["pages"][1]["elements"][0]["kind"] = "slider"; })),
               DecodeError);
  EXPECT_THROW(app_graph_from_json(broken([](Json& j) { j["apps"][0]["entry"] = "missing"; })), DecodeError);
  EXPECT_THROW(app_graph_from_json(broken([](Json& j) { j["pages"].push_back(j["pages"][0]); })), DecodeError);
}

TEST(AppGraph, JsonRoundTrip) {
  const AppGraph g = *demo_graph();
  const AppGraph again = app_graph_from_json(app_graph_to_json(g));
  EXPECT_EQ(app_graph_to_json(again), app_graph_to_json(g));
}

TEST(Swipe, Classification) {
  EXPECT_EQ(classify_swipe(360, 1200, 360, 400), SwipeDirection::Up);
  EXPECT_EQ(classify_swipe(100, 100, 500, 120), SwipeDirection::Right);
  EXPECT_EQ(classify_swipe(0, 0, 10, 10), SwipeDirection::Down);  // ties are vertical
  EXPECT_FALSE(classify_swipe(5, 5, 5, 5).has_value());
}

class DemoPhone : public ::testing::Test {
 protected:
  SimDevice dev{demo_graph(), SimOptions{false}};
};

TEST_F(DemoPhone, SearchFlow) {
  EXPECT_EQ(dev.state().page, "home");
  dev.execute(op::OpenApp{"Shop"});
  EXPECT_EQ(dev.state().page, "shop.home");
  dev.execute(op::Tap{320, 160});
  EXPECT_EQ(dev.state().focused_field, "shop.search");
  dev.execute(op::Type{"steak"});
  EXPECT_EQ(dev.state().fields.at("shop.search"), "steak");
  const ScreenState s = dev.execute(op::Enter{});
  EXPECT_EQ(dev.state().page, "shop.results_steak");
  ASSERT_TRUE(s.sim_truth);
  EXPECT_EQ(s.sim_truth->page, "shop.results_steak");
  EXPECT_EQ(s.step_index, 4);
  dev.execute(op::Back{});
  EXPECT_EQ(dev.state().page, "shop.home");
}

TEST_F(DemoPhone, UnknownQueryFallsBackToUnconditionedEnter) {
  dev.execute(op::OpenApp{"Shop"});
  dev.execute(op::Tap{320, 160});
  dev.execute(op::Type{"kumquats"});
  dev.execute(op::Enter{});
  EXPECT_EQ(dev.state().page, "shop.results_none");
}

TEST_F(DemoPhone, TypingWithoutFocusDoesNothing) {
  dev.execute(op::OpenApp{"Shop"});
  const SimState before = dev.state();
  dev.execute(op::Type{"steak"});
  EXPECT_EQ(dev.state().fields, before.fields);
  EXPECT_EQ(dev.state().steps, before.steps + 1);
}

TEST_F(DemoPhone, ClearButtonEmptiesAndFocuses) {
  dev.execute(op::OpenApp{"Shop"});
  dev.execute(op::Tap{320, 160});
  dev.execute(op::Type{"steak"});
  dev.execute(op::Tap{660, 160});
  EXPECT_EQ(dev.state().fields.at("shop.search"), "");
  EXPECT_EQ(dev.state().focused_field, "shop.search");
}

TEST_F(DemoPhone, PopupAndDismiss) {
  dev.execute(op::OpenApp{"Shop"});
  dev.execute(op::Tap{190, 290});
  EXPECT_EQ(dev.state().page, "shop.deals_page");
  EXPECT_EQ(dev.state().overlay, "shop.promo");
  EXPECT_EQ(dev.truth().overlay, "shop.promo");
  dev.execute(op::Tap{360, 1045});
  EXPECT_EQ(dev.state().overlay, "");
  // A popup fires once.
  dev.execute(op::Back{});
  dev.execute(op::Tap{190, 290});
  EXPECT_EQ(dev.state().overlay, "");
}

TEST_F(DemoPhone, WaitResolvesLoadingPage) {
  dev.execute(op::OpenApp{"Notes"});
  dev.execute(op::Tap{580, 165});
  EXPECT_EQ(dev.state().page, "notes.edit");
  dev.execute(op::Tap{360, 540});
  dev.execute(op::Type{"Groceries"});
  dev.execute(op::Tap{590, 165});
  EXPECT_EQ(dev.state().page, "notes.saving");
  dev.execute(op::Wait{});
  EXPECT_EQ(dev.state().page, "notes.saved");
}

TEST_F(DemoPhone, SwitcherReturnsToLastPage) {
  dev.execute(op::OpenApp{"Shop"});
  dev.execute(op::Tap{320, 160});
  dev.execute(op::Type{"oranges"});
  dev.execute(op::Enter{});
  dev.execute(op::Home{});
  dev.execute(op::OpenApp{"Notes"});
  dev.execute(op::SwitchApp{});
  EXPECT_EQ(dev.state().page, std::string(kSwitcherPage));
  const SimTruth t = dev.truth();
  const auto card = std::find_if(t.elements.begin(), t.elements.end(),
                                 [](const SimElement& e) { return e.label == "Shop"; });
  ASSERT_NE(card, t.elements.end());
  dev.execute(op::Tap{card->box.center().x, card->box.center().y});
  EXPECT_EQ(dev.state().page, "shop.results_oranges");
}

TEST_F(DemoPhone, UndefinedOperationsLeaveScreenUnchanged) {
  dev.execute(op::OpenApp{"Nonexistent"});
  dev.execute(op::Tap{5, 5});
  dev.execute(op::Swipe{10, 10, 10, 10});
  dev.execute(op::Enter{});
  EXPECT_EQ(dev.state().page, "home");
  EXPECT_EQ(dev.state().steps, 4);
}

TEST(Render, DeterministicPngOfScreenSize) {
  SimDevice a(demo_graph()), b(demo_graph());
  a.execute(op::OpenApp{"Shop"});
  b.execute(op::OpenApp{"Shop"});
  const ImageBytes pa = read_image(a.capture().image), pb = read_image(b.capture().image);
  EXPECT_EQ(pa, pb);
  const auto dims = png_dimensions(pa);
  ASSERT_TRUE(dims);
  EXPECT_EQ(dims->first, 720);
  EXPECT_EQ(dims->second, 1600);
  const std::uint8_t junk[] = {1, 2, 3};
  EXPECT_FALSE(png_dimensions(junk).has_value());
}

// Bridge: a fake runner records argv and serves a PNG on pull.

class FakeRunner final : public CommandRunner {
 public:
  std::vector<std::vector<std::string>> calls;
  CommandResult next{0, ""};
  std::string size_output = "Physical size: 720x1600\n";

  CommandResult run(const std::vector<std::string>& argv) override {
    calls.push_back(argv);
    if (argv.size() >= 3 && argv[argv.size() - 3] == "pull") {
      SimDevice sim(demo_graph(), SimOptions{true});
      write_bytes(argv.back(), read_image(sim.capture().image));
    }
    if (argv.size() >= 2 && argv[argv.size() - 2] == "wm") return {0, size_output};
    return next;
  }

 private:
  static void write_bytes(const std::filesystem::path& p, const ImageBytes& bytes) {
    write_text_file(p, std::string(bytes.begin(), bytes.end()));
  }
};

class Bridge : public ::testing::Test {
 protected:
  testkit::TempDir tmp;
  std::shared_ptr<FakeRunner> runner = std::make_shared<FakeRunner>();
  std::vector<std::chrono::seconds> slept;

  BridgeDevice make(std::string serial = "") {
    BridgeOptions o;
    o.serial = std::move(serial);
    o.screenshot_dir = tmp.path();
    o.app_packages = {{"Shop", "com.example.shop"}};
    o.sleep = [this](std::chrono::seconds s) { slept.push_back(s); };
    return BridgeDevice(o, runner);
  }
};

using Argv = std::vector<std::string>;

TEST_F(Bridge, OneCommandPerOperation) {
  BridgeDevice dev = make("emulator-5554");
  EXPECT_EQ(dev.command_for(op::Tap{5, 6}), (Argv{"adb", "-s", "emulator-5554", "shell", "input", "tap", "5", "6"}));
  EXPECT_EQ(dev.command_for(op::Swipe{1, 2, 3, 4}),
            (Argv{"adb", "-s", "emulator-5554", "shell", "input", "swipe", "1", "2", "3", "4", "500"}));
  EXPECT_EQ(dev.command_for(op::Enter{}).back(), "KEYCODE_ENTER");
  EXPECT_EQ(dev.command_for(op::Back{}).back(), "KEYCODE_BACK");
  EXPECT_EQ(dev.command_for(op::Home{}).back(), "KEYCODE_HOME");
  EXPECT_EQ(dev.command_for(op::SwitchApp{}).back(), "KEYCODE_APP_SWITCH");
  EXPECT_EQ(dev.command_for(op::OpenApp{"Shop"}),
            (Argv{"adb", "-s", "emulator-5554", "shell", "monkey", "-p", "com.example.shop", "-c",
                  "android.intent.category.LAUNCHER", "1"}));
  EXPECT_THROW(dev.command_for(op::OpenApp{"Maps"}), DeviceError);
  EXPECT_TRUE(dev.command_for(op::Wait{}).empty());
  EXPECT_EQ(make().command_for(op::Type{"a b"}), (Argv{"adb", "shell", "input", "text", "a%sb"}));
}

TEST_F(Bridge, ExecuteRunsCommandThenCaptures) {
  BridgeDevice dev = make();
  const ScreenState s = dev.execute(op::Tap{1, 2});
  ASSERT_EQ(runner->calls.size(), 3u);
  EXPECT_EQ(runner->calls[0][3], "tap");
  EXPECT_EQ(runner->calls[1][2], "screencap");
  EXPECT_EQ(runner->calls[2][1], "pull");
  EXPECT_EQ(s.step_index, 1);
  EXPECT_EQ(s.width, 720);
  EXPECT_FALSE(s.sim_truth.has_value());

  dev.execute(op::Wait{});
  ASSERT_EQ(slept.size(), 1u);
  EXPECT_EQ(slept[0], std::chrono::seconds(10));
  EXPECT_EQ(runner->calls.size(), 5u);  // capture only
}

TEST_F(Bridge, FailuresCarryRawOutput) {
  BridgeDevice dev = make();
  runner->next = {0, "error: device offline"};
  try {
    dev.execute(op::Home{});
    FAIL();
  } catch (const DeviceError& e) {
    EXPECT_EQ(e.raw_output(), "error: device offline");
  }
  runner->next = {1, "boom"};
  EXPECT_THROW(dev.execute(op::Home{}), DeviceError);
}

TEST_F(Bridge, ScreenSizePrefersOverride) {
  BridgeDevice dev = make();
  runner->size_output = "Physical size: 1080x2400\nOverride size: 720x1600\n";
  EXPECT_EQ(dev.width(), 720);
  EXPECT_EQ(dev.height(), 1600);
  BridgeDevice other = make();
  runner->size_output = "no idea";
  EXPECT_THROW(other.width(), DeviceError);
}

TEST(BridgeEscape, SpacesAndMetacharacters) {
  EXPECT_EQ(escape_input_text("oled tv"), "oled%stv");
  EXPECT_EQ(escape_input_text("a&b"), "a\\&b");
  EXPECT_EQ(escape_input_text("it's $5"), "it\\'s%s\\$5");
  EXPECT_EQ(escape_input_text("plain"), "plain");
}

TEST(ShellRunner, CapturesOutputAndStatus) {
  ShellCommandRunner r;
  const CommandResult ok = r.run({"echo", "it's here"});
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.output, "it's here\n");
  EXPECT_NE(r.run({"false"}).exit_code, 0);
}

}  // namespace
}  // namespace phoneagent
