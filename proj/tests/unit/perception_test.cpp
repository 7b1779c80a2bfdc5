#include <gtest/gtest.h>

#include <atomic>

#include "phoneagent/core/base64.hpp"
#include "phoneagent/core/errors.hpp"
#include "phoneagent/perception/remote_perceptor.hpp"
#include "phoneagent/perception/sim_perceptor.hpp"
#include "stub_server.hpp"
#include "testkit.hpp"

namespace phoneagent {
namespace {

SimTruth truth_with(std::vector<SimElement> elements) { return SimTruth{"p", "", std::move(elements)}; }

TEST(PerceiveTruth, KindMappingAndOrder) {
  const SimTruth t = truth_with({
      {"b", ElementKind::Button, "Go", Box{300, 500, 100, 50}, "", false},
      {"f", ElementKind::TextField, "Search", Box{10, 100, 200, 40}, "milk", true},
      {"s", ElementKind::StaticText, "", Box{10, 500, 100, 20}, "Hello", false},
      {"i", ElementKind::Icon, "Cart", Box{600, 20, 40, 40}, "", false},
  });
  const PerceptionResult r = perceive_truth(t, 720, 1600);
  ASSERT_EQ(r.elements.size(), 4u);
  EXPECT_EQ(r.elements[0].content, "Cart");
  EXPECT_EQ(r.elements[0].kind, PerceivedElement::Kind::Icon);
  EXPECT_EQ(r.elements[1].kind, PerceivedElement::Kind::Text);
  EXPECT_EQ(r.elements[1].truth_kind, ElementKind::TextField);
  EXPECT_EQ(r.elements[2].content, "Hello");  // same row, further left
  EXPECT_EQ(r.elements[3].content, "Go");
  EXPECT_EQ(r.elements[3].center, (Point{350, 525}));
}

TEST(Normalize, SortsAndClamps) {
  PerceptionResult r;
  r.elements.push_back({PerceivedElement::Kind::Text, "b", {900, 10}, Box{700, 5, 300, 10}, std::nullopt});
  r.elements.push_back({PerceivedElement::Kind::Text, "a", {5, 5}, Box{0, 0, 10, 10}, std::nullopt});
  normalize(r, 720, 1600);
  EXPECT_EQ(r.elements[0].content, "a");
  EXPECT_LE(r.elements[1].center.x, 720);
  EXPECT_LE(r.elements[1].box.x + r.elements[1].box.width, 720);
}

TEST(FormatPerception, OneLinePerElement) {
  PerceptionResult r;
  r.elements.push_back({PerceivedElement::Kind::Text, "Search", {360, 120}, Box{}, std::nullopt});
  r.elements.push_back({PerceivedElement::Kind::Icon, "Cart", {10, 20}, Box{}, std::nullopt});
  const std::string s = format_perception(r);
  EXPECT_NE(s.find("- text \"Search\" at (360, 120)"), std::string::npos);
  EXPECT_NE(s.find("- icon \"Cart\" at (10, 20)"), std::string::npos);
  EXPECT_EQ(perception_from_json(perception_to_json(r), "p"), r);
}

TEST(SimPerceptor, NoiseIsSeededAndBounded) {
  SimDevice dev(testkit::demo_graph(), SimOptions{false});
  const ScreenState s = dev.execute(op::OpenApp{"Shop"});
  const PerceptionResult exact = SimPerceptor().perceive(s);
  EXPECT_EQ(exact, perceive_truth(*s.sim_truth, 720, 1600));

  const NoiseModel noise{0.5, 0.5, 42, {"???"}};
  const PerceptionResult n1 = SimPerceptor(noise).perceive(s), n2 = SimPerceptor(noise).perceive(s);
  EXPECT_EQ(n1, n2);
  EXPECT_LE(n1.elements.size(), exact.elements.size());
  const PerceptionResult all_dropped = SimPerceptor(NoiseModel{1.0, 0.0, 1, {"x"}}).perceive(s);
  EXPECT_TRUE(all_dropped.elements.empty());
  const PerceptionResult all_sub = SimPerceptor(NoiseModel{0.0, 1.0, 1, {"x"}}).perceive(s);
  ASSERT_EQ(all_sub.elements.size(), exact.elements.size());
  for (const auto& e : all_sub.elements) EXPECT_EQ(e.content, "x");
}

TEST(SimPerceptor, RejectsScreensWithoutTruth) {
  ScreenState s;
  s.width = 10;
  s.height = 10;
  EXPECT_THROW(SimPerceptor().perceive(s), PerceptionError);
}

class RemoteStub : public ::testing::Test {
 protected:
  testkit::StubServer stub;
  testkit::TempDir tmp;
  std::atomic<int> seen_images{0};

  ScreenState screen() {
    SimDevice dev(testkit::demo_graph());
    return dev.capture();
  }

  void serve_stage(const std::string& path, Json reply) {
    stub.server.Post(path, [this, reply](const httplib::Request& req, httplib::Response& res) {
      const Json body = Json::parse(req.body);
      if (!base64_decode(body.at("image").get<std::string>()).empty()) ++seen_images;
      res.set_content(reply.dump(), "application/json");
    });
  }
};

TEST_F(RemoteStub, MergesTextAndIcons) {
  serve_stage("/ocr/detection", {{"boxes", {{100, 300, 50, 20}}}});
  serve_stage("/ocr/recognition", {{"texts", {"Deals"}}});
  serve_stage("/icon/grounding", {{"boxes", {{10, 10, 40, 40}, {600, 900, 40, 40}}}});
  serve_stage("/icon/caption", {{"captions", {"menu", "cart"}}});
  stub.start();
  const PerceptionResult r = RemotePerceptor({stub.url()}).perceive(screen());
  ASSERT_EQ(r.elements.size(), 3u);
  EXPECT_EQ(r.elements[0].content, "menu");
  EXPECT_EQ(r.elements[1].content, "Deals");
  EXPECT_EQ(r.elements[1].kind, PerceivedElement::Kind::Text);
  EXPECT_EQ(r.elements[2].center, (Point{620, 920}));
  EXPECT_FALSE(r.elements[0].truth_kind.has_value());
  EXPECT_EQ(seen_images.load(), 4);
}

TEST_F(RemoteStub, MismatchedCountIsPerceptionError) {
  serve_stage("/ocr/detection", {{"boxes", {{100, 300, 50, 20}}}});
  serve_stage("/ocr/recognition", {{"texts", Json::array()}});
  stub.start();
  EXPECT_THROW(RemotePerceptor({stub.url()}).perceive(screen()), PerceptionError);
}

TEST_F(RemoteStub, HttpErrorIsPerceptionError) {
  stub.server.Post("/ocr/detection", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  stub.start();
  EXPECT_THROW(RemotePerceptor({stub.url()}).perceive(screen()), PerceptionError);
}

TEST(RemotePerceptor, UnreachableServiceIsPerceptionError) {
  SimDevice dev(testkit::demo_graph());
  RemotePerceptionOptions o{"http://127.0.0.1:1", std::chrono::seconds(2)};
  EXPECT_THROW(RemotePerceptor(o).perceive(dev.capture()), PerceptionError);
}

}  // namespace
}  // namespace phoneagent
