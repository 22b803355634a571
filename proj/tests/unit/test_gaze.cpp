#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gazetrack/gaze.hpp"
#include "gazetrack/gaze_io.hpp"
#include "support/builders.hpp"

namespace gazetrack {
namespace {

Spine spine_with_gaze_angle(double degrees) {
  Spine s = testing::make_spine(0, {1, 2, 1});
  const double r = degrees * std::numbers::pi / 180.0;
  // Rotate forward (0,0,-1) about +x by r.
  s.gaze_direction = Eigen::AngleAxisd(r, Vec3::UnitX()) * kHeadForward;
  return s;
}

TEST(PlausibilityFilter, ParallelGazeKept) { EXPECT_TRUE(plausibility_filter(spine_with_gaze_angle(0.0))); }

TEST(PlausibilityFilter, OppositeGazeDropped) { EXPECT_FALSE(plausibility_filter(spine_with_gaze_angle(180.0))); }

TEST(PlausibilityFilter, BoundaryInclusiveBelow) {
  EXPECT_TRUE(plausibility_filter(spine_with_gaze_angle(89.9), 90.0));
  EXPECT_FALSE(plausibility_filter(spine_with_gaze_angle(90.1), 90.0));
}

TEST(PlausibilityFilter, UsesHeadOrientation) {
  Spine s = spine_with_gaze_angle(0.0);
  s.gaze_direction = Vec3::UnitX();
  EXPECT_NEAR(gaze_head_angle_deg(s), 90.0, 1e-9);
  s.head_orientation = Quat::FromTwoVectors(kHeadForward, Vec3::UnitX());
  EXPECT_NEAR(gaze_head_angle_deg(s), 0.0, 1e-6);
  EXPECT_TRUE(plausibility_filter(s, 1.0));
}

TEST(ConfidenceFilter, ThresholdInclusive) {
  Spine s = testing::make_spine(0, {0, 1, 0});
  s.confidence = 1.0;
  EXPECT_TRUE(confidence_filter(s, 0.5));
  s.confidence = 0.0;
  EXPECT_FALSE(confidence_filter(s, 0.5));
  s.confidence = 0.5;
  EXPECT_TRUE(confidence_filter(s, 0.5));
}

TEST(FilterHedgehog, KeepsOrderAndIsIdempotent) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1), ang(0, 180);
  Hedgehog h;
  for (int i = 0; i < 300; ++i) {
    Spine s = spine_with_gaze_angle(ang(rng));
    s.timepoint = i / 10;
    s.confidence = u(rng);
    s.samples[1] = i;  // tag
    h.spines.push_back(s);
  }
  const SpineFilterParams params{0.4, 60.0};
  const Hedgehog once = filter_hedgehog(h, params);
  const Hedgehog twice = filter_hedgehog(once, params);
  ASSERT_EQ(once.size(), twice.size());
  double prev_tag = -1;
  for (const auto& s : once.spines) {
    EXPECT_GT(s.samples[1], prev_tag);
    prev_tag = s.samples[1];
    EXPECT_GE(s.confidence, 0.4);
    EXPECT_LE(gaze_head_angle_deg(s), 60.0);
  }
  for (std::size_t i = 0; i < once.size(); ++i) EXPECT_EQ(once.spines[i].samples, twice.spines[i].samples);
  EXPECT_LT(once.size(), h.size());
}

TEST(HedgehogValidate, RejectsDecreasingTimepointsAndOverfullTimepoints) {
  Hedgehog h;
  h.spines = {testing::make_spine(2, {1, 2, 1}), testing::make_spine(1, {1, 2, 1})};
  EXPECT_THROW(h.validate(), ValidationError);
  h.spines.assign(121, testing::make_spine(0, {1, 2, 1}));
  EXPECT_THROW(h.validate(), ValidationError);
  h.spines.resize(120);
  EXPECT_NO_THROW(h.validate());
}

TEST(SpineValidate, Invariants) {
  Spine s = testing::make_spine(0, {1, 2, 1});
  s.sample_positions.pop_back();
  EXPECT_THROW(s.validate(), ValidationError);
  s = testing::make_spine(0, {1, 2, 1});
  s.confidence = 1.5;
  EXPECT_THROW(s.validate(), ValidationError);
  s = testing::make_spine(0, {1, 2, 1});
  s.head_orientation = Quat(2, 0, 0, 0);
  EXPECT_THROW(s.validate(), ValidationError);
  s = testing::make_spine(0, {});
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(HedgehogToPlane, DimensionsArePaddedSpineCountByMaxSamples) {
  Hedgehog h;
  for (int i = 0; i < 1614; ++i) h.spines.push_back(testing::make_spine(i / 16, std::vector<double>(i == 800 ? 400 : 100 + i % 50, 1.0 * i)));
  const auto r = hedgehog_to_plane(h);
  EXPECT_EQ(r.width, 1614u);
  EXPECT_EQ(r.height, 400u);
  EXPECT_EQ(r.pixels.size(), 1614u * 400u);
  EXPECT_EQ(r.at(0, 399), 0);  // padding
  EXPECT_EQ(r.at(1613, 0), 255);
}

TEST(HedgehogToPlane, SingleSpineIsItsNormalizedProfile) {
  Hedgehog h;
  h.spines.push_back(testing::make_spine(0, {10, 20, 30, 20, 110}));
  const auto r = hedgehog_to_plane(h);
  ASSERT_EQ(r.width, 1u);
  ASSERT_EQ(r.height, 5u);
  const std::vector<std::uint8_t> expected{0, 26, 51, 26, 255};  // round((v-10)/100*255)
  EXPECT_EQ(r.pixels, expected);
}

TEST(HedgehogToPlane, ConstantHedgehogIsMidGray) {
  Hedgehog h;
  h.spines.assign(3, testing::make_spine(0, {7, 7, 7, 7}));
  const auto r = hedgehog_to_plane(h);
  for (auto px : r.pixels) EXPECT_EQ(px, 128);
}

TEST(HedgehogToPlane, EmptyAndBadOverlayThrow) {
  EXPECT_THROW(hedgehog_to_plane(Hedgehog{}), ValidationError);
  Hedgehog h;
  h.spines.push_back(testing::make_spine(0, {1, 2, 1}));
  const std::vector<PlaneMark> bad{{0, 3}};
  EXPECT_THROW(hedgehog_to_plane(h, bad), ValidationError);
}

TEST(GazeIo, JsonlRoundTripIsExact) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 1);
  Hedgehog h{"ref", {}};
  for (int i = 0; i < 20; ++i) {
    std::vector<double> prof(5 + i);
    for (auto& x : prof) x = u(rng) * 65535;
    Spine s = testing::make_spine(i / 3, prof, {u(rng), 0, u(rng)}, {u(rng), 1, u(rng)});
    s.confidence = u(rng);
    s.head_position = {u(rng), u(rng), u(rng)};
    s.head_orientation = Quat(Eigen::AngleAxisd(u(rng) * 3, Vec3(u(rng), u(rng), 1).normalized()));
    s.gaze_direction = Vec3(u(rng), u(rng), -1).normalized();
    h.spines.push_back(s);
  }
  const std::string text = encode_spines_jsonl(h);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 20);
  const Hedgehog back = decode_spines_jsonl(text);
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h.spines[i];
    const auto& b = back.spines[i];
    EXPECT_EQ(a.timepoint, b.timepoint);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.sample_positions, b.sample_positions);
    EXPECT_EQ(a.head_orientation.coeffs(), b.head_orientation.coeffs());
    EXPECT_EQ(a.gaze_direction, b.gaze_direction);
    EXPECT_EQ(a.confidence, b.confidence);
  }
  EXPECT_EQ(encode_spines_jsonl(back), text);
}

TEST(GazeIo, LineFieldsMatchSchema) {
  const std::string line = spine_to_json_line(testing::make_spine(3, {1, 2, 1}));
  for (const char* key : {"\"timepoint\"", "\"entry\"", "\"exit\"", "\"confidence\"", "\"head_position\"",
                          "\"head_orientation\"", "\"gaze_direction\"", "\"samples\"", "\"sample_positions\""}) {
    EXPECT_NE(line.find(key), std::string::npos) << key;
  }
}

TEST(GazeIo, MalformedLineReportsLineNumber) {
  const std::string good = spine_to_json_line(testing::make_spine(0, {1, 2, 1}));
  try {
    decode_spines_jsonl(good + "\n{\"timepoint\": 1}\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(GazeIo, PgmPutsObserverAtBottom) {
  Hedgehog h;
  h.spines.push_back(testing::make_spine(0, {0, 100}));
  h.spines.push_back(testing::make_spine(0, {100, 0}));
  const auto r = hedgehog_to_plane(h, std::vector<PlaneMark>{{1, 0}});
  const std::string pgm = encode_pgm(r);
  const std::string header = "P5\n2 2\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  // Top row is the deepest sample (index 1), bottom row sample 0.
  EXPECT_EQ(pgm.substr(header.size()), std::string("\xFF\x00\x00\xFF", 4));
  EXPECT_EQ(encode_overlay_csv(r), "spine_index,sample_index\n1,0\n");
}

}  // namespace
}  // namespace gazetrack
