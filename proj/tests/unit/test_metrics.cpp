#include <gtest/gtest.h>

#include <json.hpp>

#include "gazetrack/metrics.hpp"

namespace gazetrack {
namespace {

std::vector<TrackPoint> line(int n, const Vec3& offset = Vec3::Zero(), int t0 = 0) {
  std::vector<TrackPoint> out;
  for (int t = 0; t < n; ++t) out.push_back({t0 + t, Vec3(t, 2 * t, 0) + offset});
  return out;
}

TEST(ScoreTrack, IdenticalTracksScoreZero) {
  const auto s = score_track(line(10), line(10), 5.0);
  EXPECT_EQ(s.mean_distance, 0.0);
  EXPECT_EQ(s.normalized_distance, 0.0);
  EXPECT_EQ(s.matched_timepoints, 10);
  EXPECT_EQ(s.coverage, 1.0);
}

TEST(ScoreTrack, OffsetOfOneDiameterScoresOne) {
  const auto s = score_track(line(10, Vec3(3, 4, 0)), line(10), 5.0);
  EXPECT_DOUBLE_EQ(s.mean_distance, 5.0);
  EXPECT_DOUBLE_EQ(s.normalized_distance, 1.0);
}

TEST(ScoreTrack, HandComputedMean) {
  const std::vector<TrackPoint> trk{{0, Vec3(5, 0, 0)}, {1, Vec3(0, 0, 0)}, {2, Vec3(0, 0, 2)}};
  const std::vector<TrackPoint> truth{{0, Vec3::Zero()}, {1, Vec3::Zero()}, {2, Vec3::Zero()}, {3, Vec3::Zero()}};
  const auto s = score_track(trk, truth, 2.0);
  EXPECT_DOUBLE_EQ(s.mean_distance, 7.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.normalized_distance, 7.0 / 6.0);
  EXPECT_EQ(s.matched_timepoints, 3);
  EXPECT_DOUBLE_EQ(s.coverage, 0.75);
}

TEST(ScoreTrack, OnlySharedTimepointsCount) {
  const std::vector<TrackPoint> trk{{1, Vec3(1, 0, 0)}, {9, Vec3(100, 0, 0)}};
  const auto s = score_track(trk, line(3), 1.0);
  EXPECT_EQ(s.matched_timepoints, 1);
  EXPECT_DOUBLE_EQ(s.mean_distance, 2.0);  // (1,0,0) vs (1,2,0)
}

TEST(ScoreTrack, Errors) {
  EXPECT_THROW(score_track(line(3), line(3), 0.0), ValidationError);
  EXPECT_THROW(score_track(line(3), line(3), -1.0), ValidationError);
  EXPECT_THROW(score_track(line(3, Vec3::Zero(), 10), line(3), 1.0), ValidationError);
  EXPECT_THROW(score_track({}, line(3), 1.0), ValidationError);
}

TEST(BestMatch, PicksNearestTruth) {
  const std::vector<TrackRecord> truths{{0, line(5, Vec3(10, 0, 0))}, {1, line(5, Vec3(1, 0, 0))},
                                        {2, line(5, Vec3(0, 3, 0))}};
  const auto m = best_match(line(5), truths, 2.0);
  EXPECT_EQ(m.blob_id, 1);
  EXPECT_DOUBLE_EQ(m.score.normalized_distance, 0.5);
}

TEST(BestMatch, TiesGoToLowerId) {
  const std::vector<TrackRecord> truths{{4, line(5, Vec3(0, 1, 0))}, {2, line(5, Vec3(1, 0, 0))}};
  EXPECT_EQ(best_match(line(5), truths, 2.0).blob_id, 2);
}

TEST(BestMatch, SkipsTruthsWithoutOverlap) {
  const std::vector<TrackRecord> truths{{0, line(5, Vec3::Zero(), 100)}, {1, line(5, Vec3(9, 0, 0))}};
  EXPECT_EQ(best_match(line(5), truths, 2.0).blob_id, 1);
  const std::vector<TrackRecord> none{{0, line(5, Vec3::Zero(), 100)}};
  EXPECT_THROW(best_match(line(5), none, 2.0), ValidationError);
}

TEST(EvaluateTracks, ReportAndJson) {
  const std::vector<TrackRecord> truths{{0, line(4)}, {1, line(4, Vec3(50, 0, 0))}};
  const std::vector<TrackRecord> tracks{{0, line(4, Vec3(0.5, 0, 0))}, {1, line(4, Vec3(25, 0, 0))}};
  const auto report = evaluate_tracks(tracks, truths, 2.0);
  ASSERT_EQ(report.tracks.size(), 2u);
  EXPECT_EQ(report.tracks[0].match.blob_id, 0);
  EXPECT_EQ(report.tracks[1].match.blob_id, 0);  // 25 vs 25: tie to the lower id
  EXPECT_DOUBLE_EQ(report.fraction_under_one_diameter(), 0.5);

  const auto j = nlohmann::json::parse(report.to_json());
  EXPECT_EQ(j["cell_diameter"], 2.0);
  EXPECT_EQ(j["track_count"], 2);
  EXPECT_EQ(j["under_one_diameter"], 1);
  EXPECT_EQ(j["tracks"][0]["matched_blob"], 0);
  EXPECT_DOUBLE_EQ(j["tracks"][0]["normalized_distance"].get<double>(), 0.25);
  EXPECT_EQ(report.to_json(), evaluate_tracks(tracks, truths, 2.0).to_json());
}

}  // namespace
}  // namespace gazetrack
