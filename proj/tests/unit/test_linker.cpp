#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gazetrack/linker.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

namespace gazetrack {
namespace {

using testing::make_spine;
using testing::spike_profile;

// Chain of vertices along +x whose consecutive distances are `d`.
std::vector<TrackVertex> chain_from_distances(const std::vector<double>& d) {
  std::vector<TrackVertex> v{{0, 1, Vec3::Zero(), 0}};
  double x = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    x += d[i];
    v.push_back({i + 1, 1, Vec3(x, 0, 0), int(i + 1)});
  }
  return v;
}

SpineCandidates candidates_at(std::vector<Vec3> positions, int timepoint = 0) {
  SpineCandidates c;
  c.timepoint = timepoint;
  for (std::size_t k = 0; k < positions.size(); ++k) c.sample_indices.push_back(10 * (k + 1));
  c.world_positions = std::move(positions);
  return c;
}

TEST(Seed, NearestMaximumWinsEvenIfSmaller) {
  Hedgehog h;
  h.spines.push_back(make_spine(0, {0, 1, 0, 2, 0}));
  const auto cands = collect_candidates(h, Affine3::Identity(), {});
  const auto v = seed(cands);
  EXPECT_EQ(v.spine_index, 0u);
  EXPECT_EQ(v.sample_index, 1u);
}

TEST(Seed, SkipsSpinesWithoutMaxima) {
  Hedgehog h;
  h.spines.push_back(make_spine(0, {0, 1, 2, 3, 4}));
  h.spines.push_back(make_spine(0, {0, 0, 5, 0, 0}));
  const auto v = seed(collect_candidates(h, Affine3::Identity(), {}));
  EXPECT_EQ(v.spine_index, 1u);
  EXPECT_EQ(v.sample_index, 2u);
}

TEST(Seed, TwoBlobProfileSeedsOnNearBlob) {
  std::vector<double> p(401);
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = 3000 * std::exp(-std::pow(k - 70.0, 2) / 128) + 2000 * std::exp(-std::pow(k - 284.0, 2) / 200);
  }
  Hedgehog h;
  h.spines.push_back(make_spine(0, p));
  EXPECT_EQ(seed(collect_candidates(h, Affine3::Identity(), {})).sample_index, 70u);
}

TEST(Seed, NoMaximaAnywhereIsUnseedable) {
  Hedgehog h;
  h.spines.push_back(make_spine(0, {1, 1, 1}));
  EXPECT_THROW(seed(collect_candidates(h, Affine3::Identity(), {})), UnseedableHedgehog);
  EXPECT_THROW(track(Hedgehog{}, Affine3::Identity()), UnseedableHedgehog);
}

TEST(Chain, ShortestWorldDistanceWins) {
  // Three candidate tracks at distance 3, 1 and 2 from the current point.
  const std::vector<SpineCandidates> cands{candidates_at({Vec3::Zero()}),
                                           candidates_at({Vec3(0, 3, 0), Vec3(0, 0, 1), Vec3(2, 0, 0)})};
  const auto out = chain(cands, seed(cands));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].world_position, Vec3(0, 0, 1));
  EXPECT_EQ(out[1].sample_index, 20u);
}

TEST(Chain, TiesGoToNearerObserver) {
  const std::vector<SpineCandidates> cands{candidates_at({Vec3::Zero()}),
                                           candidates_at({Vec3(0, 1, 0), Vec3(0, -1, 0)})};
  EXPECT_EQ(chain(cands, seed(cands))[1].sample_index, 10u);
}

TEST(Chain, StaticObjectGivesZeroLinks) {
  Hedgehog h;
  for (int i = 0; i < 30; ++i) h.spines.push_back(make_spine(i / 3, spike_profile(21, 8)));
  const auto cands = collect_candidates(h, Affine3::Identity(), {});
  const auto out = chain(cands, seed(cands));
  ASSERT_EQ(out.size(), 30u);
  for (double d : link_stats(out).distances) EXPECT_EQ(d, 0.0);
}

TEST(Chain, BridgesGapOfSpinesWithoutMaxima) {
  Hedgehog h;
  for (int i = 0; i < 10; ++i) h.spines.push_back(make_spine(i, spike_profile(21, 5)));
  for (int i = 10; i < 15; ++i) h.spines.push_back(make_spine(i, std::vector<double>(21, 3.0)));
  for (int i = 15; i < 25; ++i) h.spines.push_back(make_spine(i, spike_profile(21, 15)));
  const auto cands = collect_candidates(h, Affine3::Identity(), {});
  const auto out = chain(cands, seed(cands));
  ASSERT_EQ(out.size(), 20u);
  EXPECT_EQ(out[9].spine_index, 9u);
  EXPECT_EQ(out[10].spine_index, 15u);
  const auto st = link_stats(out);
  int long_links = 0;
  for (double d : st.distances) long_links += d > 0 ? 1 : 0;
  EXPECT_EQ(long_links, 1);
  EXPECT_NEAR(st.distances[9], 0.5, 1e-12);  // 10 samples of 1/20 local units
}

TEST(ChainProperty, LengthAndNearestSelection) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-5, 5);
  std::uniform_int_distribution<int> count(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SpineCandidates> cands;
    for (int s = 0; s < 60; ++s) {
      std::vector<Vec3> pos(std::size_t(count(rng)));
      for (auto& p : pos) p = {u(rng), u(rng), u(rng)};
      cands.push_back(candidates_at(pos, s));
    }
    std::size_t first = 0;
    while (first < cands.size() && cands[first].empty()) ++first;
    if (first == cands.size()) continue;
    const auto out = chain(cands, seed(cands));
    std::size_t with_maxima = 0;
    for (std::size_t s = first + 1; s < cands.size(); ++s) with_maxima += cands[s].empty() ? 0 : 1;
    ASSERT_EQ(out.size(), with_maxima + 1);
    for (std::size_t i = 1; i < out.size(); ++i) {
      const auto& c = cands[out[i].spine_index];
      const double chosen = (out[i].world_position - out[i - 1].world_position).norm();
      for (const auto& p : c.world_positions) EXPECT_LE(chosen, (p - out[i - 1].world_position).norm());
    }
  }
}

TEST(Prune, SingleFarLinkIsRemoved) {
  const std::vector<double> d{1, 1, 1, 1, 1, 1, 1, 1, 1, 20};
  const auto ref = oracle::mean_std(d);
  ASSERT_NEAR(ref.mean, 2.9, 1e-12);
  ASSERT_NEAR(ref.population_std, 5.7, 1e-12);

  const auto result = prune(chain_from_distances(d), 2.0);
  ASSERT_GE(result.history.size(), 1u);
  const auto& first = result.history.front();
  EXPECT_NEAR(first.mu, 2.9, 1e-12);
  EXPECT_NEAR(first.sigma, 5.7, 1e-12);
  EXPECT_NEAR(first.z.back(), 3.0, 1e-12);
  EXPECT_EQ(result.vertices.size(), 10u);
  EXPECT_EQ(result.vertices.back().spine_index, 9u);
  EXPECT_EQ(result.history.size(), 2u);
  EXPECT_EQ(result.history.back().sigma, 0.0);
}

TEST(Prune, EqualDistancesStopAfterOnePass) {
  const auto result = prune(chain_from_distances(std::vector<double>(30, 2.5)), 2.0);
  EXPECT_EQ(result.vertices.size(), 31u);
  EXPECT_EQ(result.history.size(), 1u);
  EXPECT_EQ(result.history.front().sigma, 0.0);
}

TEST(Prune, ShortChainsAreLeftAlone) {
  EXPECT_EQ(prune(chain_from_distances({100}), 2.0).vertices.size(), 2u);
  EXPECT_TRUE(prune(chain_from_distances({100}), 2.0).history.empty());
}

TEST(Prune, RelinksAcrossRemovedVertices) {
  // Jitter around a fixed point with one excursion to y = 30 at vertex 20.
  // The jump out and the jump back are both outliers; the survivors are
  // re-linked straight across.
  std::mt19937_64 rng(12);
  std::normal_distribution<double> jitter(0, 0.5);
  std::vector<TrackVertex> v;
  for (std::size_t i = 0; i < 40; ++i) {
    v.push_back({i, 1, Vec3(jitter(rng), jitter(rng) + (i == 20 ? 30.0 : 0.0), jitter(rng)), int(i)});
  }
  const auto result = prune(v, 2.0);
  std::size_t pos19 = result.vertices.size();
  for (std::size_t k = 0; k < result.vertices.size(); ++k) {
    EXPECT_NE(result.vertices[k].spine_index, 20u);
    if (result.vertices[k].spine_index == 19) pos19 = k;
  }
  ASSERT_LT(pos19 + 1, result.vertices.size());
  EXPECT_LT((result.vertices[pos19 + 1].world_position - result.vertices[pos19].world_position).norm(), 5.0);
  EXPECT_GE(result.vertices.size(), 34u);
  const auto last = result.history.back();
  const auto now = link_stats(result.vertices);
  EXPECT_EQ(last.distances, now.distances);
}

// A chain that follows a target moving once per 15 spines, jumps to a
// distractor for ten spines, and returns.
TEST(Prune, DistractionSegmentIsRemoved) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> jitter(0, 0.3);
  std::vector<TrackVertex> v;
  for (std::size_t i = 0; i < 200; ++i) {
    const bool distracted = i >= 80 && i < 90;
    Vec3 p(0.5 * double(i / 15) + jitter(rng), jitter(rng), jitter(rng));
    if (distracted) p += Vec3(0, 25, 0);
    v.push_back({i, 3, p, int(i / 15)});
  }
  const auto result = prune(v, 2.0);
  for (const auto& x : result.vertices) EXPECT_FALSE(x.spine_index >= 80 && x.spine_index < 90) << x.spine_index;
  for (double z : link_stats(result.vertices).z) EXPECT_LE(z, 2.0);
  EXPECT_GT(result.vertices.size(), 150u);
}

TEST(PruneProperty, FixedPointAndTermination) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(3, 120);
  std::exponential_distribution<double> expo(1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> d(std::size_t(len(rng)));
    for (auto& x : d) x = expo(rng);
    const auto v = chain_from_distances(d);
    const auto result = prune(v, 2.0);
    EXPECT_LE(result.history.size(), v.size());
    for (double z : link_stats(result.vertices).z) EXPECT_LE(z, 2.0);
    EXPECT_EQ(result.vertices.front().spine_index, 0u);
  }
}

TEST(ReduceToTimepoints, CentroidsAndGaps) {
  std::vector<TrackVertex> v{{0, 1, Vec3(0, 0, 0), 3}, {1, 1, Vec3(1, 0, 0), 3}, {2, 1, Vec3(5, 5, 5), 7}};
  const auto pts = reduce_to_timepoints(v);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].timepoint, 3);
  EXPECT_TRUE(pts[0].position.isApprox(Vec3(0.5, 0, 0)));
  EXPECT_EQ(pts[1].timepoint, 7);
  EXPECT_EQ(pts[1].position, Vec3(5, 5, 5));
}

TEST(ReduceToTimepoints, CoincidentVerticesKeepPosition) {
  std::vector<TrackVertex> v(16, {0, 1, Vec3(1.25, -3, 8), 0});
  const auto pts = reduce_to_timepoints(v);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_TRUE(pts[0].position.isApprox(Vec3(1.25, -3, 8)));
}

Hedgehog random_hedgehog(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> peak(2, 37);
  Hedgehog h{"random", {}};
  for (int i = 0; i < 200; ++i) {
    auto p = spike_profile(40, std::size_t(peak(rng)));
    p[std::size_t(peak(rng))] += 50;
    h.spines.push_back(make_spine(i / 8, p, {0, 0.2 * (i % 5), 0.5}, {1, 0.2 * (i % 5), 0.6}));
  }
  return h;
}

TEST(Track, DeterministicAndTranslationEquivariant) {
  const Hedgehog h = random_hedgehog(4);
  Affine3 xf = Affine3::Identity();
  xf.linear() = Vec3(40.0, 30.0, 20.0).asDiagonal();
  const Track a = track(h, xf);
  const Track b = track(h, xf);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].position, b.points[i].position);

  Affine3 shifted = xf;
  shifted.translation() = Vec3(100, -20, 7);
  const Track c = track(h, shifted);
  ASSERT_EQ(a.points.size(), c.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].timepoint, c.points[i].timepoint);
    EXPECT_TRUE((c.points[i].position - a.points[i].position).isApprox(Vec3(100, -20, 7), 1e-9));
  }
}

TEST(Track, TimepointsStrictlyIncreasing) {
  const Track t = track(random_hedgehog(8), Affine3::Identity());
  for (std::size_t i = 1; i < t.points.size(); ++i) EXPECT_LT(t.points[i - 1].timepoint, t.points[i].timepoint);
  EXPECT_EQ(t.chain_length, 200u);
}

TEST(TrackFiltered, MapsVertexIndicesToOriginalHedgehog) {
  Hedgehog h;
  for (int i = 0; i < 10; ++i) {
    Spine s = make_spine(i, spike_profile(21, 7));
    s.confidence = (i % 2) ? 1.0 : 0.1;
    h.spines.push_back(s);
  }
  const Track t = track_filtered(h, Affine3::Identity(), {0.5, 90.0});
  ASSERT_EQ(t.vertices.size(), 5u);
  for (const auto& v : t.vertices) EXPECT_EQ(v.spine_index % 2, 1u);
}

}  // namespace
}  // namespace gazetrack
