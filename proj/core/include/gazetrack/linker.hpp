#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gazetrack/gaze.hpp"
#include "gazetrack/maxima.hpp"
#include "gazetrack/types.hpp"

namespace gazetrack {

// No spine of the hedgehog has a local maximum to start from.
class UnseedableHedgehog : public std::runtime_error {
 public:
  UnseedableHedgehog() : std::runtime_error("unseedable hedgehog: no spine has a local maximum") {}
};

struct TrackVertex {
  std::size_t spine_index = 0;
  std::size_t sample_index = 0;
  Vec3 world_position = Vec3::Zero();
  int timepoint = 0;
};

struct TrackPoint {
  int timepoint = 0;
  Vec3 position = Vec3::Zero();
};

// Distances between consecutive chain vertices and their z-scores.
// sigma is the population standard deviation.
struct LinkStats {
  std::vector<double> distances;
  double mu = 0.0;
  double sigma = 0.0;
  std::vector<double> z;
};

struct TrackParams {
  MaximaParams maxima;
  double z_threshold = 2.0;
};

struct Track {
  std::vector<TrackVertex> vertices;      // surviving chain after pruning
  std::vector<TrackPoint> points;         // one per covered timepoint, increasing
  std::vector<LinkStats> prune_history;   // one entry per pruning pass
  std::size_t chain_length = 0;           // vertices before pruning
  std::string hedgehog_id;
  TrackParams params;
};

/// Local maxima of one spine with their world positions.
struct SpineCandidates {
  int timepoint = 0;
  std::vector<std::size_t> sample_indices;  // increasing = further from the observer
  std::vector<Vec3> world_positions;

  bool empty() const { return sample_indices.empty(); }
};

std::vector<SpineCandidates> collect_candidates(const Hedgehog& h, const Affine3& local_to_world,
                                                const MaximaParams& params);

// Nearest-to-observer maximum on the first spine that has any.
TrackVertex seed(std::span<const SpineCandidates> candidates);

// Greedy nearest-neighbour chain starting at `start`: every later spine with
// at least one maximum contributes the maximum closest (world space) to the
// previously selected point. Spines without maxima are skipped.
std::vector<TrackVertex> chain(std::span<const SpineCandidates> candidates, const TrackVertex& start);

LinkStats link_stats(std::span<const TrackVertex> vertices);

struct PruneResult {
  std::vector<TrackVertex> vertices;
  std::vector<LinkStats> history;
};

/// Iterative z-score pruning. Each pass computes link distances over the
/// current chain, removes every vertex whose incoming link has z above
/// `z_threshold`, and re-links its neighbours. Stops when no link exceeds
/// the threshold, sigma is zero, or at most two vertices remain.
PruneResult prune(std::vector<TrackVertex> vertices, double z_threshold = 2.0);

// Centroid of each timepoint's surviving vertices; uncovered timepoints are
// omitted.
std::vector<TrackPoint> reduce_to_timepoints(std::span<const TrackVertex> vertices);

/// seed -> chain -> prune -> reduce_to_timepoints. Throws UnseedableHedgehog
/// when no spine has a maximum.
Track track(const Hedgehog& h, const Affine3& local_to_world, const TrackParams& params = {});

// Drops spines failing the confidence/plausibility filters, tracks the rest,
// and rewrites vertex spine indices to refer to `h`.
Track track_filtered(const Hedgehog& h, const Affine3& local_to_world, const SpineFilterParams& filter,
                     const TrackParams& params = {});

}  // namespace gazetrack
