#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gazetrack/gaze.hpp"
#include "gazetrack/track_io.hpp"
#include "gazetrack/volume.hpp"

namespace gazetrack {

struct MotionSpec {
  double max_step = 0.75;  // world units per timepoint
  double smoothing = 0.8;  // velocity memory in [0,1)
};

/// Synthetic scene of Gaussian nuclei drifting through a volume.
struct SceneSpec {
  GridDims dims{64, 64, 64};
  Vec3 voxel_size = Vec3::Ones();
  int n_blobs = 8;
  double blob_radius = 2.5;  // isotropic Gaussian sigma, world units
  double blob_peak_intensity = 4000.0;
  double background_noise_sigma = 50.0;
  int n_timepoints = 50;
  MotionSpec motion;
  std::uint64_t rng_seed = 42;

  // Blob centres stay this far from every face.
  double margin() const { return 2.0 * blob_radius; }
  // Blob centres never come closer than this to each other.
  double min_separation() const { return 4.0 * blob_radius; }

  // Throws ValidationError for out-of-range fields or a volume too small to
  // keep blobs inside.
  void validate() const;
};

/// Smooth-pursuit gaze behaviour. Angular parameters are in degrees.
struct GazeSpec {
  double sample_rate_hz = 60.0;
  double playback_volumes_per_sec = 4.0;
  // Standard deviation of the angular pursuit error along each of the two
  // axes perpendicular to the line of sight.
  double pursuit_noise_deg = 0.5;
  double onset_lag_ms = 220.0;

  double distraction_probability = 0.0;  // per timepoint
  int distraction_duration_spines = 10;
  double distraction_min_distance = 0.0;  // distractor must be at least this far from the target
  std::vector<int> distraction_timepoints;  // forced distraction onsets

  double blink_probability = 0.0;  // per timepoint
  int blink_duration_spines = 15;
  std::vector<int> blink_timepoints;  // forced blinks

  // Per-spine probability of a tracker dropout: low confidence and a large
  // direction error of dropout_error_deg.
  double confidence_dropout_probability = 0.0;
  double dropout_error_deg = 20.0;

  std::optional<Vec3> observer_position;  // default: default_observer()
  double spacing_voxels = 1.0;
  std::uint64_t rng_seed = 7;

  int spines_per_timepoint() const;
  void validate() const;
};

struct GroundTruth {
  std::vector<std::vector<Vec3>> positions;  // [blob][timepoint], world units
  int target = 0;

  int blob_count() const { return int(positions.size()); }
  int timepoint_count() const { return positions.empty() ? 0 : int(positions.front().size()); }
  std::vector<TrackPoint> blob_track(int blob) const;
  std::vector<TrackRecord> as_records() const;
};

struct RenderedScene {
  Dataset dataset;
  GroundTruth truth;
};

RenderedScene render_scene(const SceneSpec& spec);

// Observer in front of the volume on the +z side, 1.5 volume extents from
// its centre, looking down -z.
Vec3 default_observer(const VolumeGeometry& geometry);

// Head orientation that points kHeadForward from `observer` at the volume
// centre.
Quat head_orientation_towards(const Vec3& observer, const Vec3& point);

// True when no other blob centre lies within `clearance` of the line of
// sight from `observer` to blob `blob` at timepoint `t`, in front of it.
bool is_unoccluded(const GroundTruth& truth, int blob, int t, const Vec3& observer, double clearance);

/// Hedgehog of simulated gaze following `target` (default truth.target).
Hedgehog simulate_gaze(const Dataset& dataset, const GroundTruth& truth, const GazeSpec& spec,
                       std::optional<int> target = std::nullopt);

}  // namespace gazetrack
