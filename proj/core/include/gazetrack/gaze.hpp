#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gazetrack/types.hpp"

namespace gazetrack {

// Head-local forward axis; head_orientation rotates it into world space.
inline const Vec3 kHeadForward{0.0, 0.0, -1.0};

inline constexpr std::size_t kMaxSpinesPerTimepoint = 120;

/// One gaze ray through one volume timepoint plus the metadata recorded with
/// it. Positions are normalized volume-local; head pose and gaze direction
/// are world space.
struct Spine {
  int timepoint = 0;
  Vec3 entry = Vec3::Zero();
  Vec3 exit = Vec3::Zero();
  double confidence = 1.0;
  Vec3 head_position = Vec3::Zero();
  Quat head_orientation = Quat::Identity();
  Vec3 gaze_direction = kHeadForward;
  std::vector<double> samples;
  std::vector<Vec3> sample_positions;

  // Throws ValidationError on broken invariants (empty or mismatched samples,
  // confidence outside [0,1], non-unit quaternion, negative timepoint).
  void validate() const;
};

/// All spines of one tracking attempt, in acquisition order.
struct Hedgehog {
  std::string dataset_ref;
  std::vector<Spine> spines;

  bool empty() const { return spines.empty(); }
  std::size_t size() const { return spines.size(); }

  // Validates every spine plus non-decreasing timepoints and the
  // per-timepoint count limit.
  void validate() const;
};

// Angle in degrees between the gaze direction and the head's forward vector.
double gaze_head_angle_deg(const Spine& spine);

// Keep when the eye-to-head angle is at most max_angle_deg.
bool plausibility_filter(const Spine& spine, double max_angle_deg = 90.0);

// Keep when confidence >= min_confidence.
bool confidence_filter(const Spine& spine, double min_confidence = 0.5);

struct SpineFilterParams {
  double min_confidence = 0.5;
  double max_angle_deg = 90.0;
};

// Subsequence of `h` that passes both filters, in the original order.
Hedgehog filter_hedgehog(const Hedgehog& h, const SpineFilterParams& params);

struct PlaneMark {
  std::size_t spine_index = 0;
  std::size_t sample_index = 0;
  bool operator==(const PlaneMark&) const = default;
};

/// Hedgehog laid out flat: column = spine, row = sample depth (row 0 is the
/// sample nearest the observer). Values are normalized to [0,255] over the
/// whole hedgehog; short spines are padded with 0.
struct PlaneRaster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, pixels[row * width + column]
  std::vector<PlaneMark> overlay;

  std::uint8_t at(std::size_t spine, std::size_t sample) const { return pixels[sample * width + spine]; }
};

PlaneRaster hedgehog_to_plane(const Hedgehog& h, std::span<const PlaneMark> overlay = {});

}  // namespace gazetrack
