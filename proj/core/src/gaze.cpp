#include "gazetrack/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gazetrack {

void Spine::validate() const {
  if (timepoint < 0) throw ValidationError("spine timepoint must be >= 0");
  if (samples.empty()) throw ValidationError("spine has no samples");
  if (samples.size() != sample_positions.size()) {
    throw ValidationError("spine samples and sample_positions differ in length");
  }
  if (!(confidence >= 0.0 && confidence <= 1.0)) throw ValidationError("spine confidence outside [0,1]");
  if (std::abs(head_orientation.norm() - 1.0) > 1e-9) {
    throw ValidationError("spine head_orientation is not a unit quaternion");
  }
}

void Hedgehog::validate() const {
  int previous = std::numeric_limits<int>::min();
  std::size_t run = 0;
  for (const auto& s : spines) {
    s.validate();
    if (s.timepoint < previous) throw ValidationError("hedgehog spine timepoints decrease");
    run = (s.timepoint == previous) ? run + 1 : 1;
    if (run > kMaxSpinesPerTimepoint) {
      throw ValidationError("more than 120 spines recorded for timepoint " + std::to_string(s.timepoint));
    }
    previous = s.timepoint;
  }
}

double gaze_head_angle_deg(const Spine& spine) {
  const Vec3 forward = spine.head_orientation.normalized() * kHeadForward;
  const Vec3 gaze = spine.gaze_direction.normalized();
  const double c = std::clamp(forward.dot(gaze), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

bool plausibility_filter(const Spine& spine, double max_angle_deg) {
  return gaze_head_angle_deg(spine) <= max_angle_deg;
}

bool confidence_filter(const Spine& spine, double min_confidence) { return spine.confidence >= min_confidence; }

Hedgehog filter_hedgehog(const Hedgehog& h, const SpineFilterParams& params) {
  Hedgehog out{h.dataset_ref, {}};
  std::copy_if(h.spines.begin(), h.spines.end(), std::back_inserter(out.spines), [&](const Spine& s) {
    return confidence_filter(s, params.min_confidence) && plausibility_filter(s, params.max_angle_deg);
  });
  return out;
}

PlaneRaster hedgehog_to_plane(const Hedgehog& h, std::span<const PlaneMark> overlay) {
  if (h.empty()) throw ValidationError("cannot lay out an empty hedgehog");
  PlaneRaster r;
  r.width = h.spines.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : h.spines) {
    r.height = std::max(r.height, s.samples.size());
    for (double v : s.samples) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  r.pixels.assign(r.width * r.height, 0);
  const bool flat = !(hi > lo);
  for (std::size_t x = 0; x < r.width; ++x) {
    const auto& samples = h.spines[x].samples;
    for (std::size_t y = 0; y < samples.size(); ++y) {
      const double scaled = flat ? 128.0 : std::round((samples[y] - lo) / (hi - lo) * 255.0);
      r.pixels[y * r.width + x] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
    }
  }
  for (const auto& m : overlay) {
    if (m.spine_index >= r.width || m.sample_index >= h.spines[m.spine_index].samples.size()) {
      throw ValidationError("overlay mark outside the hedgehog");
    }
  }
  r.overlay.assign(overlay.begin(), overlay.end());
  return r;
}

}  // namespace gazetrack
