#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gazetrack {

struct MaximaResult {
  std::vector<std::size_t> indices;  // strictly increasing, never 0 or N-1
  std::vector<double> values;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

struct MaximaParams {
  double min_prominence = 0.0;
  // Extra threshold as a fraction of the profile's largest sample; the
  // effective cutoff is max(min_prominence, fraction * max).
  double noise_floor_fraction = 0.0;
};

/// Local maxima along a 1D intensity profile.
///
/// A sample (or the centre of a plateau of equal samples, rounding down) is
/// a maximum when it is strictly greater than the nearest differing sample
/// on both sides. Runs touching either end of the profile are never maxima.
/// Maxima whose topographic prominence is below the cutoff are dropped.
MaximaResult find_local_maxima(std::span<const double> profile, double min_prominence = 0.0);
MaximaResult find_local_maxima(std::span<const double> profile, const MaximaParams& params);

// Height of `peak` above the higher of its two bases, where each base is the
// lowest sample between the peak and the nearest strictly higher sample (or
// the profile end) on that side.
double topographic_prominence(std::span<const double> profile, std::size_t peak);

}  // namespace gazetrack
