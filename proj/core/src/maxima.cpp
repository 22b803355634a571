#include "gazetrack/maxima.hpp"

#include <algorithm>

namespace gazetrack {

double topographic_prominence(std::span<const double> profile, std::size_t peak) {
  const double v = profile[peak];
  double left_base = v;
  for (std::size_t k = peak; k-- > 0;) {
    if (profile[k] > v) break;
    left_base = std::min(left_base, profile[k]);
  }
  double right_base = v;
  for (std::size_t k = peak + 1; k < profile.size(); ++k) {
    if (profile[k] > v) break;
    right_base = std::min(right_base, profile[k]);
  }
  return v - std::max(left_base, right_base);
}

MaximaResult find_local_maxima(std::span<const double> profile, const MaximaParams& params) {
  MaximaResult out;
  const std::size_t n = profile.size();
  if (n < 3) return out;

  double cutoff = params.min_prominence;
  if (params.noise_floor_fraction > 0.0) {
    cutoff = std::max(cutoff, params.noise_floor_fraction * *std::max_element(profile.begin(), profile.end()));
  }

  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(profile[i] > profile[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && profile[j + 1] == profile[i]) ++j;
    if (j + 1 < n && profile[j + 1] < profile[i]) {
      const std::size_t centre = i + (j - i) / 2;
      if (topographic_prominence(profile, centre) >= cutoff) {
        out.indices.push_back(centre);
        out.values.push_back(profile[centre]);
      }
    }
    i = j + 1;
  }
  return out;
}

MaximaResult find_local_maxima(std::span<const double> profile, double min_prominence) {
  return find_local_maxima(profile, MaximaParams{min_prominence, 0.0});
}

}  // namespace gazetrack
