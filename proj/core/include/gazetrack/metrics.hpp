#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gazetrack/linker.hpp"
#include "gazetrack/track_io.hpp"

namespace gazetrack {

struct TrackScore {
  double mean_distance = 0.0;        // world units
  double normalized_distance = 0.0;  // cell diameters
  int matched_timepoints = 0;
  double coverage = 0.0;             // matched / truth timepoints
};

/// Pairs track and truth points by equal timepoint and averages their
/// Euclidean distances. Throws ValidationError when cell_diameter <= 0 or no
/// timepoint is shared.
TrackScore score_track(std::span<const TrackPoint> track, std::span<const TrackPoint> truth, double cell_diameter);

struct BestMatch {
  int blob_id = -1;
  TrackScore score;
};

// Truth track with the smallest normalized distance; ties go to the lower
// id. Truth tracks sharing no timepoint with the track are skipped; if none
// qualifies, throws ValidationError.
BestMatch best_match(std::span<const TrackPoint> track, std::span<const TrackRecord> truths, double cell_diameter);

struct TrackEvaluation {
  int track_id = 0;
  BestMatch match;
};

struct EvaluationReport {
  std::vector<TrackEvaluation> tracks;
  double cell_diameter = 0.0;

  // Fraction of tracks with normalized distance < 1.
  double fraction_under_one_diameter() const;
  std::string to_json() const;
};

EvaluationReport evaluate_tracks(std::span<const TrackRecord> tracks, std::span<const TrackRecord> truths,
                                 double cell_diameter);

}  // namespace gazetrack
