#include "gazetrack/metrics.hpp"

#include <map>

#include <json.hpp>

namespace gazetrack {

TrackScore score_track(std::span<const TrackPoint> track, std::span<const TrackPoint> truth, double cell_diameter) {
  if (!(cell_diameter > 0.0)) throw ValidationError("cell_diameter must be > 0");
  if (truth.empty()) throw ValidationError("ground truth track is empty");
  std::map<int, Vec3> by_time;
  for (const auto& p : truth) by_time.emplace(p.timepoint, p.position);

  double sum = 0.0;
  int matched = 0;
  for (const auto& p : track) {
    const auto it = by_time.find(p.timepoint);
    if (it == by_time.end()) continue;
    sum += (p.position - it->second).norm();
    ++matched;
  }
  if (matched == 0) throw ValidationError("track and ground truth share no timepoint");

  TrackScore s;
  s.matched_timepoints = matched;
  s.mean_distance = sum / matched;
  s.normalized_distance = s.mean_distance / cell_diameter;
  s.coverage = double(matched) / double(by_time.size());
  return s;
}

BestMatch best_match(std::span<const TrackPoint> track, std::span<const TrackRecord> truths, double cell_diameter) {
  if (truths.empty()) throw ValidationError("no ground truth tracks");
  if (!(cell_diameter > 0.0)) throw ValidationError("cell_diameter must be > 0");
  BestMatch best;
  for (const auto& truth : truths) {
    TrackScore s;
    try {
      s = score_track(track, truth.points, cell_diameter);
    } catch (const ValidationError&) {
      continue;
    }
    const bool better = best.blob_id < 0 || s.normalized_distance < best.score.normalized_distance ||
                        (s.normalized_distance == best.score.normalized_distance && truth.track_id < best.blob_id);
    if (better) best = {truth.track_id, s};
  }
  if (best.blob_id < 0) throw ValidationError("track shares no timepoint with any ground truth track");
  return best;
}

double EvaluationReport::fraction_under_one_diameter() const {
  if (tracks.empty()) return 0.0;
  std::size_t under = 0;
  for (const auto& t : tracks) under += t.match.score.normalized_distance < 1.0 ? 1 : 0;
  return double(under) / double(tracks.size());
}

std::string EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["cell_diameter"] = cell_diameter;
  auto arr = nlohmann::ordered_json::array();
  std::size_t under = 0;
  for (const auto& t : tracks) {
    nlohmann::ordered_json e;
    e["track_id"] = t.track_id;
    e["matched_blob"] = t.match.blob_id;
    e["mean_distance"] = t.match.score.mean_distance;
    e["normalized_distance"] = t.match.score.normalized_distance;
    e["coverage"] = t.match.score.coverage;
    e["matched_timepoints"] = t.match.score.matched_timepoints;
    arr.push_back(std::move(e));
    under += t.match.score.normalized_distance < 1.0 ? 1 : 0;
  }
  j["tracks"] = std::move(arr);
  j["track_count"] = tracks.size();
  j["under_one_diameter"] = under;
  j["fraction_under_one_diameter"] = fraction_under_one_diameter();
  return j.dump(2) + "\n";
}

EvaluationReport evaluate_tracks(std::span<const TrackRecord> tracks, std::span<const TrackRecord> truths,
                                 double cell_diameter) {
  EvaluationReport report;
  report.cell_diameter = cell_diameter;
  for (const auto& t : tracks) report.tracks.push_back({t.track_id, best_match(t.points, truths, cell_diameter)});
  return report;
}

}  // namespace gazetrack
