#include "gazetrack/linker.hpp"

#include <cmath>
#include <map>

namespace gazetrack {

std::vector<SpineCandidates> collect_candidates(const Hedgehog& h, const Affine3& local_to_world,
                                                const MaximaParams& params) {
  std::vector<SpineCandidates> out;
  out.reserve(h.spines.size());
  for (const auto& spine : h.spines) {
    SpineCandidates c;
    c.timepoint = spine.timepoint;
    const auto maxima = find_local_maxima(spine.samples, params);
    c.sample_indices = maxima.indices;
    c.world_positions.reserve(maxima.size());
    for (std::size_t idx : maxima.indices) c.world_positions.push_back(local_to_world * spine.sample_positions[idx]);
    out.push_back(std::move(c));
  }
  return out;
}

TrackVertex seed(std::span<const SpineCandidates> candidates) {
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    const auto& c = candidates[s];
    if (c.empty()) continue;
    return {s, c.sample_indices.front(), c.world_positions.front(), c.timepoint};
  }
  throw UnseedableHedgehog();
}

std::vector<TrackVertex> chain(std::span<const SpineCandidates> candidates, const TrackVertex& start) {
  std::vector<TrackVertex> out{start};
  Vec3 anchor = start.world_position;
  for (std::size_t s = start.spine_index + 1; s < candidates.size(); ++s) {
    const auto& c = candidates[s];
    if (c.empty()) continue;
    // Candidates are ordered by sample index, so the strict comparison keeps
    // the one nearest the observer on ties.
    std::size_t best = 0;
    double best_d2 = (c.world_positions[0] - anchor).squaredNorm();
    for (std::size_t k = 1; k < c.world_positions.size(); ++k) {
      const double d2 = (c.world_positions[k] - anchor).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = k;
      }
    }
    out.push_back({s, c.sample_indices[best], c.world_positions[best], c.timepoint});
    anchor = c.world_positions[best];
  }
  return out;
}

LinkStats link_stats(std::span<const TrackVertex> vertices) {
  LinkStats st;
  if (vertices.size() < 2) return st;
  st.distances.reserve(vertices.size() - 1);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    st.distances.push_back((vertices[i].world_position - vertices[i - 1].world_position).norm());
  }
  const double n = double(st.distances.size());
  double sum = 0.0;
  for (double d : st.distances) sum += d;
  st.mu = sum / n;
  double ss = 0.0;
  for (double d : st.distances) ss += (d - st.mu) * (d - st.mu);
  st.sigma = std::sqrt(ss / n);
  st.z.reserve(st.distances.size());
  for (double d : st.distances) st.z.push_back(st.sigma > 0.0 ? (d - st.mu) / st.sigma : 0.0);
  return st;
}

PruneResult prune(std::vector<TrackVertex> vertices, double z_threshold) {
  PruneResult result;
  while (vertices.size() > 2) {
    LinkStats st = link_stats(vertices);
    const bool degenerate = !(st.sigma > 0.0);
    std::vector<TrackVertex> kept;
    kept.reserve(vertices.size());
    kept.push_back(vertices.front());
    if (!degenerate) {
      for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (!(st.z[i - 1] > z_threshold)) kept.push_back(vertices[i]);
      }
    }
    result.history.push_back(std::move(st));
    if (degenerate || kept.size() == vertices.size()) break;
    vertices = std::move(kept);
  }
  result.vertices = std::move(vertices);
  return result;
}

std::vector<TrackPoint> reduce_to_timepoints(std::span<const TrackVertex> vertices) {
  std::map<int, std::pair<Vec3, std::size_t>> acc;
  for (const auto& v : vertices) {
    auto [it, inserted] = acc.try_emplace(v.timepoint, Vec3::Zero(), 0);
    it->second.first += v.world_position;
    it->second.second += 1;
  }
  std::vector<TrackPoint> out;
  out.reserve(acc.size());
  for (const auto& [t, sum] : acc) out.push_back({t, sum.first / double(sum.second)});
  return out;
}

Track track(const Hedgehog& h, const Affine3& local_to_world, const TrackParams& params) {
  const auto candidates = collect_candidates(h, local_to_world, params.maxima);
  const TrackVertex start = seed(candidates);
  auto linked = chain(candidates, start);

  Track t;
  t.chain_length = linked.size();
  auto pruned = prune(std::move(linked), params.z_threshold);
  t.vertices = std::move(pruned.vertices);
  t.prune_history = std::move(pruned.history);
  t.points = reduce_to_timepoints(t.vertices);
  t.hedgehog_id = h.dataset_ref;
  t.params = params;
  return t;
}

Track track_filtered(const Hedgehog& h, const Affine3& local_to_world, const SpineFilterParams& filter,
                     const TrackParams& params) {
  Hedgehog kept{h.dataset_ref, {}};
  std::vector<std::size_t> original;
  for (std::size_t i = 0; i < h.spines.size(); ++i) {
    const auto& s = h.spines[i];
    if (confidence_filter(s, filter.min_confidence) && plausibility_filter(s, filter.max_angle_deg)) {
      kept.spines.push_back(s);
      original.push_back(i);
    }
  }
  Track t = track(kept, local_to_world, params);
  for (auto& v : t.vertices) v.spine_index = original[v.spine_index];
  return t;
}

}  // namespace gazetrack
