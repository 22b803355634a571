#include <benchmark/benchmark.h>

#include "gazetrack/linker.hpp"
#include "gazetrack/simulator.hpp"

namespace {

using namespace gazetrack;

struct Fixture {
  RenderedScene scene;
  Hedgehog hedgehog;
};

// 101 timepoints at 16 spines each, cut to 1614 spines.
const Fixture& fixture() {
  static const Fixture f = [] {
    SceneSpec s;
    s.n_timepoints = 101;
    auto scene = render_scene(s);
    GazeSpec g;
    g.sample_rate_hz = 64;
    Hedgehog h = simulate_gaze(scene.dataset, scene.truth, g, 0);
    h.spines.resize(std::min<std::size_t>(h.spines.size(), 1614));
    return Fixture{std::move(scene), std::move(h)};
  }();
  return f;
}

void BM_TrackHedgehog(benchmark::State& state) {
  const auto& f = fixture();
  TrackParams p;
  p.maxima.noise_floor_fraction = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(track(f.hedgehog, f.scene.dataset.geometry().local_to_world, p));
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(f.hedgehog.size()));
}
BENCHMARK(BM_TrackHedgehog)->Unit(benchmark::kMillisecond);

void BM_CollectCandidates(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(collect_candidates(f.hedgehog, f.scene.dataset.geometry().local_to_world, {0.0, 0.1}));
  }
}
BENCHMARK(BM_CollectCandidates)->Unit(benchmark::kMillisecond);

void BM_Prune(benchmark::State& state) {
  const auto& f = fixture();
  const auto cands = collect_candidates(f.hedgehog, f.scene.dataset.geometry().local_to_world, {0.0, 0.1});
  const auto linked = chain(cands, seed(cands));
  for (auto _ : state) benchmark::DoNotOptimize(prune(linked, 2.0));
}
BENCHMARK(BM_Prune)->Unit(benchmark::kMicrosecond);

}  // namespace
