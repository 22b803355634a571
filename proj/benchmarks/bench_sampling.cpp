#include <benchmark/benchmark.h>

#include <random>

#include "gazetrack/maxima.hpp"
#include "gazetrack/volume.hpp"

namespace {

using namespace gazetrack;

VolumeTimepoint noise_volume(int n) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(0, 4000);
  std::vector<std::uint16_t> v(std::size_t(n) * n * n);
  for (auto& x : v) x = std::uint16_t(d(rng));
  return VolumeTimepoint({n, n, n}, Vec3::Ones(), std::move(v));
}

void BM_Trilinear(benchmark::State& state) {
  const auto vol = noise_volume(64);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec3> pts(4096);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  for (auto _ : state) {
    double acc = 0;
    for (const auto& p : pts) acc += sample_trilinear(vol, p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(pts.size()));
}
BENCHMARK(BM_Trilinear);

void BM_SampleRay(benchmark::State& state) {
  const auto vol = noise_volume(64);
  for (auto _ : state) benchmark::DoNotOptimize(sample_ray(vol, {0.0, 0.1, 0.2}, {1.0, 0.9, 0.7}, 1.0));
}
BENCHMARK(BM_SampleRay);

void BM_LocalMaxima(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> profile(std::size_t(state.range(0)));
  double acc = 0;
  for (auto& x : profile) x = acc += n(rng);
  for (auto _ : state) benchmark::DoNotOptimize(find_local_maxima(profile, {1.0, 0.0}));
}
BENCHMARK(BM_LocalMaxima)->Arg(64)->Arg(400)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
