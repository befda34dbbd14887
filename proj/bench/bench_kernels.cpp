// Serial reference vs OpenMP column kernels, plus the full forward transform.
#include "dtfuse/dtcwt.hpp"
#include "dtfuse/filters.hpp"
#include "dtfuse/kernels.hpp"
#include "dtfuse/rng.hpp"

#include <benchmark/benchmark.h>

using namespace dtfuse;

namespace {

Plane random_plane(std::size_t n) {
  Rng rng(n);
  Plane p(n, n);
  for (double& v : p.data) v = rng.uniform(0, 255);
  return p;
}

template <Plane (*Kernel)(const Plane&, std::span<const double>)>
void BM_colfilter(benchmark::State& state) {
  const Plane x = random_plane(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, filters::h1o));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

template <Plane (*Kernel)(const Plane&, std::span<const double>, std::span<const double>)>
void BM_coldfilt(benchmark::State& state) {
  const Plane x = random_plane(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, filters::h0b, filters::h0a));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

template <Plane (*Kernel)(const Plane&, std::span<const double>, std::span<const double>)>
void BM_colifilt(benchmark::State& state) {
  const Plane x = random_plane(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(x, filters::g0b, filters::g0a));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

void BM_forward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GrayImage img(n, n);
  img.pixels = random_plane(n).data;
  for (auto _ : state) benchmark::DoNotOptimize(dtcwt_forward(img, 3));
}

}  // namespace

BENCHMARK(BM_colfilter<kernels::serial::colfilter>)->Name("colfilter/serial")->RangeMultiplier(2)->Range(128, 1024);
BENCHMARK(BM_colfilter<kernels::colfilter>)->Name("colfilter/openmp")->RangeMultiplier(2)->Range(128, 1024);
BENCHMARK(BM_coldfilt<kernels::serial::coldfilt>)->Name("coldfilt/serial")->RangeMultiplier(2)->Range(128, 1024);
BENCHMARK(BM_coldfilt<kernels::coldfilt>)->Name("coldfilt/openmp")->RangeMultiplier(2)->Range(128, 1024);
BENCHMARK(BM_colifilt<kernels::serial::colifilt>)->Name("colifilt/serial")->RangeMultiplier(2)->Range(128, 1024);
BENCHMARK(BM_colifilt<kernels::colifilt>)->Name("colifilt/openmp")->RangeMultiplier(2)->Range(128, 1024);
BENCHMARK(BM_forward)->Name("dtcwt_forward/L3")->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
