#include <benchmark/benchmark.h>

#include "fpa/bernstein.hpp"

namespace {

using namespace fpa;

BpdParams make_params() {
  return BpdParams(6, SimplexWeights({0.1, 0.2, 0.3, 0.2, 0.1, 0.1}));
}

DistortionParams make_distortion() {
  return DistortionParams(0.1, 6, SimplexWeights({0.05, 0.05, 0.45, 0.45}));
}

void BM_BpdPdf(benchmark::State& state) {
  const BpdParams p = make_params();
  double v = 0.0;
  for (auto _ : state) {
    v += 1e-6;
    if (v > 1.0) v = 0.0;
    benchmark::DoNotOptimize(bpd_pdf(p, v));
  }
}
BENCHMARK(BM_BpdPdf);

void BM_BpdCdf(benchmark::State& state) {
  const BpdParams p = make_params();
  double v = 0.0;
  for (auto _ : state) {
    v += 1e-6;
    if (v > 1.0) v = 0.0;
    benchmark::DoNotOptimize(bpd_cdf(p, v));
  }
}
BENCHMARK(BM_BpdCdf);

void BM_BpdQuantile(benchmark::State& state) {
  const BpdParams p = make_params();
  double g = 0.0;
  for (auto _ : state) {
    g += 1e-4;
    if (g > 1.0) g = 0.0;
    benchmark::DoNotOptimize(bpd_quantile(p, g));
  }
}
BENCHMARK(BM_BpdQuantile);

void BM_DistortionEval(benchmark::State& state) {
  const DistortionParams d = make_distortion();
  double g = 0.0;
  for (auto _ : state) {
    g += 1e-6;
    if (g > 1.0) g = 0.0;
    benchmark::DoNotOptimize(d_eval(d, g));
  }
}
BENCHMARK(BM_DistortionEval);

void BM_DistortionShapeCheck(benchmark::State& state) {
  const DistortionParams d = make_distortion();
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_shape_ok(d, 201));
  }
}
BENCHMARK(BM_DistortionShapeCheck);

}  // namespace

BENCHMARK_MAIN();
