#include <benchmark/benchmark.h>

#include <span>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/decision.hpp"
#include "fpa/identification.hpp"
#include "fpa/inference.hpp"
#include "fpa/mc.hpp"

namespace {

using namespace fpa;

void BM_BidCurveCompute(benchmark::State& state) {
  const DgpSpec dgp;
  const Structure s = dgp_structure(dgp);
  BidCurveConfig cfg;
  cfg.knots = static_cast<int>(state.range(0));
  cfg.quad_tol = cfg.knots >= 257 ? 1e-9 : 1e-7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BidCurve::compute(s, 2, 0.0, cfg));
  }
}
BENCHMARK(BM_BidCurveCompute)->Arg(65)->Arg(129)->Arg(257);

void BM_ReserveShiftedBid(benchmark::State& state) {
  const DgpSpec dgp;
  const Structure s = dgp_structure(dgp);
  const BidCurve curve = BidCurve::compute(s, 2, 0.0, {129, 1e-7});
  double v = 0.3;
  for (auto _ : state) {
    v += 1e-6;
    if (v > 1.0) v = 0.3;
    benchmark::DoNotOptimize(curve.bid_at_reserve(0.25, v));
  }
}
BENCHMARK(BM_ReserveShiftedBid);

void BM_LogLikelihood(benchmark::State& state) {
  DgpSpec dgp;
  dgp.design = {{2, 150}, {5, 60}};
  const BidDataset data = simulate_dataset(dgp);
  const ModelConfig model;
  const BinnedHistogram hist = make_bins(data, model.bins_per_n);
  const std::vector<double> x = {0.3,  0.10, 0.25, 0.30, 0.20,
                                 0.10, 0.10, 0.25, 0.25, 0.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_likelihood(x, hist, model));
  }
}
BENCHMARK(BM_LogLikelihood);

void BM_SamplerIteration(benchmark::State& state) {
  DgpSpec dgp;
  dgp.design = {{2, 150}, {5, 60}};
  const BidDataset data = simulate_dataset(dgp);
  const ModelConfig model;
  const BinnedHistogram hist = make_bins(data, model.bins_per_n);
  const auto target = [&](std::span<const double> x) {
    const double lp = log_prior(x, model);
    if (!(lp > -1e300)) return -1e308;
    const double ll = log_likelihood(x, hist, model);
    if (!(ll > -1e300)) return -1e308;
    return lp + ll;
  };
  RngStream init_rng(7, {1});
  const std::vector<double> init = sample_prior(model, init_rng);
  AmSampler sampler(target, init, {}, RngStream(7, {2}));
  for (auto _ : state) {
    sampler.step();
    benchmark::DoNotOptimize(sampler.current_log_target());
  }
}
BENCHMARK(BM_SamplerIteration);

void BM_RevenueCurve(benchmark::State& state) {
  const DgpSpec dgp;
  const Structure s = dgp_structure(dgp);
  RevenueConfig cfg;
  cfg.curve = {129, 1e-7};
  cfg.quad_tol = 1e-7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(revenue_curve(s, 2, cfg));
  }
}
BENCHMARK(BM_RevenueCurve);

void BM_IdentifyPipeline(benchmark::State& state) {
  const DgpSpec dgp;
  const Structure s = dgp_structure(dgp);
  const BidLaw law2 = exact_bid_law(s, 2);
  const BidLaw law5 = exact_bid_law(s, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(identify(law2, law5, 257));
  }
}
BENCHMARK(BM_IdentifyPipeline);

void BM_SimulateDataset(benchmark::State& state) {
  DgpSpec dgp;
  dgp.design = {{2, 150}, {5, 60}};
  for (auto _ : state) {
    dgp.seed += 1;
    benchmark::DoNotOptimize(simulate_dataset(dgp));
  }
}
BENCHMARK(BM_SimulateDataset);

}  // namespace

BENCHMARK_MAIN();
