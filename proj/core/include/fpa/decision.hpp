#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/inference.hpp"
#include "fpa/rng.hpp"

namespace fpa {

// Expected seller revenue as a function of the reserve price on a regular
// grid 0, step, 2*step, ... < 1.
struct RevenueCurve {
  int n = 0;
  std::vector<double> grid;
  std::vector<double> values;
};

struct RevenueConfig {
  double grid_step = 0.01;
  BidCurveConfig curve{257, 1e-9};
  double quad_tol = 1e-9;
};

// Revenue at reserve rho: the highest-value bidder wins and pays her bid when
// her value clears the reserve, otherwise there is no sale. Bids follow the
// reserve-shifted strategy derived in closed form from the zero-reserve
// curve; outcomes are driven by the undistorted value distribution.
//   Pi_n(rho) = n * int_rho^1 beta(v; rho) F(v)^{n-1} f(v) dv
RevenueCurve revenue_curve(const Structure& s, int n,
                           const RevenueConfig& cfg = {});

// Index of the largest value; ties resolve to the smallest index.
std::size_t grid_argmax(const std::vector<double>& values);

// Percent of the attainable maximum revenue lost by charging rho_b instead of
// the curve's own argmax: (max - at(rho_b)) / max * 100.
double revenue_loss_percent(const RevenueCurve& truth, double rho_b);

// Posterior-mean revenue curve with its maximizer.
struct BayesAction {
  int n = 0;
  double rho = 0.0;      // argmax of the draw-averaged curve
  double revenue = 0.0;  // averaged revenue at rho
  double lo = 0.0;       // 2.5 percentile of per-draw revenue at rho
  double hi = 0.0;       // 97.5 percentile
  std::vector<double> grid;
  std::vector<double> mean;     // draw-averaged curve
  std::vector<double> band_lo;  // pointwise 2.5 percentiles
  std::vector<double> band_hi;  // pointwise 97.5 percentiles
  std::size_t draws_used = 0;
  std::size_t draws_failed = 0;
};

// Reduces a matrix of per-draw revenue curves (rows = draws) to the averaged
// curve, its argmax, and percentile bands.
BayesAction summarize_revenue_draws(
    const std::vector<std::vector<double>>& per_draw,
    std::vector<double> grid, int n);

// Computes one revenue curve per retained draw and reduces them. Draws whose
// curve computation fails numerically are skipped and counted.
BayesAction bayes_action(const Chain& chain, int n,
                         const RevenueConfig& cfg = {});

// Arithmetic mean over retained draws of the value density / the distortion.
// A chain estimated without the distortion block has identity predictive D.
double predictive_density(const Chain& chain, double v);
double predictive_d(const Chain& chain, double gamma);

struct PredictiveBand {
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> lo;  // pointwise 2.5 percentiles
  std::vector<double> hi;  // pointwise 97.5 percentiles
};

PredictiveBand predictive_density_band(const Chain& chain,
                                       std::vector<double> grid);
PredictiveBand predictive_d_band(const Chain& chain, std::vector<double> grid);

// Fraction of retained draws with a negative distortion scale (identity D).
// Throws std::invalid_argument on an empty chain or one estimated without
// the distortion block.
double ambiguity_neutral_prob(const Chain& chain);

// Per-group sample moments of one simulated dataset per parameter draw.
struct CheckTriple {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;    // n - 1 denominator
  double skew = 0.0;  // standardized third moment, no bias correction
};

// For each parameter row: simulate a dataset of the given design from that
// structure and record per-n (mean, sd, skewness) of the bids. Rows whose
// bid model cannot be built (distortion degenerate between shape-check grid
// points) are skipped, so the output can be shorter than params x design.
std::vector<CheckTriple> predictive_check(
    const std::vector<std::vector<double>>& params, const ModelConfig& model,
    const std::map<int, int>& design, RngStream rng,
    const BidCurveConfig& curve_cfg = {});

// Parameter sources for the check: fresh prior draws, or an even stride
// through the chain's retained block.
std::vector<std::vector<double>> prior_draws(const ModelConfig& model, int reps,
                                             RngStream& rng);
std::vector<std::vector<double>> chain_draws(const Chain& chain, int reps);

struct PosteriorSummary {
  std::vector<double> v_grid;
  std::vector<double> f_mean, f_lo, f_hi;
  std::vector<double> g_grid;
  std::vector<double> d_mean, d_lo, d_hi;
  double crra_mean = 0.0;
  double crra_sd = 0.0;
  bool has_ambiguity = false;
  double neutral_prob = 0.0;  // meaningful only when has_ambiguity
  std::vector<BayesAction> actions;
};

// Full posterior report: predictive bands on 201-point grids, crra moments,
// neutrality probability when applicable, and one Bayes action per requested
// bidder count.
PosteriorSummary summarize_posterior(const Chain& chain,
                                     const std::vector<int>& ns,
                                     const RevenueConfig& cfg = {});

}  // namespace fpa
