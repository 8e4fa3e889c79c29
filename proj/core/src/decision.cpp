#include "fpa/decision.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "fpa/bernstein.hpp"
#include "fpa/distributions.hpp"
#include "fpa/quadrature.hpp"
#include "fpa/stats.hpp"

namespace fpa {
namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

std::vector<double> reserve_grid(double step) {
  if (!(step > 0.0 && step < 1.0)) {
    throw std::invalid_argument("reserve grid: step outside (0, 1)");
  }
  const int count = static_cast<int>(std::lround(1.0 / step));
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = i * step;
  return grid;
}

std::vector<std::vector<double>> retained_rows(const Chain& chain) {
  if (chain.draws.empty() || chain.retained_begin >= chain.draws.size()) {
    throw std::invalid_argument("chain has no retained draws");
  }
  return {chain.draws.begin() + static_cast<std::ptrdiff_t>(chain.retained_begin),
          chain.draws.end()};
}

}  // namespace

RevenueCurve revenue_curve(const Structure& s, int n, const RevenueConfig& cfg) {
  validate_structure(s);
  const BidCurve base = BidCurve::compute(s, n, 0.0, cfg.curve);
  const Distribution& F = *s.values;
  const double lo = F.lower(), hi = F.upper();
  RevenueCurve rc;
  rc.n = n;
  rc.grid = reserve_grid(cfg.grid_step);
  rc.values.resize(rc.grid.size(), 0.0);
  for (std::size_t i = 0; i < rc.grid.size(); ++i) {
    const double rho = rc.grid[i];
    if (rho >= hi) continue;
    const auto integrand = [&](double v) {
      return base.bid_at_reserve(rho, v) * n * ipow(F.cdf(v), n - 1) * F.pdf(v);
    };
    const double val =
        integrate_gk15(integrand, std::max(rho, lo), hi, cfg.quad_tol).value;
    rc.values[i] = val > 0.0 ? val : 0.0;
  }
  return rc;
}

std::size_t grid_argmax(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("grid_argmax: empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double revenue_loss_percent(const RevenueCurve& truth, double rho_b) {
  if (truth.grid.empty() || truth.grid.size() != truth.values.size()) {
    throw std::invalid_argument("revenue_loss_percent: malformed curve");
  }
  const double step = truth.grid.size() > 1 ? truth.grid[1] - truth.grid[0] : 1.0;
  const auto idx = static_cast<std::size_t>(std::lround(rho_b / step));
  if (idx >= truth.grid.size() ||
      std::abs(truth.grid[idx] - rho_b) > 1e-9) {
    throw std::invalid_argument("revenue_loss_percent: rho_b off the grid");
  }
  const double best = truth.values[grid_argmax(truth.values)];
  if (!(best > 0.0)) {
    throw std::invalid_argument("revenue_loss_percent: degenerate curve");
  }
  return (best - truth.values[idx]) / best * 100.0;
}

BayesAction summarize_revenue_draws(
    const std::vector<std::vector<double>>& per_draw, std::vector<double> grid,
    int n) {
  if (per_draw.empty()) {
    throw std::invalid_argument("summarize_revenue_draws: no draws");
  }
  const std::size_t cols = grid.size();
  for (const auto& row : per_draw) {
    if (row.size() != cols) {
      throw std::invalid_argument("summarize_revenue_draws: ragged rows");
    }
  }
  BayesAction ba;
  ba.n = n;
  ba.grid = std::move(grid);
  ba.mean.assign(cols, 0.0);
  for (const auto& row : per_draw) {
    for (std::size_t c = 0; c < cols; ++c) ba.mean[c] += row[c];
  }
  const double inv = 1.0 / static_cast<double>(per_draw.size());
  for (auto& m : ba.mean) m *= inv;
  ba.band_lo.resize(cols);
  ba.band_hi.resize(cols);
  std::vector<double> col(per_draw.size());
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < per_draw.size(); ++r) col[r] = per_draw[r][c];
    ba.band_lo[c] = percentile(col, 2.5);
    ba.band_hi[c] = percentile(col, 97.5);
  }
  const std::size_t best = grid_argmax(ba.mean);
  ba.rho = ba.grid[best];
  ba.revenue = ba.mean[best];
  ba.lo = ba.band_lo[best];
  ba.hi = ba.band_hi[best];
  ba.draws_used = per_draw.size();
  return ba;
}

BayesAction bayes_action(const Chain& chain, int n, const RevenueConfig& cfg) {
  const auto rows = retained_rows(chain);
  std::vector<std::vector<double>> per_draw;
  per_draw.reserve(rows.size());
  std::vector<double> grid;
  std::size_t failed = 0;
  for (const auto& row : rows) {
    try {
      const Structure s = structure_from_params(row, chain.model);
      RevenueCurve rc = revenue_curve(s, n, cfg);
      if (grid.empty()) grid = std::move(rc.grid);
      per_draw.push_back(std::move(rc.values));
    } catch (const std::exception&) {
      ++failed;
    }
  }
  if (per_draw.empty()) {
    throw std::runtime_error("bayes_action: every draw failed");
  }
  BayesAction ba = summarize_revenue_draws(per_draw, std::move(grid), n);
  ba.draws_failed = failed;
  return ba;
}

double predictive_density(const Chain& chain, double v) {
  const auto rows = retained_rows(chain);
  double s = 0.0;
  UnpackedParams u;
  for (const auto& row : rows) {
    if (!unpack_params(row, chain.model, u)) {
      throw std::invalid_argument("predictive_density: invalid draw");
    }
    s += bpd_pdf(BpdParams(chain.model.k, SimplexWeights(u.f_weights)), v);
  }
  return s / static_cast<double>(rows.size());
}

double predictive_d(const Chain& chain, double gamma) {
  const auto rows = retained_rows(chain);
  if (!chain.model.ambiguity) return gamma;
  double s = 0.0;
  UnpackedParams u;
  for (const auto& row : rows) {
    if (!unpack_params(row, chain.model, u)) {
      throw std::invalid_argument("predictive_d: invalid draw");
    }
    s += d_eval(DistortionParams(u.theta0, chain.model.k, SimplexWeights(u.d_inner)),
                gamma);
  }
  return s / static_cast<double>(rows.size());
}

namespace {

PredictiveBand band_over_draws(
    const Chain& chain, std::vector<double> grid,
    const std::function<double(const UnpackedParams&, double)>& f) {
  const auto rows = retained_rows(chain);
  PredictiveBand band;
  band.grid = std::move(grid);
  const std::size_t cols = band.grid.size();
  std::vector<std::vector<double>> table(rows.size(),
                                         std::vector<double>(cols, 0.0));
  UnpackedParams u;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!unpack_params(rows[r], chain.model, u)) {
      throw std::invalid_argument("predictive band: invalid draw");
    }
    for (std::size_t c = 0; c < cols; ++c) table[r][c] = f(u, band.grid[c]);
  }
  band.mean.assign(cols, 0.0);
  band.lo.resize(cols);
  band.hi.resize(cols);
  std::vector<double> col(rows.size());
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) col[r] = table[r][c];
    band.mean[c] = mean(col);
    band.lo[c] = percentile(col, 2.5);
    band.hi[c] = percentile(col, 97.5);
  }
  return band;
}

}  // namespace

PredictiveBand predictive_density_band(const Chain& chain,
                                       std::vector<double> grid) {
  const int k = chain.model.k;
  return band_over_draws(chain, std::move(grid),
                         [k](const UnpackedParams& u, double v) {
                           return bpd_pdf(BpdParams(k, SimplexWeights(u.f_weights)), v);
                         });
}

PredictiveBand predictive_d_band(const Chain& chain, std::vector<double> grid) {
  if (!chain.model.ambiguity) {
    PredictiveBand band;
    band.grid = std::move(grid);
    band.mean = band.grid;
    band.lo = band.grid;
    band.hi = band.grid;
    retained_rows(chain);  // still insist on a nonempty chain
    return band;
  }
  const int k = chain.model.k;
  return band_over_draws(
      chain, std::move(grid), [k](const UnpackedParams& u, double g) {
        return d_eval(DistortionParams(u.theta0, k, SimplexWeights(u.d_inner)), g);
      });
}

double ambiguity_neutral_prob(const Chain& chain) {
  if (!chain.model.ambiguity) {
    throw std::invalid_argument(
        "ambiguity_neutral_prob: chain has no distortion block");
  }
  const auto rows = retained_rows(chain);
  const auto k = static_cast<std::size_t>(chain.model.k);
  std::size_t neutral = 0;
  for (const auto& row : rows) {
    if (row[k] < 0.0) ++neutral;
  }
  return static_cast<double>(neutral) / static_cast<double>(rows.size());
}

std::vector<CheckTriple> predictive_check(
    const std::vector<std::vector<double>>& params, const ModelConfig& model,
    const std::map<int, int>& design, RngStream rng,
    const BidCurveConfig& curve_cfg) {
  if (params.empty()) throw std::invalid_argument("predictive_check: no draws");
  if (design.empty()) throw std::invalid_argument("predictive_check: empty design");
  std::vector<CheckTriple> out;
  out.reserve(params.size() * design.size());
  for (std::size_t r = 0; r < params.size(); ++r) {
    RngStream rep = rng.derive({static_cast<std::uint64_t>(r)});
    // A draw that slips through the discretized shape screen can still have a
    // distortion that vanishes between grid points; such a draw has no bid
    // model and is outside the effective support, so it contributes no rows.
    std::vector<CheckTriple> rows;
    try {
      const Structure s = structure_from_params(params[r], model);
      for (const auto& [n, auctions] : design) {
        const BidCurve curve = BidCurve::compute(s, n, 0.0, curve_cfg);
        std::vector<double> bids;
        bids.reserve(static_cast<std::size_t>(n) *
                     static_cast<std::size_t>(auctions));
        for (int t = 0; t < auctions; ++t) {
          for (int i = 0; i < n; ++i) {
            bids.push_back(curve.bid_at(s.values->quantile(rep.uniform01())));
          }
        }
        CheckTriple tr;
        tr.n = n;
        tr.mean = mean(bids);
        tr.sd = sample_sd(bids);
        tr.skew = skewness(bids);
        rows.push_back(tr);
      }
    } catch (const std::exception&) {
      continue;
    }
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::vector<std::vector<double>> prior_draws(const ModelConfig& model, int reps,
                                             RngStream& rng) {
  if (reps < 1) throw std::invalid_argument("prior_draws: reps < 1");
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) out.push_back(sample_prior(model, rng));
  return out;
}

std::vector<std::vector<double>> chain_draws(const Chain& chain, int reps) {
  if (reps < 1) throw std::invalid_argument("chain_draws: reps < 1");
  const auto rows = retained_rows(chain);
  const std::size_t R = rows.size();
  if (static_cast<std::size_t>(reps) >= R) return rows;
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    out.push_back(rows[(static_cast<std::size_t>(i) * R) / static_cast<std::size_t>(reps)]);
  }
  return out;
}

PosteriorSummary summarize_posterior(const Chain& chain,
                                     const std::vector<int>& ns,
                                     const RevenueConfig& cfg) {
  const auto rows = retained_rows(chain);
  PosteriorSummary ps;
  std::vector<double> grid(201);
  for (int i = 0; i <= 200; ++i) grid[static_cast<std::size_t>(i)] = i / 200.0;

  PredictiveBand fb = predictive_density_band(chain, grid);
  ps.v_grid = std::move(fb.grid);
  ps.f_mean = std::move(fb.mean);
  ps.f_lo = std::move(fb.lo);
  ps.f_hi = std::move(fb.hi);

  PredictiveBand db = predictive_d_band(chain, grid);
  ps.g_grid = std::move(db.grid);
  ps.d_mean = std::move(db.mean);
  ps.d_lo = std::move(db.lo);
  ps.d_hi = std::move(db.hi);

  std::vector<double> crra(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) crra[i] = rows[i][0];
  ps.crra_mean = mean(crra);
  ps.crra_sd = crra.size() > 1 ? sample_sd(crra) : 0.0;

  ps.has_ambiguity = chain.model.ambiguity;
  if (ps.has_ambiguity) ps.neutral_prob = ambiguity_neutral_prob(chain);

  for (int n : ns) ps.actions.push_back(bayes_action(chain, n, cfg));
  return ps;
}

}  // namespace fpa
