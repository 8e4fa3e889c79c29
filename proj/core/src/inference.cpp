#include "fpa/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "fpa/distributions.hpp"

namespace fpa {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

int free_dimension(const ModelConfig& cfg) {
  if (cfg.k < 3) throw std::invalid_argument("ModelConfig: k must be >= 3");
  return cfg.ambiguity ? 2 * cfg.k - 2 : cfg.k;
}

bool unpack_params(std::span<const double> x, const ModelConfig& cfg,
                   UnpackedParams& out) {
  const int k = cfg.k;
  if (static_cast<int>(x.size()) != free_dimension(cfg)) return false;
  out.crra = x[0];
  out.f_weights.assign(static_cast<std::size_t>(k), 0.0);
  double sum = 0.0;
  for (int j = 0; j < k - 1; ++j) {
    const double w = x[static_cast<std::size_t>(1 + j)];
    if (w < 0.0) return false;
    out.f_weights[static_cast<std::size_t>(j)] = w;
    sum += w;
  }
  const double f_last = 1.0 - sum;
  if (f_last < 0.0) return false;
  out.f_weights[static_cast<std::size_t>(k - 1)] = f_last;
  if (!cfg.ambiguity) {
    out.theta0 = 0.0;
    out.d_inner.clear();
    return true;
  }
  out.theta0 = x[static_cast<std::size_t>(k)];
  out.d_inner.assign(static_cast<std::size_t>(k - 2), 0.0);
  sum = 0.0;
  for (int j = 0; j < k - 3; ++j) {
    const double w = x[static_cast<std::size_t>(k + 1 + j)];
    if (w < 0.0) return false;
    out.d_inner[static_cast<std::size_t>(j)] = w;
    sum += w;
  }
  const double d_last = 1.0 - sum;
  if (d_last < 0.0) return false;
  out.d_inner[static_cast<std::size_t>(k - 3)] = d_last;
  return true;
}

Structure structure_from_params(std::span<const double> x,
                                const ModelConfig& cfg) {
  UnpackedParams u;
  if (!unpack_params(x, cfg, u)) {
    throw std::invalid_argument("structure_from_params: invalid coordinates");
  }
  Structure s;
  s.values = std::make_shared<BpdDistribution>(
      BpdParams(cfg.k, SimplexWeights(u.f_weights)));
  if (cfg.ambiguity) {
    s.distortion = std::make_shared<BpdDistortion>(
        DistortionParams(u.theta0, cfg.k, SimplexWeights(u.d_inner)));
  } else {
    s.distortion = std::make_shared<IdentityDistortion>();
  }
  s.crra = u.crra;
  return s;
}

double log_prior(std::span<const double> x, const ModelConfig& cfg) {
  UnpackedParams u;
  if (!unpack_params(x, cfg, u)) return kNegInf;
  if (u.crra < 0.0 || u.crra > 0.9) return kNegInf;
  double lp = 0.0;
  for (double w : u.f_weights) {
    if (!(w > 0.0)) return kNegInf;
    lp += 0.1 * std::log(w);
  }
  if (!cfg.ambiguity) return lp;
  if (u.theta0 < -0.05 || u.theta0 > 0.55) return kNegInf;
  // The Dirichlet kernel applies on both theta0 branches so that the weight
  // block has the same base measure everywhere; the two shape indicators only
  // bind when the distortion is active.
  for (double w : u.d_inner) {
    if (!(w > 0.0)) return kNegInf;
    lp += 0.1 * std::log(w);
  }
  if (u.theta0 > 0.0) {
    DistortionParams dp(u.theta0, cfg.k, SimplexWeights(u.d_inner));
    if (!d_shape_ok(dp, cfg.shape_grid)) return kNegInf;
  }
  return lp;
}

std::vector<double> sample_prior(const ModelConfig& cfg, RngStream& rng,
                                 int max_tries) {
  const int k = cfg.k;
  const int dim = free_dimension(cfg);
  for (int t = 0; t < max_tries; ++t) {
    std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
    x[0] = rng.uniform(0.0, 0.9);
    const std::vector<double> f = rng.dirichlet(1.1, static_cast<std::size_t>(k));
    for (int j = 0; j < k - 1; ++j) {
      x[static_cast<std::size_t>(1 + j)] = f[static_cast<std::size_t>(j)];
    }
    if (cfg.ambiguity) {
      x[static_cast<std::size_t>(k)] = rng.uniform(-0.05, 0.55);
      const std::vector<double> d =
          rng.dirichlet(1.1, static_cast<std::size_t>(k - 2));
      for (int j = 0; j < k - 3; ++j) {
        x[static_cast<std::size_t>(k + 1 + j)] = d[static_cast<std::size_t>(j)];
      }
    }
    // Rejection on the same density the sampler targets, so every returned
    // draw has finite prior (this also screens the shape constraint).
    if (log_prior(x, cfg) > kNegInf) return x;
  }
  throw std::runtime_error("sample_prior: no draw satisfied the shape constraint");
}

long BinnedHistogram::total_bids() const {
  long t = 0;
  for (const auto& g : groups) t += g.total;
  return t;
}

BinnedHistogram make_bins(const BidDataset& data, int bins_per_n) {
  if (bins_per_n < 2) {
    throw std::invalid_argument("make_bins: need at least 2 bins");
  }
  std::map<int, std::vector<double>> by_n;
  for (const auto& r : data.records) by_n[r.n].push_back(r.bid);
  if (by_n.empty()) throw std::invalid_argument("make_bins: empty dataset");
  BinnedHistogram hist;
  for (auto& [n, bids] : by_n) {
    if (bids.empty()) throw std::invalid_argument("make_bins: empty group");
    const auto [lo_it, hi_it] = std::minmax_element(bids.begin(), bids.end());
    const double lo = *lo_it - 1e-12;
    const double hi = *hi_it + 1e-12;
    GroupHist g;
    g.n = n;
    g.edges.resize(static_cast<std::size_t>(bins_per_n) + 1);
    const double width = (hi - lo) / bins_per_n;
    for (int d = 0; d <= bins_per_n; ++d) {
      g.edges[static_cast<std::size_t>(d)] = lo + d * width;
    }
    g.edges.back() = hi;
    g.counts.assign(static_cast<std::size_t>(bins_per_n), 0);
    for (double b : bids) {
      int idx = static_cast<int>((b - lo) / width);
      idx = std::clamp(idx, 0, bins_per_n - 1);
      ++g.counts[static_cast<std::size_t>(idx)];
    }
    g.total = static_cast<long>(bids.size());
    hist.groups.push_back(std::move(g));
  }
  return hist;
}

double log_likelihood(std::span<const double> x, const BinnedHistogram& hist,
                      const ModelConfig& cfg) {
  UnpackedParams u;
  if (!unpack_params(x, cfg, u)) return kNegInf;
  Structure s;
  try {
    s = structure_from_params(x, cfg);
  } catch (const std::exception&) {
    return kNegInf;
  }
  double ll = 0.0;
  for (const auto& g : hist.groups) {
    try {
      const BidCurve curve = BidCurve::compute(s, g.n, 0.0, cfg.curve);
      const double bmax = curve.max_bid();
      const std::size_t bins = g.counts.size();
      double prev = 0.0;
      for (std::size_t d = 1; d <= bins; ++d) {
        double cur;
        if (d == bins) {
          cur = 1.0;
        } else {
          const double edge = std::min(g.edges[d], bmax);
          const double v = curve.value_at(edge);
          cur = s.values->cdf(v);
        }
        const double pi = cur - prev;
        const long y = g.counts[d - 1];
        if (y > 0) {
          if (!(pi > 0.0)) return kNegInf;
          ll += y * std::log(pi);
        }
        prev = cur;
      }
    } catch (const std::exception&) {
      return kNegInf;
    }
  }
  return ll;
}

AmSampler::AmSampler(std::function<double(std::span<const double>)> log_target,
                     std::vector<double> init, AmOptions opt, RngStream rng)
    : target_(std::move(log_target)),
      x_(std::move(init)),
      opt_(opt),
      rng_(std::move(rng)),
      dim_(static_cast<int>(x_.size())),
      history_(x_.size()) {
  if (x_.empty()) throw std::invalid_argument("AmSampler: empty initial point");
  logp_ = target_(x_);
  history_.add(x_);
  chol_.assign(x_.size() * x_.size(), 0.0);
  z_.resize(x_.size());
  prop_.resize(x_.size());
}

std::vector<double> AmSampler::proposal_covariance() const {
  const std::size_t d = x_.size();
  std::vector<double> cov(d * d, 0.0);
  if (steps_ + 1 <= opt_.warmup || history_.count() < 2) {
    for (std::size_t i = 0; i < d; ++i) cov[i * d + i] = opt_.initial_scale;
    return cov;
  }
  const double c = 2.4 / static_cast<double>(dim_);
  cov = history_.covariance();
  for (std::size_t i = 0; i < d * d; ++i) cov[i] *= c;
  for (std::size_t i = 0; i < d; ++i) cov[i * d + i] += c * opt_.jitter;
  return cov;
}

void AmSampler::step() {
  const std::size_t d = x_.size();
  chol_ = proposal_covariance();
  if (!cholesky_lower(chol_, d)) {
    // The jittered covariance is positive definite in exact arithmetic; on a
    // numerical failure fall back to the fixed initial proposal.
    std::fill(chol_.begin(), chol_.end(), 0.0);
    const double s = std::sqrt(opt_.initial_scale);
    for (std::size_t i = 0; i < d; ++i) chol_[i * d + i] = s;
  }
  for (std::size_t i = 0; i < d; ++i) z_[i] = rng_.normal();
  for (std::size_t i = 0; i < d; ++i) {
    double t = x_[i];
    for (std::size_t j = 0; j <= i; ++j) t += chol_[i * d + j] * z_[j];
    prop_[i] = t;
  }
  const double lp = target_(prop_);
  const double u = rng_.uniform01();
  if (std::log(u) < lp - logp_) {
    x_ = prop_;
    logp_ = lp;
    ++accepted_;
  }
  ++steps_;
  history_.add(x_);
}

namespace {

// Newey-West long-run variance of one block (Bartlett weights); bandwidth 0
// reduces to the i.i.d. variance.
double block_long_run_variance(std::span<const double> b, bool spectral) {
  const std::size_t L = b.size();
  double m = 0.0;
  for (double v : b) m += v;
  m /= static_cast<double>(L);
  std::size_t bw = 0;
  if (spectral) {
    bw = static_cast<std::size_t>(
        std::floor(4.0 * std::pow(static_cast<double>(L) / 100.0, 2.0 / 9.0)));
    if (bw >= L) bw = L - 1;
  }
  double s = 0.0;
  for (std::size_t lag = 0; lag <= bw; ++lag) {
    double c = 0.0;
    for (std::size_t t = lag; t < L; ++t) {
      c += (b[t] - m) * (b[t - lag] - m);
    }
    c /= static_cast<double>(L);
    const double w =
        lag == 0 ? 1.0 : 2.0 * (1.0 - static_cast<double>(lag) / (bw + 1.0));
    s += w * c;
  }
  return s > 0.0 ? s : 0.0;
}

double block_mean(std::span<const double> b) {
  double m = 0.0;
  for (double v : b) m += v;
  return m / static_cast<double>(b.size());
}

}  // namespace

double geweke_partial_means(std::span<const double> series, bool spectral) {
  if (series.size() < 8) {
    throw std::invalid_argument("geweke_partial_means: need at least 8 points");
  }
  const std::size_t L = series.size() / 4;
  const std::size_t start = series.size() - 4 * L;
  const auto block2 = series.subspan(start + L, L);
  const auto block4 = series.subspan(start + 3 * L, L);
  const double m2 = block_mean(block2);
  const double m4 = block_mean(block4);
  const double s2 = block_long_run_variance(block2, spectral);
  const double s4 = block_long_run_variance(block4, spectral);
  const double var = (s2 + s4) / static_cast<double>(L);
  if (!(var > 0.0)) {
    return std::abs(m2 - m4) <= 1e-14 ? 1.0 : 0.0;
  }
  const double z = (m2 - m4) / std::sqrt(var);
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

SamplerConfig desk_sampler_config() { return SamplerConfig{}; }

SamplerConfig paper_sampler_config() {
  SamplerConfig cfg;
  cfg.first_check = 200000;
  cfg.thin = 100;
  cfg.extra = 10000;
  cfg.cap = 1000000;
  return cfg;
}

Chain run_chain(const std::function<double(std::span<const double>)>& log_target,
                std::vector<double> init, const SamplerConfig& cfg,
                RngStream rng) {
  if (cfg.thin < 1 || cfg.first_check < 1 || cfg.extra < 1 || cfg.cap < 1) {
    throw std::invalid_argument("run_chain: invalid schedule");
  }
  Chain chain;
  chain.dim = static_cast<int>(init.size());
  AmSampler am(log_target, std::move(init), cfg.am, std::move(rng));

  const auto compute_pvalues = [&]() {
    std::vector<double> ps(static_cast<std::size_t>(chain.dim), 0.0);
    std::vector<double> col(chain.draws.size());
    for (int c = 0; c < chain.dim; ++c) {
      for (std::size_t i = 0; i < chain.draws.size(); ++i) {
        col[i] = chain.draws[i][static_cast<std::size_t>(c)];
      }
      ps[static_cast<std::size_t>(c)] =
          geweke_partial_means(col, cfg.spectral_variance);
    }
    return ps;
  };

  long next_check = cfg.first_check;
  for (long iter = 1; iter <= cfg.cap; ++iter) {
    am.step();
    if (iter % cfg.thin == 0) {
      chain.draws.push_back(am.current());
      chain.log_target.push_back(am.current_log_target());
    }
    if (iter == next_check) {
      if (chain.draws.size() >= 8) {
        chain.pvalues = compute_pvalues();
        const double pmin =
            *std::min_element(chain.pvalues.begin(), chain.pvalues.end());
        if (pmin > cfg.p_threshold) {
          chain.converged = true;
          chain.iterations = iter;
          break;
        }
      }
      next_check += cfg.extra;
    }
  }
  if (!chain.converged) {
    chain.iterations = cfg.cap;
    if (chain.draws.size() >= 8) chain.pvalues = compute_pvalues();
  }
  chain.accepted = am.accepted();
  chain.acceptance_rate =
      am.iterations() > 0
          ? static_cast<double>(am.accepted()) / static_cast<double>(am.iterations())
          : 0.0;
  chain.retained_begin = chain.draws.size() - (3 * chain.draws.size()) / 4;
  return chain;
}

Chain run_sampler(const BinnedHistogram& hist, const ModelConfig& model,
                  const SamplerConfig& cfg, RngStream rng) {
  RngStream init_rng = rng.derive({0x696e69});
  RngStream chain_rng = rng.derive({0x636861});
  const auto target = [&hist, &model](std::span<const double> x) {
    const double lp = log_prior(x, model);
    if (!(lp > kNegInf)) return kNegInf;
    const double ll = log_likelihood(x, hist, model);
    if (!(ll > kNegInf)) return kNegInf;
    return lp + ll;
  };
  std::vector<double> init;
  bool found = false;
  for (int t = 0; t < cfg.init_tries; ++t) {
    std::vector<double> cand = sample_prior(model, init_rng);
    if (target(cand) > kNegInf) {
      init = std::move(cand);
      found = true;
      break;
    }
  }
  if (!found) {
    throw std::runtime_error(
        "run_sampler: no finite-posterior initial point found");
  }
  Chain chain = run_chain(target, std::move(init), cfg, std::move(chain_rng));
  chain.model = model;
  return chain;
}

}  // namespace fpa
