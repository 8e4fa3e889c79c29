#include "fpa/bernstein.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpa {
namespace {

constexpr int kMaxOrder = 64;

// Pascal-style table of log binomial coefficients; orders above the table
// fall back to lgamma.
const std::vector<double>& log_choose_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t((kMaxOrder + 1) * (kMaxOrder + 1), 0.0);
    for (int n = 0; n <= kMaxOrder; ++n) {
      for (int r = 1; r <= n; ++r) {
        t[n * (kMaxOrder + 1) + r] =
            t[n * (kMaxOrder + 1) + r - 1] + std::log(double(n - r + 1)) -
            std::log(double(r));
      }
    }
    return t;
  }();
  return table;
}

double log_choose(int n, int r) {
  if (n <= kMaxOrder) return log_choose_table()[n * (kMaxOrder + 1) + r];
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

void check_jk(int j, int k) {
  if (k < 1 || j < 1 || j > k) {
    throw std::invalid_argument("beta_basis: need 1 <= j <= k, got j=" +
                                std::to_string(j) + " k=" + std::to_string(k));
  }
}

}  // namespace

SimplexWeights::SimplexWeights(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw std::invalid_argument("SimplexWeights: empty");
  double sum = 0.0;
  for (double wi : w_) {
    if (!(wi >= 0.0)) {
      throw std::invalid_argument("SimplexWeights: negative weight");
    }
    sum += wi;
  }
  if (std::abs(sum - 1.0) > 1e-8) {
    throw std::invalid_argument("SimplexWeights: weights must sum to 1, got " +
                                std::to_string(sum));
  }
}

BpdParams::BpdParams(int order_, SimplexWeights weights_)
    : order(order_), weights(std::move(weights_)) {
  if (order < 1) throw std::invalid_argument("BpdParams: order must be >= 1");
  if (weights.size() != static_cast<std::size_t>(order)) {
    throw std::invalid_argument("BpdParams: need exactly order weights");
  }
}

DistortionParams::DistortionParams(double theta0_, int order_,
                                   SimplexWeights inner_)
    : theta0(theta0_), order(order_), inner(std::move(inner_)) {
  if (order < 3) {
    throw std::invalid_argument("DistortionParams: order must be >= 3");
  }
  if (inner.size() != static_cast<std::size_t>(order - 2)) {
    throw std::invalid_argument("DistortionParams: need order - 2 inner weights");
  }
}

double beta_basis(int j, int k, double v) {
  check_jk(j, k);
  if (v < 0.0 || v > 1.0) return 0.0;
  if (v == 0.0) return j == 1 ? static_cast<double>(k) : 0.0;
  if (v == 1.0) return j == k ? static_cast<double>(k) : 0.0;
  const double logp = std::log(static_cast<double>(k)) + log_choose(k - 1, j - 1) +
                      (j - 1) * std::log(v) + (k - j) * std::log1p(-v);
  return std::exp(logp);
}

double beta_basis_deriv(int j, int k, double v) {
  check_jk(j, k);
  if (v < 0.0 || v > 1.0) return 0.0;
  if (k == 1) return 0.0;
  const double lo = (j >= 2) ? beta_basis(j - 1, k - 1, v) : 0.0;
  const double hi = (j <= k - 1) ? beta_basis(j, k - 1, v) : 0.0;
  return k * (lo - hi);
}

double beta_basis_cdf(int j, int k, double v) {
  check_jk(j, k);
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  // Binomial tail Pr[Bin(k, v) >= j], summed from the top so the smallest
  // terms accumulate first.
  const double lv = std::log(v), l1v = std::log1p(-v);
  double total = 0.0;
  for (int i = k; i >= j; --i) {
    total += std::exp(log_choose(k, i) + i * lv + (k - i) * l1v);
  }
  return total > 1.0 ? 1.0 : total;
}

double bpd_pdf(const BpdParams& p, double v) {
  if (v < 0.0 || v > 1.0) return 0.0;
  const int k = p.order;
  if (v == 0.0) return p.weights[0] * k;
  if (v == 1.0) return p.weights[static_cast<std::size_t>(k - 1)] * k;
  const double lv = std::log(v), l1v = std::log1p(-v);
  const double lk = std::log(static_cast<double>(k));
  double s = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double w = p.weights[static_cast<std::size_t>(j - 1)];
    if (w != 0.0) {
      s += w * std::exp(lk + log_choose(k - 1, j - 1) + (j - 1) * lv +
                        (k - j) * l1v);
    }
  }
  return s;
}

double bpd_cdf(const BpdParams& p, double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  // Sum_j w_j Pr[Bin >= j] = Sum_i Pr[Bin = i] * (cumulative weight up to i),
  // one pass over binomial terms.
  const int k = p.order;
  const double lv = std::log(v), l1v = std::log1p(-v);
  double s = 0.0;
  double cum = 0.0;
  for (int i = 1; i <= k; ++i) {
    cum += p.weights[static_cast<std::size_t>(i - 1)];
    s += cum * std::exp(log_choose(k, i) + i * lv + (k - i) * l1v);
  }
  return s > 1.0 ? 1.0 : s;
}

double bpd_quantile(const BpdParams& p, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("bpd_quantile: gamma outside [0, 1]");
  }
  if (gamma == 0.0) return 0.0;
  // Leftmost v with F(v) >= gamma (F continuous and nondecreasing).
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bpd_cdf(p, mid) >= gamma) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double d_eval(const DistortionParams& p, double gamma) {
  if (p.theta0 <= 0.0) return gamma;
  double bump = 0.0;
  for (int j = 2; j <= p.order - 1; ++j) {
    bump += p.inner[static_cast<std::size_t>(j - 2)] * beta_basis(j, p.order, gamma);
  }
  return gamma - p.theta0 * bump;
}

double d_deriv(const DistortionParams& p, double gamma) {
  if (p.theta0 <= 0.0) return 1.0;
  double bump = 0.0;
  for (int j = 2; j <= p.order - 1; ++j) {
    bump += p.inner[static_cast<std::size_t>(j - 2)] *
            beta_basis_deriv(j, p.order, gamma);
  }
  return 1.0 - p.theta0 * bump;
}

bool d_shape_ok(const DistortionParams& p, int grid_points) {
  if (grid_points < 1) throw std::invalid_argument("d_shape_ok: empty grid");
  if (p.theta0 <= 0.0) return true;
  const double step = 1.0 / (grid_points + 1.0);
  for (int i = 1; i <= grid_points; ++i) {
    const double g = i * step;
    if (!(d_eval(p, g) > 0.0)) return false;
    if (!(d_deriv(p, g) > 0.0)) return false;
  }
  return true;
}

}  // namespace fpa
