#include "fpa/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpa {

double UniformDistribution::cdf(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return v;
}

double UniformDistribution::quantile(double gamma) const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("quantile: gamma outside [0, 1]");
  }
  return gamma;
}

double MixtureDistribution::pdf(double v) const {
  if (v < 0.0 || v > 1.0) return 0.0;
  const double w = 1.0 - v;
  return 0.2 + 0.8 * 20.0 * v * w * w * w;
}

double MixtureDistribution::cdf(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  const double w = 1.0 - v;
  const double w4 = w * w * w * w;
  // Beta(2,4) CDF: 1 - (1-v)^5 - 5 v (1-v)^4.
  const double beta_cdf = 1.0 - w4 * w - 5.0 * v * w4;
  return 0.2 * v + 0.8 * beta_cdf;
}

double MixtureDistribution::quantile(double gamma) const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("quantile: gamma outside [0, 1]");
  }
  if (gamma == 0.0) return 0.0;
  if (gamma == 1.0) return 1.0;
  return invert_cdf(*this, gamma);
}

GridQuantileDistribution::GridQuantileDistribution(std::vector<double> gammas,
                                                   std::vector<double> values) {
  if (gammas.size() != values.size() || gammas.size() < 2) {
    throw std::invalid_argument("GridQuantileDistribution: bad grid sizes");
  }
  if (gammas.front() != 0.0 || gammas.back() != 1.0) {
    throw std::invalid_argument(
        "GridQuantileDistribution: gamma grid must span [0, 1]");
  }
  lo_ = values.front();
  hi_ = values.back();
  v_of_gamma_ = PchipCurve::build(gammas, values);
  gamma_of_v_ = PchipCurve::build(std::move(values), std::move(gammas));
}

double GridQuantileDistribution::pdf(double v) const {
  if (v < lo_ || v > hi_) return 0.0;
  return std::max(0.0, gamma_of_v_.deriv(v));
}

double GridQuantileDistribution::cdf(double v) const {
  if (v <= lo_) return 0.0;
  if (v >= hi_) return 1.0;
  return std::clamp(gamma_of_v_.eval(v), 0.0, 1.0);
}

double GridQuantileDistribution::quantile(double gamma) const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("quantile: gamma outside [0, 1]");
  }
  return std::clamp(v_of_gamma_.eval(gamma), lo_, hi_);
}

ExpDistortion::ExpDistortion(double c) : c_(c) {
  if (c == 0.0) {
    throw std::invalid_argument("ExpDistortion: rate must be nonzero");
  }
  denom_ = std::expm1(c);
}

double ExpDistortion::eval(double gamma) const {
  return std::expm1(c_ * gamma) / denom_;
}

double ExpDistortion::deriv(double gamma) const {
  return c_ * std::exp(c_ * gamma) / denom_;
}

GridDistortion::GridDistortion(std::vector<double> gammas,
                               std::vector<double> values)
    : curve_(PchipCurve::build(std::move(gammas), std::move(values))) {}

double invert_cdf(const Distribution& dist, double gamma) {
  double lo = dist.lower(), hi = dist.upper();
  if (gamma <= 0.0) return lo;
  if (gamma >= 1.0) return hi;
  // Bisection to locate, Newton to polish where the density is healthy.
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (dist.cdf(mid) >= gamma) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double f = dist.pdf(x);
    if (!(f > 1e-12)) break;
    const double step = (dist.cdf(x) - gamma) / f;
    const double next = x - step;
    if (next <= lo || next >= hi) break;
    x = next;
  }
  return x;
}

}  // namespace fpa
