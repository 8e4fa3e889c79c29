#include "fpa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpa {

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("sample_sd: need >= 2 values");
  const double m = mean(v);
  KahanSum s;
  for (double x : v) s.add((x - m) * (x - m));
  return std::sqrt(s.value() / static_cast<double>(v.size() - 1));
}

double skewness(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("skewness: need >= 2 values");
  const double m = mean(v);
  KahanSum s2, s3;
  for (double x : v) {
    const double d = x - m;
    s2.add(d * d);
    s3.add(d * d * d);
  }
  const double n = static_cast<double>(v.size());
  const double m2 = s2.value() / n;
  const double m3 = s3.value() / n;
  if (m2 <= 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

double percentile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("percentile: empty input");
  if (!(p >= 0.0 && p <= 100.0)) {
    throw std::invalid_argument("percentile: p outside [0, 100]");
  }
  std::sort(v.begin(), v.end());
  const double pos = p / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

RunningMoments::RunningMoments(std::size_t dim)
    : mean_(dim, 0.0), m2_(dim * dim, 0.0) {
  if (dim == 0) throw std::invalid_argument("RunningMoments: dim must be > 0");
}

void RunningMoments::add(std::span<const double> x) {
  const std::size_t d = mean_.size();
  if (x.size() != d) throw std::invalid_argument("RunningMoments: bad width");
  ++n_;
  std::vector<double> delta(d);
  for (std::size_t i = 0; i < d; ++i) {
    delta[i] = x[i] - mean_[i];
    mean_[i] += delta[i] / static_cast<double>(n_);
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double post_i = x[i] - mean_[i];
    for (std::size_t j = 0; j < d; ++j) {
      m2_[i * d + j] += post_i * delta[j];
    }
  }
}

std::vector<double> RunningMoments::covariance() const {
  if (n_ < 2) throw std::logic_error("RunningMoments: need >= 2 samples");
  const std::size_t d = mean_.size();
  std::vector<double> cov(m2_);
  const double denom = static_cast<double>(n_ - 1);
  for (auto& c : cov) c /= denom;
  // Enforce exact symmetry against drift from the asymmetric update.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double s = 0.5 * (cov[i * d + j] + cov[j * d + i]);
      cov[i * d + j] = cov[j * d + i] = s;
    }
  }
  return cov;
}

bool cholesky_lower(std::vector<double>& a, std::size_t dim) {
  if (a.size() != dim * dim) {
    throw std::invalid_argument("cholesky_lower: size mismatch");
  }
  for (std::size_t j = 0; j < dim; ++j) {
    double diag = a[j * dim + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * dim + k] * a[j * dim + k];
    if (!(diag > 0.0)) return false;
    const double l = std::sqrt(diag);
    a[j * dim + j] = l;
    for (std::size_t i = j + 1; i < dim; ++i) {
      double s = a[i * dim + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * dim + k] * a[j * dim + k];
      a[i * dim + j] = s / l;
    }
    for (std::size_t k = j + 1; k < dim; ++k) a[j * dim + k] = 0.0;
  }
  return true;
}

}  // namespace fpa
