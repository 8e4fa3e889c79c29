#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fpa {

// Compensated accumulator; used wherever a reduction must not depend on
// incidental regrouping by the optimizer.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);  // n - 1 denominator
// Population skewness m3 / m2^(3/2).
double skewness(std::span<const double> v);
// Linear-interpolation percentile of a copy of v; p in [0, 100].
double percentile(std::vector<double> v, double p);

// Streaming mean/covariance over vectors (Welford). Covariance uses the
// n - 1 denominator.
class RunningMoments {
 public:
  explicit RunningMoments(std::size_t dim);
  void add(std::span<const double> x);
  std::size_t count() const { return n_; }
  std::size_t dim() const { return mean_.size(); }
  const std::vector<double>& mean_vector() const { return mean_; }
  // Row-major dim x dim sample covariance; requires count() >= 2.
  std::vector<double> covariance() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;  // sum of outer-product deviations, row-major
};

// Cholesky factor (lower, row-major) of a symmetric positive-definite matrix.
// Returns false if the matrix is not positive definite.
bool cholesky_lower(std::vector<double>& a, std::size_t dim);

}  // namespace fpa
