#pragma once

#include <cstddef>
#include <vector>

namespace fpa {

// Nonnegative weights that sum to one. Construction validates; the vector is
// immutable afterwards.
class SimplexWeights {
 public:
  explicit SimplexWeights(std::vector<double> w);
  const std::vector<double>& values() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<double> w_;
};

// Bernstein polynomial density: mixture of the k beta kernels of order k.
struct BpdParams {
  int order;
  SimplexWeights weights;  // size == order
  BpdParams(int order, SimplexWeights weights);
};

// Distortion of a CDF argument: identity minus a scaled interior Bernstein
// bump. theta0 <= 0 switches the distortion off entirely.
struct DistortionParams {
  double theta0;
  int order;
  SimplexWeights inner;  // weights on kernels j = 2 .. order - 1, size order - 2
  DistortionParams(double theta0, int order, SimplexWeights inner);
};

// Density of Beta(j, k - j + 1) at v, i.e. the j-th Bernstein kernel of
// order k, j in 1..k. Zero outside [0, 1].
double beta_basis(int j, int k, double v);
double beta_basis_deriv(int j, int k, double v);
// CDF of Beta(j, k - j + 1): the binomial tail Pr[Bin(k, v) >= j].
double beta_basis_cdf(int j, int k, double v);

double bpd_pdf(const BpdParams& p, double v);
double bpd_cdf(const BpdParams& p, double v);
// Leftmost v with bpd_cdf(v) >= gamma.
double bpd_quantile(const BpdParams& p, double gamma);

double d_eval(const DistortionParams& p, double gamma);
double d_deriv(const DistortionParams& p, double gamma);
// True when D > 0 and D' > 0 on the interior grid gamma_i = i / (n + 1),
// i = 1..n. Identity (theta0 <= 0) always passes.
bool d_shape_ok(const DistortionParams& p, int grid_points = 201);

}  // namespace fpa
