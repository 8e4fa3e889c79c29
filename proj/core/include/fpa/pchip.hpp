#pragma once

#include <cstddef>
#include <vector>

namespace fpa {

// Piecewise cubic Hermite interpolant with Fritsch-Carlson slopes. Preserves
// monotonicity of the data, C1, exact on the knots.
class PchipCurve {
 public:
  PchipCurve() = default;

  // x must be strictly increasing, same length as y, length >= 2.
  static PchipCurve build(std::vector<double> x, std::vector<double> y);

  double eval(double xq) const;
  double deriv(double xq) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  const std::vector<double>& knots_x() const { return x_; }
  const std::vector<double>& knots_y() const { return y_; }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment(double xq) const;

  std::vector<double> x_, y_, d_;
};

}  // namespace fpa
