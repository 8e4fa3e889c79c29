#include "fpa/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpa {
namespace {

// Shape-preserving three-point estimate for an endpoint slope, as in the
// classic PCHIP endpoint rule.
double endpoint_slope(double h0, double h1, double d0, double d1) {
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (d * d0 <= 0.0) {
    d = 0.0;
  } else if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0)) {
    d = 3.0 * d0;
  }
  return d;
}

}  // namespace

PchipCurve PchipCurve::build(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("PchipCurve: need matching x, y with >= 2 knots");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw std::invalid_argument("PchipCurve: x must be strictly increasing");
    }
  }
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d[0] = endpoint_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = endpoint_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }
  PchipCurve c;
  c.x_ = std::move(x);
  c.y_ = std::move(y);
  c.d_ = std::move(d);
  return c;
}

std::size_t PchipCurve::segment(double xq) const {
  // Clamped extrapolation: evaluate the first/last cubic outside the range.
  auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double PchipCurve::eval(double xq) const {
  const std::size_t i = segment(xq);
  const double h = x_[i + 1] - x_[i];
  const double t = (xq - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double PchipCurve::deriv(double xq) const {
  const std::size_t i = segment(xq);
  const double h = x_[i + 1] - x_[i];
  const double t = (xq - x_[i]) / h;
  const double t2 = t * t;
  const double h00 = 6.0 * t2 - 6.0 * t;
  const double h10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double h01 = -6.0 * t2 + 6.0 * t;
  const double h11 = 3.0 * t2 - 2.0 * t;
  return (h00 * y_[i] + h01 * y_[i + 1]) / h + h10 * d_[i] + h11 * d_[i + 1];
}

}  // namespace fpa
