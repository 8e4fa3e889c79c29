#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "fpa/pchip.hpp"

TEST_SUITE("pchip") {

TEST_CASE("matches reference values on equally spaced data") {
  auto c = fpa::PchipCurve::build({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 1.0, 2.0});
  // Frozen from an independent reference implementation.
  CHECK(c.eval(0.5) == doctest::Approx(0.6875).epsilon(1e-14));
  CHECK(c.deriv(0.5) == doctest::Approx(1.125).epsilon(1e-14));
  CHECK(c.eval(1.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.deriv(1.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(c.eval(2.25) == doctest::Approx(1.0859375).epsilon(1e-14));
  CHECK(c.deriv(2.25) == doctest::Approx(0.65625).epsilon(1e-14));
  CHECK(c.deriv(0.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(c.deriv(3.0) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("matches reference values on irregular spacing") {
  auto c = fpa::PchipCurve::build({0.0, 0.5, 2.0, 3.0, 10.0},
                                  {1.0, 2.0, 0.5, 0.5, 7.0});
  CHECK(c.eval(0.25) == doctest::Approx(1.671875).epsilon(1e-14));
  CHECK(c.deriv(0.25) == doctest::Approx(2.3125).epsilon(1e-14));
  CHECK(c.eval(1.0) == doctest::Approx(1.6111111111111112).epsilon(1e-13));
  CHECK(c.deriv(1.0) == doctest::Approx(-1.3333333333333335).epsilon(1e-13));
  CHECK(c.eval(2.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.eval(6.0) == doctest::Approx(1.7791545189504374).epsilon(1e-13));
  CHECK(c.deriv(6.0) == doctest::Approx(0.83145043731778423).epsilon(1e-12));
}

TEST_CASE("interpolates the knots exactly") {
  std::vector<double> x{0.0, 0.3, 0.7, 1.1, 2.0};
  std::vector<double> y{-1.0, 0.2, 0.1, 4.0, 4.5};
  auto c = fpa::PchipCurve::build(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(c.eval(x[i]) == doctest::Approx(y[i]).epsilon(1e-15));
  }
}

TEST_CASE("preserves monotone data between knots") {
  std::vector<double> x{0.0, 0.1, 0.4, 0.45, 0.9, 1.0};
  std::vector<double> y{0.0, 0.05, 0.5, 0.55, 0.98, 1.0};
  auto c = fpa::PchipCurve::build(x, y);
  double prev = c.eval(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double v = c.eval(i / 1000.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  CHECK(c.eval(0.0) == doctest::Approx(0.0));
  CHECK(c.eval(1.0) == doctest::Approx(1.0));
}

TEST_CASE("two points reduce to a line") {
  auto c = fpa::PchipCurve::build({1.0, 3.0}, {2.0, 8.0});
  CHECK(c.eval(2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(c.deriv(1.7) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("derivative agrees with finite differences inside panels") {
  auto c = fpa::PchipCurve::build({0.0, 0.4, 1.0, 1.5}, {0.0, 1.0, 1.2, 3.0});
  const double h = 1e-6;
  for (double xq : {0.2, 0.5, 0.9, 1.2}) {
    const double fd = (c.eval(xq + h) - c.eval(xq - h)) / (2.0 * h);
    CHECK(c.deriv(xq) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("rejects invalid knot data") {
  CHECK_THROWS_AS(fpa::PchipCurve::build({0.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(fpa::PchipCurve::build({0.0, 0.0}, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fpa::PchipCurve::build({0.0, 1.0}, {1.0}),
                  std::invalid_argument);
}

}  // TEST_SUITE
