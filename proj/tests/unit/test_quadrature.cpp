#include <doctest.h>

#include <cmath>

#include "fpa/quadrature.hpp"

TEST_SUITE("quadrature") {

TEST_CASE("single panel is exact on a degree-10 polynomial") {
  auto r = fpa::integrate_gk15([](double x) { return std::pow(x, 10); }, 0.0,
                               1.0, 1e-10);
  CHECK(r.value == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(r.evaluations == 15);
}

TEST_CASE("smooth integrand hits pi to tight tolerance") {
  auto r = fpa::integrate_gk15([](double x) { return 4.0 / (1.0 + x * x); },
                               0.0, 1.0, 1e-12);
  CHECK(std::abs(r.value - 3.14159265358979323846) < 1e-12);
}

TEST_CASE("adaptive refinement handles a log endpoint") {
  auto r = fpa::integrate_gk15([](double x) { return std::log(x); }, 0.0, 1.0,
                               1e-9);
  CHECK(std::abs(r.value - (-1.0)) < 1e-7);
  CHECK(r.evaluations > 15);
}

TEST_CASE("oscillatory integrand") {
  auto r = fpa::integrate_gk15([](double x) { return std::sin(50.0 * x); },
                               0.0, 1.0, 1e-11);
  const double exact = (1.0 - std::cos(50.0)) / 50.0;
  CHECK(std::abs(r.value - exact) < 1e-10);
}

TEST_CASE("empty interval gives zero") {
  auto r = fpa::integrate_gk15([](double) { return 7.0; }, 0.3, 0.3, 1e-10);
  CHECK(r.value == 0.0);
  CHECK(r.evaluations == 0);
}

TEST_CASE("reversed interval integrates with sign") {
  auto r = fpa::integrate_gk15([](double x) { return x; }, 1.0, 0.0, 1e-12);
  CHECK(r.value == doctest::Approx(-0.5).epsilon(1e-13));
}

}  // TEST_SUITE
