#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "fpa/identification.hpp"
#include "fpa/rng.hpp"

namespace {

// Analytic risk-neutral uniform-value law: beta(v) = v (n-1)/n, so the bid
// density is constant n/(n-1) on [0, (n-1)/n].
fpa::BidLaw analytic_uniform_law(int n) {
  fpa::BidLaw law;
  law.n = n;
  law.quantile = [n](double g) { return g * (n - 1) / n; };
  law.density = [n](double) { return static_cast<double>(n) / (n - 1); };
  return law;
}

fpa::Structure make_structure(std::shared_ptr<const fpa::Distribution> values,
                              std::shared_ptr<const fpa::Distortion> distortion,
                              double crra) {
  fpa::Structure s;
  s.values = std::move(values);
  s.distortion = std::move(distortion);
  s.crra = crra;
  return s;
}

}  // namespace

TEST_SUITE("identification") {

TEST_CASE("curvature from boundary densities") {
  CHECK(fpa::solve_crra(2, 5, 2.0, 1.25) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(fpa::solve_crra(2, 5, 1.7, 1.175) == doctest::Approx(0.3).epsilon(1e-13));
  // Invert the slope relation symbolically at theta = 0.5, g2 = 1.
  const double theta = 0.5, g2 = 1.0;
  const double g1 = g2 * (3 - 1.0) / (2 - 1.0) * (2 - theta) / (3 - theta);
  CHECK(fpa::solve_crra(2, 3, g1, g2) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS(fpa::solve_crra(2, 5, 4.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(fpa::solve_crra(5, 2, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fpa::solve_crra(2, 5, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("H recovery on analytic uniform laws is the identity") {
  auto law2 = analytic_uniform_law(2);
  auto law3 = analytic_uniform_law(3);
  for (double g : {0.1, 0.3, 0.5, 0.77, 1.0}) {
    CHECK(fpa::recover_H(g, law2, law3, 0.0) ==
          doctest::Approx(g).epsilon(1e-6));
  }
}

TEST_CASE("H recovery matches D/D' for the exponential distortion") {
  auto s = make_structure(std::make_shared<fpa::UniformDistribution>(),
                          std::make_shared<fpa::ExpDistortion>(2.0), 0.0);
  auto law2 = fpa::exact_bid_law(s, 2);
  auto law3 = fpa::exact_bid_law(s, 3);
  const double e = std::exp(1.0);
  CHECK(fpa::recover_H(0.5, law2, law3, 0.0) ==
        doctest::Approx((e - 1.0) / (2.0 * e)).epsilon(1e-5));
  CHECK(fpa::recover_H(1.0, law2, law3, 0.0) ==
        doctest::Approx((e * e - 1.0) / (2.0 * e * e)).epsilon(1e-5));
}

TEST_CASE("identical laws are a degenerate input") {
  auto law = analytic_uniform_law(2);
  auto same = analytic_uniform_law(2);
  CHECK_THROWS_AS(fpa::recover_H(0.5, law, same, 0.0), std::domain_error);
}

TEST_CASE("distortion from its own H") {
  std::vector<double> gammas(513), hs(513);
  for (int i = 0; i < 513; ++i) {
    gammas[i] = i / 512.0;
    hs[i] = gammas[i];
  }
  fpa::HGrid identity_h(gammas, hs);
  for (double g : {0.2, 0.5, 0.9}) {
    CHECK(fpa::recover_D(identity_h, g) == doctest::Approx(g).epsilon(1e-8));
  }
  CHECK(fpa::recover_D(identity_h, 1.0) == 1.0);
  CHECK(fpa::recover_D(identity_h, 0.0) == 0.0);

  // Exponential rate-2 distortion: H = D/D' = (1 - e^{-2g})/2.
  std::vector<double> he(513);
  for (int i = 0; i < 513; ++i) he[i] = -std::expm1(-2.0 * gammas[i]) / 2.0;
  fpa::HGrid exp_h(gammas, he);
  CHECK(fpa::recover_D(exp_h, 0.5) ==
        doctest::Approx(1.0 / (std::exp(1.0) + 1.0)).epsilon(1e-7));
}

TEST_CASE("scaling H by c recovers the c-th root of the distortion") {
  std::vector<double> gammas(513), hs(513);
  const double c = 2.5;
  for (int i = 0; i < 513; ++i) {
    gammas[i] = i / 512.0;
    hs[i] = c * gammas[i];
  }
  fpa::HGrid h(gammas, hs);
  for (double g : {0.3, 0.6, 0.9}) {
    CHECK(fpa::recover_D(h, g) ==
          doctest::Approx(std::pow(g, 1.0 / c)).epsilon(1e-7));
  }
}

TEST_CASE("nonpositive H is rejected") {
  std::vector<double> gammas{0.0, 0.5, 1.0}, hs{0.0, -0.1, 1.0};
  fpa::HGrid h(gammas, hs);
  CHECK_THROWS_AS(fpa::recover_D(h, 0.25), std::domain_error);
}

TEST_CASE("valuation quantile on the analytic uniform law") {
  auto law = analytic_uniform_law(2);
  for (double g : {0.2, 0.5, 1.0}) {
    CHECK(fpa::recover_valuation_quantile(g, law, 0.0, g) ==
          doctest::Approx(g).epsilon(1e-12));
  }
  CHECK(fpa::recover_valuation_quantile(0.0, law, 0.0, 0.0) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("full recovery round-trips a synthetic structure") {
  auto s = make_structure(std::make_shared<fpa::MixtureDistribution>(),
                          fpa::make_dgp_distortion(fpa::DgpSpec{}), 0.3);
  auto law1 = fpa::exact_bid_law(s, 2, {.knots = 513});
  auto law2 = fpa::exact_bid_law(s, 5, {.knots = 513});
  auto rec = fpa::identify(law1, law2, 513);
  CHECK(std::abs(rec.theta - 0.3) < 1e-3);
  for (std::size_t i = 0; i < rec.gamma_grid.size(); ++i) {
    const double g = rec.gamma_grid[i];
    CHECK(std::abs(rec.d_values[i] - s.distortion->eval(g)) < 1e-3);
    CHECK(std::abs(rec.value_quantiles[i] - s.values->quantile(g)) < 2e-3);
  }
  // CDF-scale comparison of the recovered valuation distribution.
  fpa::GridQuantileDistribution recovered(rec.gamma_grid, rec.value_quantiles);
  for (int i = 0; i <= 100; ++i) {
    const double v = i / 100.0;
    CHECK(std::abs(recovered.cdf(v) - s.values->cdf(v)) < 1e-3);
  }
}

TEST_CASE("equivalent pair: same bid law, different primitives") {
  auto [a, b] = fpa::equivalent_structure_pair();
  auto ca = fpa::BidCurve::compute(a, 2);
  auto cb = fpa::BidCurve::compute(b, 2);
  const double top = std::min(ca.max_bid(), cb.max_bid());
  double sup = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double bid = top * i / 1000.0;
    const double ga = a.values->cdf(ca.value_at(bid));
    const double gb = b.values->cdf(cb.value_at(bid));
    sup = std::max(sup, std::abs(ga - gb));
  }
  CHECK(sup < 1e-6);
  // The primitives genuinely differ: distinct distortions at 0.5 and
  // distinct value supports.
  CHECK(std::abs(a.distortion->eval(0.5) - b.distortion->eval(0.5)) > 0.05);
  CHECK(b.values->upper() < 0.9);
}

TEST_CASE("textbook change of variables equalizes strategies, not bid laws") {
  CHECK(fpa::strategy_equalizing_cdf(0.0) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(fpa::strategy_equalizing_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  fpa::ExpDistortion d1(1.0), d2(2.0);
  double bid_law_gap = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double v = i / 2000.0;
    const double ft = fpa::strategy_equalizing_cdf(v);
    // Pointwise strategy identity: rate-1 distortion of the transformed CDF
    // equals the rate-2 distortion of the uniform CDF.
    CHECK(std::abs(d1.eval(ft) - d2.eval(v)) < 1e-12);
    // But as a change of value distribution it shifts the bid CDF by F(v)-v.
    bid_law_gap = std::max(bid_law_gap, std::abs(ft - v));
  }
  CHECK(bid_law_gap > 0.1);
}

}  // TEST_SUITE
