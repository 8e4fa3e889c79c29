#include "fpa/identification.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "fpa/quadrature.hpp"

namespace fpa {

BidLaw exact_bid_law(const Structure& s, int n, const BidCurveConfig& cfg) {
  auto curve = std::make_shared<const BidCurve>(BidCurve::compute(s, n, 0.0, cfg));
  auto values = s.values;
  BidLaw law;
  law.n = n;
  law.quantile = [curve, values](double gamma) {
    return curve->bid_at(values->quantile(gamma));
  };
  law.density = [curve, values](double b) {
    const double v = curve->value_at(std::min(b, curve->max_bid()));
    return values->pdf(v) / curve->bid_slope(v);
  };
  return law;
}

double solve_crra(int n1, int n2, double g1, double g2) {
  if (!(n1 >= 2 && n2 > n1)) {
    throw std::invalid_argument("solve_crra: need 2 <= n1 < n2");
  }
  if (!(g1 > 0.0 && g2 > 0.0)) {
    throw std::invalid_argument("solve_crra: densities must be positive");
  }
  const double den = (n2 - 1) * g2 - (n1 - 1) * g1;
  if (std::abs(den) < 1e-12) {
    throw std::domain_error("solve_crra: degenerate boundary densities");
  }
  return (n1 * (n2 - 1) * g2 - n2 * (n1 - 1) * g1) / den;
}

double recover_H(double gamma, const BidLaw& law1, const BidLaw& law2,
                 double theta) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("recover_H: gamma outside [0, 1]");
  }
  const double b1 = law1.quantile(gamma);
  const double b2 = law2.quantile(gamma);
  const double bracket = 1.0 / ((law1.n - 1) * law1.density(b1)) -
                         1.0 / ((law2.n - 1) * law2.density(b2));
  if (std::abs(bracket) < 1e-12) {
    throw std::domain_error("recover_H: degenerate law pair");
  }
  return (b2 - b1) / (1.0 - theta) / bracket;
}

HGrid::HGrid(std::vector<double> gammas, std::vector<double> values)
    : curve_(PchipCurve::build(std::move(gammas), std::move(values))) {}

double recover_D(const HGrid& h, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("recover_D: gamma outside [0, 1]");
  }
  if (gamma == 1.0) return 1.0;
  if (gamma == 0.0) return 0.0;
  const auto integrand = [&h](double t) {
    const double ht = h.at(t);
    if (!(ht > 0.0)) {
      throw std::domain_error("recover_D: H must be positive on [gamma, 1]");
    }
    return 1.0 / ht;
  };
  const double integral = integrate_gk15(integrand, gamma, 1.0, 1e-10).value;
  return std::exp(-integral);
}

double recover_valuation_quantile(double gamma, const BidLaw& law, double theta,
                                  double h_gamma) {
  const double b = law.quantile(gamma);
  return b + (1.0 - theta) * h_gamma / ((law.n - 1) * law.density(b));
}

RecoveredPrimitives identify(const BidLaw& law1, const BidLaw& law2,
                             int grid_points) {
  if (grid_points < 8) {
    throw std::invalid_argument("identify: need >= 8 grid points");
  }
  RecoveredPrimitives out;
  const double g1 = law1.density(law1.quantile(0.0));
  const double g2 = law2.density(law2.quantile(0.0));
  out.theta = solve_crra(law1.n, law2.n, g1, g2);

  const int m = grid_points;
  out.gamma_grid.resize(m);
  out.h_values.resize(m);
  for (int i = 0; i < m; ++i) {
    const double g = static_cast<double>(i) / (m - 1);
    out.gamma_grid[i] = g;
    // H(0) = 0 by the shared boundary bid; computed points start just inside.
    out.h_values[i] = (i == 0) ? 0.0 : recover_H(g, law1, law2, out.theta);
  }
  HGrid h(out.gamma_grid, out.h_values);
  out.d_values.resize(m);
  out.value_quantiles.resize(m);
  for (int i = 0; i < m; ++i) {
    out.d_values[i] = recover_D(h, out.gamma_grid[i]);
    out.value_quantiles[i] = recover_valuation_quantile(
        out.gamma_grid[i], law1, out.theta, out.h_values[i]);
  }
  return out;
}

namespace {

// Closed forms for the uniform-value model with the rate-c exponential
// distortion, risk neutral, n = 2: running integral of D and the strategy.
double exp_d_running_integral(double c, double v) {
  return (std::expm1(c * v) / c - v) / std::expm1(c);
}

}  // namespace

double strategy_equalizing_cdf(double v) {
  return std::log1p(std::expm1(2.0 * v) * std::expm1(1.0) /
                    std::expm1(2.0));
}

std::pair<Structure, Structure> equivalent_structure_pair() {
  constexpr double kRateA = 1.0, kRateB = 2.0;
  constexpr int kGridPoints = 4001;
  const int n = 2;

  Structure a;
  a.values = std::make_shared<UniformDistribution>();
  a.distortion = std::make_shared<ExpDistortion>(kRateA);
  a.crra = 0.0;

  // Model B's value quantile comes from inverting model A's bid law under
  // model B's distortion: v_gamma = beta_A(gamma) + H_B(gamma)
  // * beta_A'(gamma) / (n-1), all in closed form.
  const ExpDistortion db(kRateB);
  std::vector<double> gammas(kGridPoints + 1), values(kGridPoints + 1);
  gammas[0] = 0.0;
  values[0] = 0.0;
  for (int i = 1; i <= kGridPoints; ++i) {
    const double g = static_cast<double>(i) / kGridPoints;
    const double da = std::expm1(kRateA * g) / std::expm1(kRateA);
    const double beta = g - exp_d_running_integral(kRateA, g) / da;
    const double beta_slope = (n - 1) * (g - beta) *
                              (kRateA * std::exp(kRateA * g) / std::expm1(kRateA)) /
                              da;
    const double hb = db.eval(g) / db.deriv(g);
    gammas[i] = g;
    values[i] = beta + hb * beta_slope / (n - 1);
  }

  Structure b;
  b.values = std::make_shared<GridQuantileDistribution>(std::move(gammas),
                                                        std::move(values));
  b.distortion = std::make_shared<ExpDistortion>(kRateB);
  b.crra = 0.0;
  return {a, b};
}

}  // namespace fpa
