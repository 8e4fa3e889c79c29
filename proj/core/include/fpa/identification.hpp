#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/pchip.hpp"

namespace fpa {

// A bid law for one bidder count: the bid quantile function and the bid
// density on the bid support.
struct BidLaw {
  int n = 0;
  std::function<double(double)> quantile;  // gamma in [0, 1] -> bid
  std::function<double(double)> density;   // bid -> g(b | n)
};

// Exact law induced by a structure through its equilibrium strategy; the
// density uses the closed-form slope, so it is accurate at the boundary.
BidLaw exact_bid_law(const Structure& s, int n, const BidCurveConfig& cfg = {});

// Utility curvature from the two boundary bid densities:
// theta = [n1 (n2-1) g2 - n2 (n1-1) g1] / [(n2-1) g2 - (n1-1) g1],
// the unique solution of (n1-1)(n2-theta) g1 = (n1-theta)(n2-1) g2.
// Throws std::domain_error when the denominator nearly vanishes.
double solve_crra(int n1, int n2, double g1, double g2);

// H(gamma) = D(gamma)/D'(gamma) from two bid laws sharing the value quantile.
// Throws std::domain_error when the bracketed difference nearly vanishes.
double recover_H(double gamma, const BidLaw& law1, const BidLaw& law2,
                 double theta);

// Tabulated H with monotone interpolation, for integrating 1/H.
class HGrid {
 public:
  HGrid(std::vector<double> gammas, std::vector<double> values);
  double at(double gamma) const { return curve_.eval(gamma); }
  double lower() const { return curve_.x_front(); }

 private:
  PchipCurve curve_;
};

// D(gamma) = exp(-int_gamma^1 dt / H(t)). Throws std::domain_error if H is
// not positive on the integration range.
double recover_D(const HGrid& h, double gamma);

// v_gamma = b_gamma + (1-theta) H(gamma) / ((n-1) g(b_gamma)).
double recover_valuation_quantile(double gamma, const BidLaw& law, double theta,
                                  double h_gamma);

struct RecoveredPrimitives {
  double theta = 0.0;
  std::vector<double> gamma_grid;
  std::vector<double> h_values;
  std::vector<double> d_values;
  std::vector<double> value_quantiles;
};

// Full closed-form recovery pipeline on exact or pre-smoothed laws.
RecoveredPrimitives identify(const BidLaw& law1, const BidLaw& law2,
                             int grid_points = 513);

// A pair of distinct structures whose n=2 bid distributions coincide: model A
// is uniform values with the rate-1 exponential distortion; model B carries
// the rate-2 distortion and the value quantile constructed so the bid laws
// match. Both risk neutral.
std::pair<Structure, Structure> equivalent_structure_pair();

// The textbook change of variables ln(1 + (e^{2v}-1)(e-1)/(e^2-1)). It
// equalizes bid strategies between the exponential-distortion models (rates
// 2 and 1), but not their bid distributions; see the tests for both facts.
double strategy_equalizing_cdf(double v);

}  // namespace fpa
