#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "fpa/distributions.hpp"
#include "fpa/pchip.hpp"
#include "fpa/rng.hpp"

namespace fpa {

// A model structure: private-value distribution, distortion applied to its
// CDF when bidders evaluate winning odds, and CRRA utility curvature.
struct Structure {
  std::shared_ptr<const Distribution> values;
  std::shared_ptr<const Distortion> distortion;
  double crra = 0.0;
};

// Throws std::invalid_argument on null members or crra outside [0, 1).
void validate_structure(const Structure& s);

struct BidCurveConfig {
  int knots = 257;         // Chebyshev-spaced value knots
  double quad_tol = 1e-9;  // per-panel quadrature tolerance
};

// Equilibrium bid strategy for n symmetric bidders, tabulated on value knots
// and interpolated monotonically in both directions.
class BidCurve {
 public:
  // beta(v) = v - int_r^v [D(F(t))/D(F(v))]^a dt with a = (n-1)/(1-crra),
  // computed by a carry recursion over panels so the ratio never overflows.
  static BidCurve compute(const Structure& s, int n, double reserve = 0.0,
                          const BidCurveConfig& cfg = {});

  double bid_at(double v) const;
  // Inverse strategy; throws std::domain_error above the maximum bid.
  double value_at(double b) const;
  // Exact slope from the first-order condition, with the boundary branches
  // (n-1)/(n-crra) at an unbinding lower end and 0 at a binding reserve.
  double bid_slope(double v) const;
  double shading_at(double v) const { return v - bid_at(v); }
  // Strategy under a higher reserve rho >= reserve(), obtained in closed form
  // from this curve: beta_rho(v) = beta(v) + [D(F(rho))/D(F(v))]^a * T(rho).
  double bid_at_reserve(double rho, double v) const;

  double max_bid() const { return knots_b_.back(); }
  double start() const { return knots_v_.front(); }
  double reserve() const { return reserve_; }
  int bidders() const { return n_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& knots_v() const { return knots_v_; }
  const std::vector<double>& knots_b() const { return knots_b_; }
  const Structure& structure() const { return s_; }

 private:
  BidCurve() = default;
  double log_distorted_cdf(double v) const;

  Structure s_;
  int n_ = 0;
  double reserve_ = 0.0;
  double alpha_ = 0.0;
  std::vector<double> knots_v_, knots_b_;
  PchipCurve bid_of_v_, v_of_bid_;
};

// Highest equilibrium bid beta(upper) at zero reserve.
double max_bid(const Structure& s, int n, const BidCurveConfig& cfg = {});

struct BidRecord {
  int auction_id = 0;
  int n = 0;
  int bidder_index = 0;  // 1-based within the auction
  double bid = 0.0;
};

struct BidDataset {
  std::vector<BidRecord> records;
  std::map<int, int> design;  // n -> auction count

  std::map<int, std::vector<double>> bids_by_n() const;
  int total_bids() const;
  // Throws std::invalid_argument if any auction_id does not carry exactly n
  // bids or a bid leaves [0, 1].
  void validate() const;
};

enum class DistortionKind { calibrated, exponential, identity };

// Data-generating process for synthetic studies. Values come from the
// 0.2 uniform + 0.8 Beta(2,4) mixture unless uniform_values is set.
struct DgpSpec {
  DistortionKind d_kind = DistortionKind::calibrated;
  double exp_rate = 2.0;  // used when d_kind == exponential
  double crra = 0.3;
  std::map<int, int> design = {{2, 150}, {5, 60}};
  std::uint64_t seed = 20140815;
  bool uniform_values = false;
};

// The calibrated distortion used by the default DGP.
std::shared_ptr<const Distortion> make_dgp_distortion(const DgpSpec& spec);
Structure dgp_structure(const DgpSpec& spec);

// i.i.d. values per auction (component indicator, then component draw),
// mapped through the equilibrium strategy. One derived RNG stream per
// auction, so the draw order never couples auctions.
BidDataset simulate_dataset(const DgpSpec& spec, const BidCurveConfig& cfg = {});

}  // namespace fpa
