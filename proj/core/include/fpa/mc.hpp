#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/decision.hpp"
#include "fpa/inference.hpp"
#include "fpa/rng.hpp"

namespace fpa {

// Correct: data carry the calibrated distortion, estimation allows one.
// Redundant: data are distortion-free, estimation still allows one.
// Misspecified: data carry the distortion, estimation forbids one.
enum class Variant { correct, redundant, misspecified };

std::string variant_name(Variant v);

struct ExperimentSpec {
  Variant variant = Variant::correct;
  std::vector<int> n_set = {2, 5};
  int total_bids = 600;  // split equally across the n-set, whole auctions
  int replications = 50;
  std::uint64_t base_seed = 20140815;
  bool paper_scale = false;  // sampler presets for each replication
  // When set, replaces the scale-based sampler presets (test hook).
  std::optional<SamplerConfig> sampler;
};

// Per-n auction counts implied by the equal split; throws
// std::invalid_argument when the split leaves fractional auctions.
std::map<int, int> experiment_design(const ExperimentSpec& spec);

// What one replication's estimation must deliver to the metrics.
struct RepEstimate {
  bool converged = false;
  std::function<double(double)> f_hat;  // value density estimate
  std::function<double(double)> d_hat;  // distortion estimate
  double theta_u_hat = 0.0;             // risk-parameter point estimate
  std::map<int, double> rho_b;          // reserve choice per bidder count
  double neutral_prob = -1.0;           // negative when not applicable
};

using Estimator =
    std::function<RepEstimate(const BidDataset&, const ExperimentSpec&, RngStream)>;

// The production estimator: bin, sample the posterior, summarize. Flags the
// replication non-converged when the chain hits its iteration cap.
RepEstimate estimate_dataset(const BidDataset& data, const ExperimentSpec& spec,
                             RngStream rng);

struct RepRecord {
  int rep = 0;
  bool converged = false;
  double ise_f = 0.0;      // squared L2 distance of f_hat to the truth
  double ise_d = 0.0;      // same for the distortion
  double sq_err_u = 0.0;   // squared error of the risk parameter
  double loss_n2 = 0.0;    // percent revenue lost at the chosen n=2 reserve
  double neutral_prob = -1.0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  int converged_count = 0;
  int excluded_count = 0;  // non-converged replications, recorded in reps
  double mise_f = 0.0;
  double mise_d = 0.0;
  double mse_u = 0.0;
  double loss_n2 = 0.0;
  std::vector<RepRecord> reps;
};

// Squared L2 distance on [0, 1] by the fixed 257-point Simpson rule.
double squared_l2_grid(const std::function<double(double)>& f,
                       const std::function<double(double)>& g);

// Mean squared L2 distance of a family of estimates to the truth.
double mise(const std::vector<std::function<double(double)>>& curves,
            const std::function<double(double)>& truth);

// Runs the replication loop: simulate (per-replication stream derived from
// the base seed), estimate, score against the variant's true primitives.
// Averages cover converged replications only; the excluded ones stay in the
// record list with their flag.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const Estimator& estimator);
ExperimentResult run_experiment(const ExperimentSpec& spec);

// CSV-shaped summary row.
struct MetricsRow {
  std::string variant;
  int total_bids = 0;
  double mise_f = 0.0;
  double mise_d = 0.0;
  double mse_u = 0.0;
  double loss_n2 = 0.0;
};

MetricsRow metrics_row(const ExperimentResult& result);

}  // namespace fpa
