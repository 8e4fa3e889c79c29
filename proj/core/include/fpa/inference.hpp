#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/bernstein.hpp"
#include "fpa/rng.hpp"
#include "fpa/stats.hpp"

namespace fpa {

// Parameterization of the estimated model. With ambiguity enabled the free
// coordinate vector is [crra, f_1..f_{k-1}, theta0, d_1..d_{k-3}] (dimension
// 2k - 2); the last weight of each simplex is implied. Without ambiguity the
// distortion block is dropped (dimension k).
struct ModelConfig {
  int k = 6;
  bool ambiguity = true;
  int bins_per_n = 40;
  int shape_grid = 201;
  BidCurveConfig curve{129, 1e-7};
};

int free_dimension(const ModelConfig& cfg);

struct UnpackedParams {
  double crra = 0.0;
  std::vector<double> f_weights;  // size k
  double theta0 = 0.0;            // meaningful only with ambiguity
  std::vector<double> d_inner;    // size k - 2, ambiguity only
};

// Expands free coordinates into full simplex weights. Returns false if the
// vector has the wrong length or any weight (free or implied) is negative.
bool unpack_params(std::span<const double> x, const ModelConfig& cfg,
                   UnpackedParams& out);

// Builds the auction structure implied by a free coordinate vector; throws
// std::invalid_argument if the coordinates are not a valid parameter point.
Structure structure_from_params(std::span<const double> x,
                                const ModelConfig& cfg);

// Log prior density up to a constant: crra uniform on [0, 0.9], theta0
// uniform on [-0.05, 0.55], both weight simplexes carry a Dirichlet(1.1)
// kernel, and positive theta0 additionally requires the distorted CDF to be
// positive and increasing on the interior grid.
double log_prior(std::span<const double> x, const ModelConfig& cfg);

// Draws free coordinates from the prior by rejection on the shape constraint.
std::vector<double> sample_prior(const ModelConfig& cfg, RngStream& rng,
                                 int max_tries = 1000);

struct GroupHist {
  int n = 0;
  std::vector<double> edges;  // size bins + 1, strictly increasing
  std::vector<long> counts;   // size bins
  long total = 0;
};

struct BinnedHistogram {
  std::vector<GroupHist> groups;  // ascending n
  long total_bids() const;
};

// Equal-width bins per bidder count, spanning [min, max] of the observed bids
// with a 1e-12 nudge on both ends so every observation lands strictly inside.
BinnedHistogram make_bins(const BidDataset& data, int bins_per_n);

// Multinomial log likelihood of the binned bids. Interior bin edges map back
// to valuations through the inverse bid strategy and cell probabilities are
// differences of the valuation CDF there; the outer edges are pinned to the
// full support, so the cells partition all probability mass. A cell whose
// bids the model cannot produce (entirely above the maximum bid, or otherwise
// zero probability with a positive count) sends the result to -inf.
double log_likelihood(std::span<const double> x, const BinnedHistogram& hist,
                      const ModelConfig& cfg);

struct AmOptions {
  double initial_scale = 0.001;  // proposal covariance before adaptation
  int warmup = 100;              // steps using the fixed initial covariance
  double jitter = 1e-4;          // diagonal regularization of the adapted cov
};

// Random-walk Metropolis with the Haario-style adaptive proposal: after the
// warmup the proposal covariance is (2.4^2 / dim) * (cov(history) + jitter*I).
class AmSampler {
 public:
  AmSampler(std::function<double(std::span<const double>)> log_target,
            std::vector<double> init, AmOptions opt, RngStream rng);

  void step();
  const std::vector<double>& current() const { return x_; }
  double current_log_target() const { return logp_; }
  long iterations() const { return steps_; }
  long accepted() const { return accepted_; }
  // Dense (row-major) covariance of the next proposal, for diagnostics.
  std::vector<double> proposal_covariance() const;

 private:
  std::function<double(std::span<const double>)> target_;
  std::vector<double> x_;
  double logp_;
  AmOptions opt_;
  RngStream rng_;
  int dim_;
  long steps_ = 0;
  long accepted_ = 0;
  RunningMoments history_;
  std::vector<double> chol_;  // scratch, row-major lower factor
  std::vector<double> z_;     // scratch, standard normals
  std::vector<double> prop_;  // scratch, proposal point
};

// Two-sided p-value of the partial-means drift test: the series is split into
// four equal blocks (dropping the remainder at the front) and the means of
// blocks two and four are compared with a z-test. Block-mean variances come
// from a Newey-West window with Bartlett weights (bandwidth
// floor(4 (L/100)^{2/9})), or from the plain i.i.d. variance when spectral is
// off. A zero-variance comparison gives p = 1 when the block means agree to
// 1e-14 and p = 0 otherwise. Requires at least 8 observations.
double geweke_partial_means(std::span<const double> series,
                            bool spectral = true);

struct SamplerConfig {
  long first_check = 20000;  // iterations before the first convergence check
  long thin = 10;            // record every thin-th state
  long extra = 2000;         // iterations between subsequent checks
  long cap = 200000;         // hard iteration limit
  double p_threshold = 0.01;
  bool spectral_variance = true;  // Newey-West block variances in the check
  int init_tries = 10000;
  AmOptions am;
};

SamplerConfig desk_sampler_config();
SamplerConfig paper_sampler_config();

struct Chain {
  ModelConfig model;
  int dim = 0;
  std::vector<std::vector<double>> draws;  // thinned states, full history
  std::vector<double> log_target;          // matching log posterior values
  bool converged = false;
  long iterations = 0;
  long accepted = 0;
  double acceptance_rate = 0.0;
  std::vector<double> pvalues;        // per coordinate, from the last check
  std::size_t retained_begin = 0;     // first index of the retained block

  std::size_t retained_count() const { return draws.size() - retained_begin; }
};

// Runs the adaptive chain against an arbitrary log target until every
// coordinate passes the drift test or the iteration cap is hit (the chain is
// then flagged non-converged). The retained block is the last 75% of the
// thinned draws.
Chain run_chain(const std::function<double(std::span<const double>)>& log_target,
                std::vector<double> init, const SamplerConfig& cfg,
                RngStream rng);

// Posterior sampler for the binned bid data: target = prior + likelihood,
// initial point drawn from the prior until the target is finite. Throws
// std::runtime_error if no valid initial point is found.
Chain run_sampler(const BinnedHistogram& hist, const ModelConfig& model,
                  const SamplerConfig& cfg, RngStream rng);

}  // namespace fpa
