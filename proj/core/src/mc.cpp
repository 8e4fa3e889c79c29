#include "fpa/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

#include "fpa/stats.hpp"

namespace fpa {
namespace {

constexpr int kGridPoints = 257;  // fixed Simpson rule on [0, 1]

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::correct: return "correct";
    case Variant::redundant: return "redundant";
    case Variant::misspecified: return "misspecified";
  }
  throw std::invalid_argument("variant_name: unknown variant");
}

std::map<int, int> experiment_design(const ExperimentSpec& spec) {
  if (spec.n_set.empty()) {
    throw std::invalid_argument("experiment_design: empty n-set");
  }
  std::vector<int> ns = spec.n_set;
  std::sort(ns.begin(), ns.end());
  if (std::adjacent_find(ns.begin(), ns.end()) != ns.end()) {
    throw std::invalid_argument("experiment_design: duplicate n");
  }
  const int groups = static_cast<int>(ns.size());
  if (spec.total_bids <= 0 || spec.total_bids % groups != 0) {
    throw std::invalid_argument(
        "experiment_design: total bids must split evenly across the n-set");
  }
  const int per = spec.total_bids / groups;
  std::map<int, int> design;
  for (int n : ns) {
    if (n < 2 || per % n != 0) {
      throw std::invalid_argument(
          "experiment_design: per-n bids must form whole auctions");
    }
    design[n] = per / n;
  }
  return design;
}

double squared_l2_grid(const std::function<double(double)>& f,
                       const std::function<double(double)>& g) {
  const double h = 1.0 / (kGridPoints - 1);
  KahanSum acc;
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = i * h;
    const double d = f(x) - g(x);
    double w = (i == 0 || i == kGridPoints - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc.add(w * d * d);
  }
  return acc.value() * h / 3.0;
}

double mise(const std::vector<std::function<double(double)>>& curves,
            const std::function<double(double)>& truth) {
  if (curves.empty()) throw std::invalid_argument("mise: no curves");
  KahanSum acc;
  for (const auto& c : curves) acc.add(squared_l2_grid(c, truth));
  return acc.value() / static_cast<double>(curves.size());
}

RepEstimate estimate_dataset(const BidDataset& data, const ExperimentSpec& spec,
                             RngStream rng) {
  ModelConfig model;
  model.ambiguity = spec.variant != Variant::misspecified;
  const BinnedHistogram hist = make_bins(data, model.bins_per_n);
  const SamplerConfig sc =
      spec.sampler ? *spec.sampler
                   : (spec.paper_scale ? paper_sampler_config()
                                       : desk_sampler_config());
  Chain chain = run_sampler(hist, model, sc, std::move(rng));
  RepEstimate e;
  if (!chain.converged) return e;
  auto ch = std::make_shared<const Chain>(std::move(chain));
  e.converged = true;
  e.f_hat = [ch](double v) { return predictive_density(*ch, v); };
  if (model.ambiguity) {
    e.d_hat = [ch](double g) { return predictive_d(*ch, g); };
    e.neutral_prob = ambiguity_neutral_prob(*ch);
  } else {
    e.d_hat = [](double g) { return g; };
  }
  {
    double m = 0.0;
    for (std::size_t i = ch->retained_begin; i < ch->draws.size(); ++i) {
      m += ch->draws[i][0];
    }
    e.theta_u_hat = m / static_cast<double>(ch->retained_count());
  }
  RevenueConfig rcfg;
  rcfg.curve = model.curve;
  rcfg.quad_tol = 1e-7;
  // The reserve choice needs only the draw-averaged curve; an even stride
  // through the retained block caps the per-replication cost.
  constexpr int kActionDraws = 500;
  Chain action_chain;
  action_chain.model = ch->model;
  action_chain.dim = ch->dim;
  action_chain.converged = true;
  for (const auto& row : chain_draws(*ch, kActionDraws)) {
    action_chain.draws.push_back(row);
    action_chain.log_target.push_back(0.0);
  }
  for (int n : spec.n_set) e.rho_b[n] = bayes_action(action_chain, n, rcfg).rho;
  return e;
}

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const Estimator& estimator) {
  if (spec.replications < 1) {
    throw std::invalid_argument("run_experiment: need at least 1 replication");
  }
  const auto design = experiment_design(spec);
  if (design.find(2) == design.end()) {
    throw std::invalid_argument(
        "run_experiment: the n-set must include 2 for the loss column");
  }

  DgpSpec proto;
  proto.d_kind = spec.variant == Variant::redundant ? DistortionKind::identity
                                                    : DistortionKind::calibrated;
  proto.crra = 0.3;
  proto.design = design;
  const Structure truth = dgp_structure(proto);
  const auto f0 = [values = truth.values](double v) { return values->pdf(v); };
  const auto d0 = [dist = truth.distortion](double g) { return dist->eval(g); };
  const RevenueCurve truth_rev2 = revenue_curve(truth, 2);

  ExperimentResult result;
  result.spec = spec;
  KahanSum acc_f, acc_d, acc_u, acc_loss;
  for (int m = 1; m <= spec.replications; ++m) {
    DgpSpec d = proto;
    d.seed = spec.base_seed + static_cast<std::uint64_t>(m);
    const BidDataset data = simulate_dataset(d);
    RepEstimate e = estimator(
        data, spec, RngStream(spec.base_seed, {0x6d63, static_cast<std::uint64_t>(m)}));
    RepRecord rec;
    rec.rep = m;
    rec.converged = e.converged;
    if (e.converged) {
      rec.ise_f = squared_l2_grid(e.f_hat, f0);
      rec.ise_d = squared_l2_grid(e.d_hat, d0);
      const double du = e.theta_u_hat - proto.crra;
      rec.sq_err_u = du * du;
      rec.loss_n2 = revenue_loss_percent(truth_rev2, e.rho_b.at(2));
      rec.neutral_prob = e.neutral_prob;
      acc_f.add(rec.ise_f);
      acc_d.add(rec.ise_d);
      acc_u.add(rec.sq_err_u);
      acc_loss.add(rec.loss_n2);
      ++result.converged_count;
    } else {
      ++result.excluded_count;
    }
    result.reps.push_back(rec);
  }
  if (result.converged_count > 0) {
    const double inv = 1.0 / result.converged_count;
    result.mise_f = acc_f.value() * inv;
    result.mise_d = acc_d.value() * inv;
    result.mse_u = acc_u.value() * inv;
    result.loss_n2 = acc_loss.value() * inv;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    result.mise_f = result.mise_d = result.mse_u = result.loss_n2 = nan;
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  return run_experiment(spec, [](const BidDataset& data, const ExperimentSpec& s,
                                 RngStream rng) {
    return estimate_dataset(data, s, std::move(rng));
  });
}

MetricsRow metrics_row(const ExperimentResult& result) {
  MetricsRow row;
  row.variant = variant_name(result.spec.variant);
  row.total_bids = result.spec.total_bids;
  row.mise_f = result.mise_f;
  row.mise_d = result.mise_d;
  row.mse_u = result.mse_u;
  row.loss_n2 = result.loss_n2;
  return row;
}

}  // namespace fpa
