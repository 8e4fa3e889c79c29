#include <charconv>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpa/io.hpp"
#include "fpa/stats.hpp"

using nlohmann::json;

namespace {

using namespace fpa;

constexpr int kExitInternal = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitMissingFile = 3;
constexpr int kExitNonConverged = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.find(it.key()) == allowed.end()) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const char* key, double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v->get<double>();
}

long get_long(const json& obj, const char* key, long fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) {
    throw ConfigError(std::string(key) + " must be an integer");
  }
  return v->get<long>();
}

int get_int(const json& obj, const char* key, int fallback) {
  return static_cast<int>(get_long(obj, key, fallback));
}

bool get_bool(const json& obj, const char* key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(std::string(key) + " must be a bool");
  return v->get<bool>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(std::string(key) + " must be a string");
  return v->get<std::string>();
}

std::string get_required_string(const json& obj, const char* key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(std::string("missing required key '") + key + "'");
  if (!v->is_string()) throw ConfigError(std::string(key) + " must be a string");
  return v->get<std::string>();
}

std::uint64_t get_u64(const json& obj, const char* key, std::uint64_t fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (v->is_number_unsigned()) return v->get<std::uint64_t>();
  if (v->is_number_integer() && v->get<long long>() >= 0) {
    return static_cast<std::uint64_t>(v->get<long long>());
  }
  throw ConfigError(std::string(key) + " must be a nonnegative integer");
}

std::vector<int> get_int_list(const json& obj, const char* key,
                              std::vector<int> fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_array() || v->empty()) {
    throw ConfigError(std::string(key) + " must be a nonempty array");
  }
  std::vector<int> out;
  for (const auto& item : *v) {
    if (!item.is_number_integer()) {
      throw ConfigError(std::string(key) + " entries must be integers");
    }
    out.push_back(item.get<int>());
  }
  return out;
}

// Run-wide settings shared by every command.
struct Common {
  std::uint64_t seed = 20140815;
  std::string out;
  std::string scale = "desk";
  Provenance prov;
};

Common resolve_common(const json& cfg) {
  Common c;
  c.seed = get_u64(cfg, "seed", c.seed);
  c.out = get_string(cfg, "out", "");
  if (c.out.empty()) {
    throw ConfigError("no output directory: set 'out' in the config or --out");
  }
  c.scale = get_string(cfg, "scale", c.scale);
  if (c.scale != "desk" && c.scale != "paper") {
    throw ConfigError("scale must be 'desk' or 'paper'");
  }
  c.prov.config_hash = hash_hex(fnv1a64(cfg.dump()));
  c.prov.seed = c.seed;
  return c;
}

std::map<int, int> parse_design(const json& obj) {
  if (!obj.is_object() || obj.empty()) {
    throw ConfigError("design must be an object of n -> auction count");
  }
  std::map<int, int> design;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    int n = 0;
    const std::string& key = it.key();
    const auto r = std::from_chars(key.data(), key.data() + key.size(), n);
    if (r.ec != std::errc{} || r.ptr != key.data() + key.size() || n < 2) {
      throw ConfigError("bad design key '" + key + "'");
    }
    if (!it.value().is_number_integer() || it.value().get<int>() < 1) {
      throw ConfigError("design count for n=" + key +
                        " must be a positive integer");
    }
    design[n] = it.value().get<int>();
  }
  return design;
}

ModelConfig parse_model(const json& cfg) {
  ModelConfig model;
  const json* m = find(cfg, "model");
  if (!m) return model;
  require_keys(*m, "model", {"k", "ambiguity", "bins_per_n"});
  model.k = get_int(*m, "k", model.k);
  model.ambiguity = get_bool(*m, "ambiguity", model.ambiguity);
  model.bins_per_n = get_int(*m, "bins_per_n", model.bins_per_n);
  if (model.k < 3 || model.k > 32) throw ConfigError("model.k out of range");
  if (model.bins_per_n < 2) throw ConfigError("model.bins_per_n out of range");
  return model;
}

SamplerConfig parse_sampler(const json& cfg, const std::string& scale) {
  SamplerConfig sc =
      scale == "paper" ? paper_sampler_config() : desk_sampler_config();
  const json* s = find(cfg, "sampler");
  if (!s) return sc;
  require_keys(*s, "sampler",
               {"first_check", "thin", "extra", "cap", "p_threshold",
                "spectral_variance", "init_tries"});
  sc.first_check = get_long(*s, "first_check", sc.first_check);
  sc.thin = get_long(*s, "thin", sc.thin);
  sc.extra = get_long(*s, "extra", sc.extra);
  sc.cap = get_long(*s, "cap", sc.cap);
  sc.p_threshold = get_number(*s, "p_threshold", sc.p_threshold);
  sc.spectral_variance = get_bool(*s, "spectral_variance", sc.spectral_variance);
  sc.init_tries = get_int(*s, "init_tries", sc.init_tries);
  if (sc.first_check < 1 || sc.thin < 1 || sc.extra < 1 ||
      sc.cap < sc.first_check) {
    throw ConfigError("sampler schedule out of range");
  }
  return sc;
}

json action_to_json(const BayesAction& a) {
  json j;
  j["n"] = a.n;
  j["rho"] = a.rho;
  j["revenue"] = a.revenue;
  j["lo"] = a.lo;
  j["hi"] = a.hi;
  j["draws_used"] = a.draws_used;
  j["draws_failed"] = a.draws_failed;
  j["grid"] = a.grid;
  j["mean"] = a.mean;
  j["band_lo"] = a.band_lo;
  j["band_hi"] = a.band_hi;
  return j;
}

std::string revenue_file_name(int n) {
  return "revenue_n" + std::to_string(n) + ".csv";
}

void write_action_csvs(const std::vector<BayesAction>& actions,
                       const std::string& out, const Provenance& prov) {
  for (const auto& a : actions) {
    write_file(out + "/" + revenue_file_name(a.n), csv_revenue(a, prov));
  }
}

int cmd_simulate(const json& cfg, const Common& c) {
  require_keys(cfg, "config", {"seed", "out", "scale", "dgp"});
  DgpSpec dgp;
  dgp.seed = c.seed;
  if (const json* d = find(cfg, "dgp")) {
    require_keys(*d, "dgp",
                 {"distortion", "exp_rate", "crra", "design", "uniform_values"});
    const std::string kind = get_string(*d, "distortion", "calibrated");
    if (kind == "calibrated") {
      dgp.d_kind = DistortionKind::calibrated;
    } else if (kind == "exponential") {
      dgp.d_kind = DistortionKind::exponential;
    } else if (kind == "identity") {
      dgp.d_kind = DistortionKind::identity;
    } else {
      throw ConfigError("unknown distortion '" + kind + "'");
    }
    dgp.exp_rate = get_number(*d, "exp_rate", dgp.exp_rate);
    dgp.crra = get_number(*d, "crra", dgp.crra);
    dgp.uniform_values = get_bool(*d, "uniform_values", dgp.uniform_values);
    if (const json* des = find(*d, "design")) dgp.design = parse_design(*des);
    if (dgp.crra < 0.0 || dgp.crra >= 1.0) {
      throw ConfigError("dgp.crra must lie in [0, 1)");
    }
    if (dgp.exp_rate <= 0.0) throw ConfigError("dgp.exp_rate must be positive");
  }
  const BidDataset data = simulate_dataset(dgp);
  write_file(c.out + "/bids.csv", csv_dataset(data, c.prov));
  return 0;
}

int cmd_estimate(const json& cfg, const Common& c) {
  require_keys(cfg, "config",
               {"seed", "out", "scale", "data", "model", "sampler", "ns",
                "scatter_reps"});
  const std::string data_path = get_required_string(cfg, "data");
  const BidDataset data = parse_dataset_csv(read_file(data_path));
  const ModelConfig model = parse_model(cfg);
  const SamplerConfig sc = parse_sampler(cfg, c.scale);
  const int scatter_reps = get_int(cfg, "scatter_reps", 200);
  if (scatter_reps < 1) throw ConfigError("scatter_reps must be positive");

  std::vector<int> ns;
  for (const auto& [n, count] : data.design) ns.push_back(n);
  ns = get_int_list(cfg, "ns", ns);

  const BinnedHistogram hist = make_bins(data, model.bins_per_n);
  const Chain chain =
      run_sampler(hist, model, sc, RngStream(c.seed, {0x657374}));
  if (!chain.converged) {
    json err;
    err["code"] = kExitNonConverged;
    err["error"] = "estimation did not converge";
    err["iterations"] = chain.iterations;
    err["acceptance_rate"] = chain.acceptance_rate;
    err["pvalues"] = chain.pvalues;
    err["config_hash"] = c.prov.config_hash;
    err["seed"] = c.seed;
    write_file(c.out + "/error.json", err.dump(2) + "\n");
    throw NonConvergedError("estimation did not converge after " +
                            std::to_string(chain.iterations) + " iterations");
  }

  const PosteriorSummary summary = summarize_posterior(chain, ns);
  const std::vector<CheckTriple> scatter =
      predictive_check(chain_draws(chain, scatter_reps), model, data.design,
                       RngStream(c.seed, {0x7363}), model.curve);

  json out;
  out["config_hash"] = c.prov.config_hash;
  out["seed"] = c.seed;
  out["crra"] = {{"mean", summary.crra_mean}, {"sd", summary.crra_sd}};
  out["ambiguity"] = summary.has_ambiguity;
  if (summary.has_ambiguity) out["neutral_prob"] = summary.neutral_prob;
  out["f"] = {{"grid", summary.v_grid},
              {"mean", summary.f_mean},
              {"lo", summary.f_lo},
              {"hi", summary.f_hi}};
  if (summary.has_ambiguity) {
    out["d"] = {{"grid", summary.g_grid},
                {"mean", summary.d_mean},
                {"lo", summary.d_lo},
                {"hi", summary.d_hi}};
  }
  out["actions"] = json::array();
  for (const auto& a : summary.actions) out["actions"].push_back(action_to_json(a));
  out["observed"] = json::array();
  for (const auto& [n, bids] : data.bids_by_n()) {
    out["observed"].push_back({{"n", n},
                               {"mean", mean(bids)},
                               {"sd", sample_sd(bids)},
                               {"skew", skewness(bids)}});
  }
  out["chain"] = {{"iterations", chain.iterations},
                  {"accepted", chain.accepted},
                  {"acceptance_rate", chain.acceptance_rate},
                  {"draws", chain.draws.size()},
                  {"retained", chain.retained_count()},
                  {"dim", chain.dim},
                  {"pvalues", chain.pvalues}};

  write_file(c.out + "/chain.csv", csv_chain(chain, c.prov));
  write_file(c.out + "/posterior.json", out.dump(2) + "\n");
  write_file(c.out + "/predictive_scatter.csv", csv_scatter(scatter, c.prov));
  write_action_csvs(summary.actions, c.out, c.prov);
  return 0;
}

int cmd_identify(const json& cfg, const Common& c) {
  require_keys(cfg, "config",
               {"seed", "out", "scale", "law1", "law2", "grid_points"});
  auto load_law = [&cfg](const char* key) {
    const json* block = find(cfg, key);
    if (!block) throw ConfigError(std::string("missing required key '") + key + "'");
    require_keys(*block, key, {"path", "n"});
    const std::string path = get_required_string(*block, "path");
    const int n = get_int(*block, "n", 0);
    if (n < 2) throw ConfigError(std::string(key) + ".n must be at least 2");
    return law_from_table(parse_bid_law_csv(read_file(path), n));
  };
  const BidLaw law1 = load_law("law1");
  const BidLaw law2 = load_law("law2");
  if (law1.n == law2.n) {
    throw ConfigError("law1 and law2 must have different bidder counts");
  }
  const int grid_points = get_int(cfg, "grid_points", 513);
  if (grid_points < 16) throw ConfigError("grid_points out of range");

  const RecoveredPrimitives r = identify(law1, law2, grid_points);
  json out;
  out["config_hash"] = c.prov.config_hash;
  out["seed"] = c.seed;
  out["theta"] = r.theta;
  out["gamma"] = r.gamma_grid;
  out["h"] = r.h_values;
  out["d"] = r.d_values;
  out["value_quantile"] = r.value_quantiles;
  write_file(c.out + "/identified.json", out.dump(2) + "\n");
  return 0;
}

int cmd_decide(const json& cfg, const Common& c) {
  require_keys(cfg, "config", {"seed", "out", "scale", "chain", "ns"});
  const std::string chain_path = get_required_string(cfg, "chain");
  const Chain chain = parse_chain_csv(read_file(chain_path));
  const std::vector<int> ns = get_int_list(cfg, "ns", {2, 5});

  json out;
  out["config_hash"] = c.prov.config_hash;
  out["seed"] = c.seed;
  out["actions"] = json::array();
  std::vector<BayesAction> actions;
  for (int n : ns) {
    if (n < 2) throw ConfigError("ns entries must be at least 2");
    actions.push_back(bayes_action(chain, n));
    out["actions"].push_back(action_to_json(actions.back()));
  }
  if (chain.model.ambiguity) {
    out["neutral_prob"] = ambiguity_neutral_prob(chain);
  }
  write_file(c.out + "/actions.json", out.dump(2) + "\n");
  write_action_csvs(actions, c.out, c.prov);
  return 0;
}

int cmd_mc(const json& cfg, const Common& c) {
  require_keys(cfg, "config",
               {"seed", "out", "scale", "variants", "bid_sizes", "n_set",
                "replications", "sampler"});
  std::vector<Variant> variants = {Variant::correct, Variant::redundant,
                                   Variant::misspecified};
  if (const json* v = find(cfg, "variants")) {
    if (!v->is_array() || v->empty()) {
      throw ConfigError("variants must be a nonempty array");
    }
    variants.clear();
    for (const auto& item : *v) {
      const std::string name = item.is_string() ? item.get<std::string>() : "";
      if (name == "correct") {
        variants.push_back(Variant::correct);
      } else if (name == "redundant") {
        variants.push_back(Variant::redundant);
      } else if (name == "misspecified") {
        variants.push_back(Variant::misspecified);
      } else {
        throw ConfigError("unknown variant '" + name + "'");
      }
    }
  }
  const std::vector<int> bid_sizes =
      get_int_list(cfg, "bid_sizes", {600, 1200, 2400});
  const std::vector<int> n_set = get_int_list(cfg, "n_set", {2, 5});
  const int replications =
      get_int(cfg, "replications", c.scale == "paper" ? 300 : 50);
  if (replications < 1) throw ConfigError("replications must be positive");
  std::optional<SamplerConfig> sampler;
  if (find(cfg, "sampler")) sampler = parse_sampler(cfg, c.scale);

  std::vector<MetricsRow> rows;
  json manifest;
  manifest["config_hash"] = c.prov.config_hash;
  manifest["seed"] = c.seed;
  manifest["scale"] = c.scale;
  manifest["experiments"] = json::array();
  for (Variant variant : variants) {
    for (int total_bids : bid_sizes) {
      ExperimentSpec spec;
      spec.variant = variant;
      spec.n_set = n_set;
      spec.total_bids = total_bids;
      spec.replications = replications;
      spec.base_seed = c.seed;
      spec.paper_scale = c.scale == "paper";
      spec.sampler = sampler;
      const ExperimentResult result = run_experiment(spec);
      rows.push_back(metrics_row(result));
      manifest["experiments"].push_back(
          {{"variant", variant_name(variant)},
           {"total_bids", total_bids},
           {"replications", replications},
           {"converged", result.converged_count},
           {"excluded", result.excluded_count},
           {"base_seed", c.seed}});
    }
  }
  write_file(c.out + "/metrics.csv", csv_metrics(rows, c.prov));
  write_file(c.out + "/manifest.json", manifest.dump(2) + "\n");
  return 0;
}

// Splits artifact CSV text into (header, data rows), dropping comments.
std::pair<std::string, std::vector<std::string>> csv_rows(
    const std::string& text) {
  std::istringstream in(text);
  std::string line, header;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = line;
    } else {
      rows.push_back(line);
    }
  }
  if (header.empty()) throw ParseError("artifact CSV has no header");
  return {header, rows};
}

const json& artifact_field(const json& doc, const char* key,
                           const std::string& where) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError("artifact " + where + " lacks '" + key + "'");
  }
  return *it;
}

std::string band_csv(const json& block, const char* axis,
                     const std::string& where, const Provenance& prov) {
  const auto& grid = artifact_field(block, "grid", where);
  const auto& mean = artifact_field(block, "mean", where);
  const auto& lo = artifact_field(block, "lo", where);
  const auto& hi = artifact_field(block, "hi", where);
  if (!grid.is_array() || grid.size() != mean.size() ||
      grid.size() != lo.size() || grid.size() != hi.size()) {
    throw ParseError("artifact " + where + " bands are inconsistent");
  }
  std::string out = provenance_line(prov);
  out += std::string(axis) + ",mean,lo,hi\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_double(grid[i].get<double>());
    out += ',';
    out += format_double(mean[i].get<double>());
    out += ',';
    out += format_double(lo[i].get<double>());
    out += ',';
    out += format_double(hi[i].get<double>());
    out += '\n';
  }
  return out;
}

int cmd_report(const json& cfg, const Common& c) {
  require_keys(cfg, "config", {"seed", "out", "scale", "in"});
  const std::string in_dir = get_string(cfg, "in", c.out);

  json posterior;
  try {
    posterior = json::parse(read_file(in_dir + "/posterior.json"));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("posterior.json: ") + e.what());
  }

  write_file(c.out + "/report_density.csv",
             band_csv(artifact_field(posterior, "f", "posterior.json"), "v",
                      "posterior.json f", c.prov));
  if (posterior.contains("d")) {
    write_file(c.out + "/report_d.csv",
               band_csv(posterior["d"], "gamma", "posterior.json d", c.prov));
  }

  const auto& actions = artifact_field(posterior, "actions", "posterior.json");
  for (const auto& a : actions) {
    const int n = artifact_field(a, "n", "action").get<int>();
    json band;
    band["grid"] = artifact_field(a, "grid", "action");
    band["mean"] = artifact_field(a, "mean", "action");
    band["lo"] = artifact_field(a, "band_lo", "action");
    band["hi"] = artifact_field(a, "band_hi", "action");
    write_file(c.out + "/report_revenue_n" + std::to_string(n) + ".csv",
               band_csv(band, "rho", "action", c.prov));
  }

  // Trace series: retained draw index in front of the chain columns, the
  // numbers passed through verbatim.
  const auto [chain_header, chain_rows] =
      csv_rows(read_file(in_dir + "/chain.csv"));
  std::string trace = provenance_line(c.prov);
  trace += "draw," + chain_header + "\n";
  for (std::size_t i = 0; i < chain_rows.size(); ++i) {
    trace += std::to_string(i) + "," + chain_rows[i] + "\n";
  }
  write_file(c.out + "/report_trace.csv", trace);

  // Predictive scatter split per bidder count, observed moments alongside.
  const auto [scatter_header, scatter_rows] =
      csv_rows(read_file(in_dir + "/predictive_scatter.csv"));
  if (scatter_header != "n,mean,sd,skew") {
    throw ParseError("predictive_scatter.csv has an unexpected header");
  }
  std::map<std::string, std::string> by_n;
  for (const auto& row : scatter_rows) {
    const auto comma = row.find(',');
    if (comma == std::string::npos) throw ParseError("bad scatter row: " + row);
    by_n[row.substr(0, comma)] += row + "\n";
  }
  for (const auto& [n, body] : by_n) {
    write_file(c.out + "/report_scatter_n" + n + ".csv",
               provenance_line(c.prov) + scatter_header + "\n" + body);
  }
  std::string observed = provenance_line(c.prov) + "n,mean,sd,skew\n";
  for (const auto& row :
       artifact_field(posterior, "observed", "posterior.json")) {
    observed += std::to_string(artifact_field(row, "n", "observed").get<int>());
    observed += ',';
    observed += format_double(artifact_field(row, "mean", "observed").get<double>());
    observed += ',';
    observed += format_double(artifact_field(row, "sd", "observed").get<double>());
    observed += ',';
    observed += format_double(artifact_field(row, "skew", "observed").get<double>());
    observed += '\n';
  }
  write_file(c.out + "/report_observed.csv", observed);
  return 0;
}

int report_error(int code, const std::string& message) {
  json err;
  err["code"] = code;
  err["error"] = message;
  std::fprintf(stderr, "%s\n", err.dump().c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-price auction toolkit: simulation, identification, "
               "Bayesian estimation, reserve-price decisions, and Monte Carlo "
               "experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  std::string scale_flag;
  std::uint64_t seed_flag = 0;

  const std::map<std::string, std::string> subcommands = {
      {"simulate", "draw a synthetic bid dataset"},
      {"estimate", "sample the posterior for one dataset"},
      {"identify", "closed-form recovery from two exact bid laws"},
      {"decide", "reserve-price actions from an estimated chain"},
      {"mc", "repeated-sampling experiment grid"},
      {"report", "plot-ready tables from previous outputs"}};
  for (const auto& [name, description] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out", out_flag, "output directory (overrides config)");
    sub->add_option("--seed", seed_flag, "RNG seed (overrides config)");
    sub->add_option("--scale", scale_flag, "sampler scale (overrides config)")
        ->check(CLI::IsMember({"desk", "paper"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : report_error(kExitBadConfig, e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    json cfg;
    try {
      cfg = json::parse(read_file(config_path));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    if (sub->count("--seed") > 0) cfg["seed"] = seed_flag;
    if (sub->count("--out") > 0) cfg["out"] = out_flag;
    if (sub->count("--scale") > 0) cfg["scale"] = scale_flag;
    const Common common = resolve_common(cfg);

    if (command == "simulate") return cmd_simulate(cfg, common);
    if (command == "estimate") return cmd_estimate(cfg, common);
    if (command == "identify") return cmd_identify(cfg, common);
    if (command == "decide") return cmd_decide(cfg, common);
    if (command == "mc") return cmd_mc(cfg, common);
    if (command == "report") return cmd_report(cfg, common);
    return report_error(kExitInternal, "unreachable subcommand");
  } catch (const ConfigError& e) {
    return report_error(kExitBadConfig, e.what());
  } catch (const ParseError& e) {
    return report_error(kExitBadConfig, e.what());
  } catch (const FileMissingError& e) {
    return report_error(kExitMissingFile, e.what());
  } catch (const NonConvergedError& e) {
    return report_error(kExitNonConverged, e.what());
  } catch (const std::exception& e) {
    return report_error(kExitInternal, e.what());
  }
}
