#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/decision.hpp"
#include "fpa/identification.hpp"
#include "fpa/inference.hpp"
#include "fpa/mc.hpp"

namespace fpa {

// Raised when an input file is absent.
struct FileMissingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an input file exists but cannot be understood.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

// Shortest decimal that reads back to the same double.
std::string format_double(double x);

// Stamped into the first line of every emitted file.
struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
};

std::string provenance_line(const Provenance& p);

std::string csv_dataset(const BidDataset& data, const Provenance& p);
BidDataset parse_dataset_csv(const std::string& text);

// Tabulated bid law read from `gamma,bid_quantile,bid_density` rows.
struct BidLawTable {
  int n = 0;
  std::vector<double> gamma;
  std::vector<double> quantile;
  std::vector<double> density;
};

BidLawTable parse_bid_law_csv(const std::string& text, int n);

// Monotone-interpolated law over the table; the density interpolates on the
// bid axis.
BidLaw law_from_table(const BidLawTable& t);

// One row per retained draw: named free coordinates plus the log posterior.
std::string csv_chain(const Chain& chain, const Provenance& p);

// Rebuilds a retained-only chain (every row kept) from its CSV. The layout
// comes from the header names; sampler diagnostics are not recoverable.
Chain parse_chain_csv(const std::string& text);

std::string csv_revenue(const BayesAction& action, const Provenance& p);
std::string csv_scatter(const std::vector<CheckTriple>& rows, const Provenance& p);
std::string csv_metrics(const std::vector<MetricsRow>& rows, const Provenance& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fpa
