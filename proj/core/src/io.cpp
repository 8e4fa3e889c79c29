#include "fpa/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <system_error>

namespace fpa {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Data lines of a CSV body: provenance comments and blank lines skipped,
// the header validated against the expected column names.
std::vector<std::string> data_lines(const std::string& text,
                                    const std::string& header) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != header) {
        throw ParseError("expected header '" + header + "', got '" + line + "'");
      }
      seen_header = true;
      continue;
    }
    lines.push_back(line);
  }
  if (!seen_header) throw ParseError("missing header '" + header + "'");
  return lines;
}

double parse_number(const std::string& field) {
  double x = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto r = std::from_chars(first, last, x);
  if (r.ec != std::errc{} || r.ptr != last) {
    throw ParseError("bad number '" + field + "'");
  }
  return x;
}

int parse_int(const std::string& field) {
  int x = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto r = std::from_chars(first, last, x);
  if (r.ec != std::errc{} || r.ptr != last) {
    throw ParseError("bad integer '" + field + "'");
  }
  return x;
}

// Header names for the free coordinates of a model layout.
std::vector<std::string> coordinate_names(const ModelConfig& model) {
  std::vector<std::string> names;
  names.push_back("crra");
  for (int i = 1; i < model.k; ++i) names.push_back("f_" + std::to_string(i));
  if (model.ambiguity) {
    names.push_back("theta0");
    for (int i = 1; i <= model.k - 3; ++i) {
      names.push_back("d_" + std::to_string(i));
    }
  }
  return names;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

std::string provenance_line(const Provenance& p) {
  return "# config_hash=" + p.config_hash + " seed=" + std::to_string(p.seed) +
         "\n";
}

std::string csv_dataset(const BidDataset& data, const Provenance& p) {
  std::string out = provenance_line(p);
  out += "auction_id,n,bidder_index,bid\n";
  for (const auto& rec : data.records) {
    out += std::to_string(rec.auction_id);
    out += ',';
    out += std::to_string(rec.n);
    out += ',';
    out += std::to_string(rec.bidder_index);
    out += ',';
    out += format_double(rec.bid);
    out += '\n';
  }
  return out;
}

BidDataset parse_dataset_csv(const std::string& text) {
  BidDataset data;
  std::map<int, std::set<int>> auctions_by_n;
  for (const auto& line : data_lines(text, "auction_id,n,bidder_index,bid")) {
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw ParseError("expected 4 columns: " + line);
    BidRecord rec;
    rec.auction_id = parse_int(fields[0]);
    rec.n = parse_int(fields[1]);
    rec.bidder_index = parse_int(fields[2]);
    rec.bid = parse_number(fields[3]);
    auctions_by_n[rec.n].insert(rec.auction_id);
    data.records.push_back(rec);
  }
  if (data.records.empty()) throw ParseError("dataset has no rows");
  for (const auto& [n, ids] : auctions_by_n) {
    data.design[n] = static_cast<int>(ids.size());
  }
  data.validate();
  return data;
}

BidLawTable parse_bid_law_csv(const std::string& text, int n) {
  BidLawTable t;
  t.n = n;
  for (const auto& line : data_lines(text, "gamma,bid_quantile,bid_density")) {
    const auto fields = split(line, ',');
    if (fields.size() != 3) throw ParseError("expected 3 columns: " + line);
    t.gamma.push_back(parse_number(fields[0]));
    t.quantile.push_back(parse_number(fields[1]));
    t.density.push_back(parse_number(fields[2]));
  }
  if (t.gamma.size() < 4) throw ParseError("bid law table needs at least 4 rows");
  if (!std::is_sorted(t.gamma.begin(), t.gamma.end())) {
    throw ParseError("bid law gamma column must increase");
  }
  return t;
}

BidLaw law_from_table(const BidLawTable& t) {
  auto quantile =
      std::make_shared<PchipCurve>(PchipCurve::build(t.gamma, t.quantile));
  auto density =
      std::make_shared<PchipCurve>(PchipCurve::build(t.quantile, t.density));
  BidLaw law;
  law.n = t.n;
  law.quantile = [quantile](double g) { return quantile->eval(g); };
  law.density = [density](double b) { return density->eval(b); };
  return law;
}

std::string csv_chain(const Chain& chain, const Provenance& p) {
  const auto names = coordinate_names(chain.model);
  std::string out = provenance_line(p);
  for (const auto& name : names) {
    out += name;
    out += ',';
  }
  out += "log_posterior\n";
  for (std::size_t i = chain.retained_begin; i < chain.draws.size(); ++i) {
    const auto& row = chain.draws[i];
    for (double x : row) {
      out += format_double(x);
      out += ',';
    }
    out += format_double(chain.log_target[i]);
    out += '\n';
  }
  return out;
}

Chain parse_chain_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> names;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (names.empty()) {
      names = split(line, ',');
    } else {
      rows.push_back(line);
    }
  }
  if (names.size() < 2 || names.front() != "crra" ||
      names.back() != "log_posterior") {
    throw ParseError("unrecognized chain header");
  }
  Chain chain;
  int f_count = 0;
  bool has_theta0 = false;
  int d_count = 0;
  for (std::size_t i = 1; i + 1 < names.size(); ++i) {
    if (names[i] == "f_" + std::to_string(f_count + 1) && !has_theta0) {
      ++f_count;
    } else if (names[i] == "theta0" && !has_theta0) {
      has_theta0 = true;
    } else if (has_theta0 && names[i] == "d_" + std::to_string(d_count + 1)) {
      ++d_count;
    } else {
      throw ParseError("unexpected chain column '" + names[i] + "'");
    }
  }
  chain.model.k = f_count + 1;
  chain.model.ambiguity = has_theta0;
  if (chain.model.k < 3 ||
      (has_theta0 && d_count != chain.model.k - 3)) {
    throw ParseError("inconsistent chain layout");
  }
  chain.dim = free_dimension(chain.model);
  chain.converged = true;
  for (const auto& r : rows) {
    const auto fields = split(r, ',');
    if (fields.size() != names.size()) {
      throw ParseError("chain row width mismatch: " + r);
    }
    std::vector<double> x(fields.size() - 1);
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      x[i] = parse_number(fields[i]);
    }
    chain.draws.push_back(std::move(x));
    chain.log_target.push_back(parse_number(fields.back()));
  }
  if (chain.draws.empty()) throw ParseError("chain has no draws");
  return chain;
}

std::string csv_revenue(const BayesAction& action, const Provenance& p) {
  std::string out = provenance_line(p);
  out += "rho,revenue,lo,hi\n";
  for (std::size_t i = 0; i < action.grid.size(); ++i) {
    out += format_double(action.grid[i]);
    out += ',';
    out += format_double(action.mean[i]);
    out += ',';
    out += format_double(action.band_lo[i]);
    out += ',';
    out += format_double(action.band_hi[i]);
    out += '\n';
  }
  return out;
}

std::string csv_scatter(const std::vector<CheckTriple>& rows,
                        const Provenance& p) {
  std::string out = provenance_line(p);
  out += "n,mean,sd,skew\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    out += format_double(r.mean);
    out += ',';
    out += format_double(r.sd);
    out += ',';
    out += format_double(r.skew);
    out += '\n';
  }
  return out;
}

std::string csv_metrics(const std::vector<MetricsRow>& rows,
                        const Provenance& p) {
  std::string out = provenance_line(p);
  out += "variant,total_bids,mise_f,mise_d,mse_u,loss_n2\n";
  for (const auto& r : rows) {
    out += r.variant;
    out += ',';
    out += std::to_string(r.total_bids);
    out += ',';
    out += format_double(r.mise_f);
    out += ',';
    out += format_double(r.mise_d);
    out += ',';
    out += format_double(r.mse_u);
    out += ',';
    out += format_double(r.loss_n2);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) {
    throw FileMissingError("no such file: " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileMissingError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << content;
}

}  // namespace fpa
