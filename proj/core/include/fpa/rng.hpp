#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fpa {

// Deterministic random stream with hierarchical substream derivation. Every
// consumer derives its own child stream from (seed, path ids), so adding a
// draw in one component never shifts the sequence seen by another. All
// variate transforms are implemented here on top of the standard-specified
// mt19937_64 output, which keeps byte-identical results across platforms and
// standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : RngStream(mix_path(seed, {}), Key{}) {}
  RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : RngStream(mix_path(seed, path), Key{}) {}

  // Child stream; independent of draws already taken from this stream.
  RngStream derive(std::initializer_list<std::uint64_t> path) const;

  std::uint64_t next_u64() { return eng_(); }
  double uniform01();                    // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // standard normal
  double gamma(double shape);            // scale 1, shape > 0
  std::vector<double> dirichlet(double alpha, std::size_t m);
  std::uint64_t uniform_below(std::uint64_t n);  // [0, n), unbiased

 private:
  struct Key {};
  RngStream(std::uint64_t key, Key);
  static std::uint64_t mix_path(std::uint64_t base,
                                std::initializer_list<std::uint64_t> path);

  std::uint64_t key_ = 0;
  std::mt19937_64 eng_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace fpa
