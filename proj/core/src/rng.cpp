#include "fpa/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fpa {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t key, Key) : key_(key) {
  // Seed the engine from several splitmix outputs so nearby keys give
  // well-separated engine states.
  std::seed_seq seq{static_cast<std::uint32_t>(key_),
                    static_cast<std::uint32_t>(key_ >> 32),
                    static_cast<std::uint32_t>(splitmix64(key_)),
                    static_cast<std::uint32_t>(splitmix64(key_) >> 32)};
  eng_.seed(seq);
}

std::uint64_t RngStream::mix_path(std::uint64_t base,
                                  std::initializer_list<std::uint64_t> path) {
  std::uint64_t k = splitmix64(base);
  for (std::uint64_t id : path) {
    k = splitmix64(k ^ splitmix64(id + 0x632be59bd9b4e019ull));
  }
  return k;
}

RngStream RngStream::derive(std::initializer_list<std::uint64_t> path) const {
  return RngStream(mix_path(key_, path), Key{});
}

double RngStream::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RngStream::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // Box-Muller; u1 shifted away from zero.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * 3.14159265358979323846 * u2;
  spare_normal_ = r * std::sin(a);
  has_spare_normal_ = true;
  return r * std::cos(a);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
  if (shape < 1.0) {
    // Boost via shape + 1, then scale back.
    const double g = gamma(shape + 1.0);
    const double u = 1.0 - uniform01();
    return g * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> RngStream::dirichlet(double alpha, std::size_t m) {
  std::vector<double> w(m);
  double total = 0.0;
  for (auto& wi : w) {
    wi = gamma(alpha);
    total += wi;
  }
  for (auto& wi : w) wi /= total;
  return w;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be > 0");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = eng_();
    if (x < limit) return x % n;
  }
}

}  // namespace fpa
