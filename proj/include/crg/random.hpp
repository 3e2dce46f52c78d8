#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "crg/rational.hpp"

namespace crg {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// mt19937_64 output is specified by the standard; the distributions are not,
// so integers are drawn by plain modular reduction to keep runs identical
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(gen_() % span);
  }

  long nonzero(long bound) {
    long v = 0;
    while (v == 0) v = uniform(-bound, bound);
    return v;
  }

  Rational rational(long num_bound, long den_bound) {
    return make_rational(uniform(-num_bound, num_bound), uniform(1, den_bound));
  }

  std::vector<Rational> point(std::size_t n, long bound) {
    std::vector<Rational> p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) p.emplace_back(uniform(-bound, bound));
    return p;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace crg
