#pragma once

#include <cstdint>
#include <random>

#include "grwick/scalar.hpp"

namespace grwick {

// Deterministic random stream. All derived draws use explicit arithmetic on
// the raw 64-bit output (never distribution adapters, whose mapping is
// implementation-defined), so runs with equal seeds produce byte-identical
// reports everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // uniform-ish in [0, n); the modulo bias at these tiny ranges is
  // irrelevant, determinism is what matters
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  Scalar rational(long max_abs_num, long max_den) {
    return Scalar::rational(range(-max_abs_num, max_abs_num), range(1, max_den));
  }
  Scalar nonzero_rational(long max_abs_num, long max_den) {
    long num = range(1, max_abs_num);
    if (chance(1, 2)) num = -num;
    return Scalar::rational(num, range(1, max_den));
  }
  Scalar complex_rational(long max_abs_num, long max_den) {
    Scalar s = rational(max_abs_num, max_den);
    return s + rational(max_abs_num, max_den) * Scalar::imaginary();
  }

  // child stream for an indexed sub-task, detached from draw order
  Rng fork(std::uint64_t salt) {
    std::uint64_t s = next();
    return Rng(s ^ (salt * 0x9e3779b97f4a7c15ull));
  }

private:
  std::mt19937_64 eng_;
};

// Stateless stream splitter (splitmix64 finalizer): gives every indexed
// sub-task its own seed without consuming draws from a parent stream, so
// tasks can run in any order or in parallel with identical results.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace grwick
