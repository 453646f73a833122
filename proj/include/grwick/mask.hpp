#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace grwick {

// Set of generator indices in [0, 128), stored as two machine words.
// A monomial is exactly such a set read in ascending index order; all sign
// bookkeeping reduces to counting inversions between masks (merge parity).
struct Mask {
  std::array<std::uint64_t, 2> w{0, 0};

  static Mask single(int b) {
    Mask m;
    m.set(b);
    return m;
  }

  bool test(int b) const { return (w[b >> 6] >> (b & 63)) & 1u; }
  void set(int b) { w[b >> 6] |= std::uint64_t(1) << (b & 63); }
  void reset(int b) { w[b >> 6] &= ~(std::uint64_t(1) << (b & 63)); }

  bool empty() const { return w[0] == 0 && w[1] == 0; }
  int popcount() const { return std::popcount(w[0]) + std::popcount(w[1]); }

  friend Mask operator&(const Mask& a, const Mask& b) {
    return Mask{{a.w[0] & b.w[0], a.w[1] & b.w[1]}};
  }
  friend Mask operator|(const Mask& a, const Mask& b) {
    return Mask{{a.w[0] | b.w[0], a.w[1] | b.w[1]}};
  }
  friend Mask operator^(const Mask& a, const Mask& b) {
    return Mask{{a.w[0] ^ b.w[0], a.w[1] ^ b.w[1]}};
  }
  Mask without(const Mask& b) const { return Mask{{w[0] & ~b.w[0], w[1] & ~b.w[1]}}; }
  bool intersects(const Mask& b) const {
    return (w[0] & b.w[0]) != 0 || (w[1] & b.w[1]) != 0;
  }

  friend bool operator==(const Mask& a, const Mask& b) { return a.w == b.w; }
  friend bool operator!=(const Mask& a, const Mask& b) { return a.w != b.w; }
  // Numeric order (high word first) — any strict total order works as map key.
  friend bool operator<(const Mask& a, const Mask& b) {
    if (a.w[1] != b.w[1]) return a.w[1] < b.w[1];
    return a.w[0] < b.w[0];
  }

  // Number of set bits strictly above position b.
  int count_above(int b) const {
    if (b < 64) {
      std::uint64_t hi0 = (b == 63) ? 0 : (w[0] >> (b + 1));
      return std::popcount(hi0) + std::popcount(w[1]);
    }
    int c = b - 64;
    std::uint64_t hi1 = (c == 63) ? 0 : (w[1] >> (c + 1));
    return std::popcount(hi1);
  }
  // Number of set bits strictly below position b.
  int count_below(int b) const {
    if (b < 64) {
      std::uint64_t lo = (b == 0) ? 0 : (w[0] & ((std::uint64_t(1) << b) - 1));
      return std::popcount(lo);
    }
    int c = b - 64;
    std::uint64_t lo1 = (c == 0) ? 0 : (w[1] & ((std::uint64_t(1) << c) - 1));
    return std::popcount(w[0]) + std::popcount(lo1);
  }

  std::vector<int> bits() const {
    std::vector<int> out;
    out.reserve(popcount());
    for (int word = 0; word < 2; ++word) {
      std::uint64_t v = w[word];
      while (v) {
        int b = std::countr_zero(v);
        out.push_back(64 * word + b);
        v &= v - 1;
      }
    }
    return out;
  }
};

// Parity of the permutation sorting the concatenation [asc(a), asc(b)] —
// i.e. the sign picked up when the product (monomial a)·(monomial b) is
// brought to canonical ascending order. Returns true when the sign is −1.
inline bool merge_parity_odd(const Mask& a, const Mask& b) {
  int inversions = 0;
  for (int word = 0; word < 2; ++word) {
    std::uint64_t v = b.w[word];
    while (v) {
      int bit = 64 * word + std::countr_zero(v);
      inversions += a.count_above(bit);
      v &= v - 1;
    }
  }
  return inversions & 1;
}

}  // namespace grwick
