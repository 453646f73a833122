#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "grwick/rings.hpp"

namespace grwick {

// Antisymmetric bilinear form on the generator space, with entries in a
// coefficient ring (Scalar normally; Jet for parameter families).
template <class R>
struct CovarianceT {
  int dim = 0;
  std::vector<R> m;  // row-major dim*dim, antisymmetric

  CovarianceT() = default;
  explicit CovarianceT(int d) : dim(d), m(static_cast<size_t>(d) * d) {}

  const R& at(int i, int j) const { return m[static_cast<size_t>(i) * dim + j]; }
  void set(int i, int j, const R& v) {
    if (i == j) {
      if (!ring_is_zero(v)) throw std::invalid_argument("Covariance: nonzero diagonal");
      return;
    }
    m[static_cast<size_t>(i) * dim + j] = v;
    m[static_cast<size_t>(j) * dim + i] = -v;
  }

  CovarianceT scaled(const Scalar& s) const {
    CovarianceT r(dim);
    for (size_t k = 0; k < m.size(); ++k) r.m[k] = ring_scale(m[k], s);
    return r;
  }
  friend CovarianceT operator+(const CovarianceT& a, const CovarianceT& b) {
    if (a.dim != b.dim) throw std::invalid_argument("Covariance: dimension mismatch");
    CovarianceT r(a.dim);
    for (size_t k = 0; k < a.m.size(); ++k) r.m[k] = a.m[k] + b.m[k];
    return r;
  }
  friend CovarianceT operator-(const CovarianceT& a, const CovarianceT& b) {
    if (a.dim != b.dim) throw std::invalid_argument("Covariance: dimension mismatch");
    CovarianceT r(a.dim);
    for (size_t k = 0; k < a.m.size(); ++k) r.m[k] = a.m[k] - b.m[k];
    return r;
  }
  CovarianceT operator-() const {
    CovarianceT r(dim);
    for (size_t k = 0; k < m.size(); ++k) r.m[k] = -m[k];
    return r;
  }

  bool is_antisymmetric() const {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j) {
        R s = at(i, j) + at(j, i);
        if (!ring_is_zero(s)) return false;
      }
    return true;
  }
};

using Covariance = CovarianceT<Scalar>;

inline CovarianceT<Jet> jet_covariance(const Covariance& value, const Covariance& deriv) {
  if (value.dim != deriv.dim) throw std::invalid_argument("jet_covariance: dimension mismatch");
  CovarianceT<Jet> r(value.dim);
  for (size_t k = 0; k < r.m.size(); ++k) r.m[k] = Jet{value.m[k], deriv.m[k]};
  return r;
}

// Memoized Pfaffians of principal submatrices, keyed by the index subset.
// First-row expansion: with the subset listed ascending as s_1 < ... < s_n,
//   Pf(S) = sum over p = 2..n of (-1)^p * C(s_1, s_p) * Pf(S \ {s_1, s_p}).
template <class R>
class PfaffianTable {
public:
  explicit PfaffianTable(const CovarianceT<R>& c) : c_(c) {
    if (c.dim > 30) throw std::invalid_argument("PfaffianTable: dimension too large");
  }

  const R& pf(std::uint64_t subset) {
    auto it = memo_.find(subset);
    if (it != memo_.end()) return it->second;
    R val = compute(subset);
    return memo_.emplace(subset, std::move(val)).first->second;
  }

private:
  R compute(std::uint64_t subset) {
    int n = std::popcount(subset);
    if (n == 0) return ring_one<R>();
    if (n & 1) return R{};
    int first = std::countr_zero(subset);
    std::uint64_t rest = subset & (subset - 1);
    R acc{};
    int p = 2;
    for (std::uint64_t v = rest; v; v &= v - 1, ++p) {
      int j = std::countr_zero(v);
      R term = c_.at(first, j) * pf(rest & ~(std::uint64_t(1) << j));
      acc = (p % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  }

  const CovarianceT<R>& c_;
  std::unordered_map<std::uint64_t, R> memo_;
};

// Pfaffian of a full antisymmetric matrix (entries as nested vectors).
template <class R>
R pfaffian(const std::vector<std::vector<R>>& mat) {
  int n = static_cast<int>(mat.size());
  CovarianceT<R> c(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(mat[i].size()) != n)
      throw std::invalid_argument("pfaffian: matrix not square");
    for (int j = 0; j < n; ++j) {
      R s = mat[i][j] + mat[j][i];
      if (!ring_is_zero(s)) throw std::invalid_argument("pfaffian: matrix not antisymmetric");
      c.m[static_cast<size_t>(i) * n + j] = mat[i][j];
    }
  }
  PfaffianTable<R> tab(c);
  std::uint64_t full = (n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
  return tab.pf(full);
}

inline Scalar pfaffian(const Covariance& c) {
  if (!c.is_antisymmetric()) throw std::invalid_argument("pfaffian: matrix not antisymmetric");
  PfaffianTable<Scalar> tab(c);
  return tab.pf((std::uint64_t(1) << c.dim) - 1);
}

// Moment of an arbitrary index sequence (repeats allowed): the Pfaffian of
// the n x n matrix C(seq_k, seq_l). Vanishes for odd n or repeated indices.
template <class R>
R sequence_moment(const CovarianceT<R>& c, const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size());
  if (n & 1) return R{};
  std::vector<std::vector<R>> m(n, std::vector<R>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m[i][j] = c.at(seq[i], seq[j]);
  // Antisymmetry can fail only through repeated indices, which force a zero
  // moment; detect and short-circuit instead of throwing.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (seq[i] == seq[j]) return R{};
  return pfaffian(m);
}

}  // namespace grwick
