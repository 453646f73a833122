#pragma once

#include <array>

#include "grwick/scalar.hpp"

namespace grwick {

// Coefficient rings for the Grassmann engine. Every ring R provides the free
// functions used by Element<R>:
//   ring_is_zero, ring_is_invertible, ring_inverse, ring_scale,
//   ring_divide_int, ring_from_scalar<R>, ring_one<R>
// plus +, -, * and unary minus. Scalar itself is the base ring; Jet carries a
// first-order derivative along an external parameter; Series<K> is a formal
// power series in one commuting variable truncated after degree K.

// ---- Scalar as a ring -------------------------------------------------------
inline bool ring_is_zero(const Scalar& s) { return s.is_zero(); }
inline bool ring_is_invertible(const Scalar& s) { return !s.is_zero(); }
inline Scalar ring_inverse(const Scalar& s) { return s.inverse(); }
inline Scalar ring_scale(const Scalar& a, const Scalar& s) { return a * s; }
inline Scalar ring_divide_int(const Scalar& a, long k) { return a.divided_by_int(k); }

// ---- Jet: value + first derivative ------------------------------------------
struct Jet {
  Scalar v, d;

  Jet() = default;
  Jet(Scalar v_, Scalar d_) : v(std::move(v_)), d(std::move(d_)) {}

  friend Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d}; }
  friend Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d - b.d}; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.v * b.d + a.d * b.v};
  }
  Jet operator-() const { return {-v, -d}; }
  friend bool operator==(const Jet& a, const Jet& b) { return a.v == b.v && a.d == b.d; }
};

inline bool ring_is_zero(const Jet& j) { return j.v.is_zero() && j.d.is_zero(); }
inline bool ring_is_invertible(const Jet& j) { return !j.v.is_zero(); }
inline Jet ring_inverse(const Jet& j) {
  Scalar iv = j.v.inverse();
  return {iv, -(j.d * iv * iv)};
}
inline Jet ring_scale(const Jet& a, const Scalar& s) { return {a.v * s, a.d * s}; }
inline Jet ring_divide_int(const Jet& a, long k) {
  return {a.v.divided_by_int(k), a.d.divided_by_int(k)};
}

// ---- Series<K>: truncated formal power series -------------------------------
template <int K>
struct Series {
  std::array<Scalar, K + 1> c{};

  static Series variable() {  // the series "s"
    Series r;
    static_assert(K >= 1, "Series::variable needs K >= 1");
    r.c[1] = Scalar(1);
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r;
    for (int i = 0; i <= K; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r;
    for (int i = 0; i <= K; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    for (int i = 0; i <= K; ++i)
      for (int j = 0; i + j <= K; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  Series operator-() const {
    Series r;
    for (int i = 0; i <= K; ++i) r.c[i] = -c[i];
    return r;
  }
  friend bool operator==(const Series& a, const Series& b) { return a.c == b.c; }
};

template <int K>
inline bool ring_is_zero(const Series<K>& s) {
  for (const auto& x : s.c)
    if (!x.is_zero()) return false;
  return true;
}
template <int K>
inline bool ring_is_invertible(const Series<K>& s) {
  return !s.c[0].is_zero();
}
template <int K>
inline Series<K> ring_inverse(const Series<K>& s) {
  Series<K> r;
  Scalar i0 = s.c[0].inverse();
  r.c[0] = i0;
  for (int k = 1; k <= K; ++k) {
    Scalar acc;
    for (int i = 1; i <= k; ++i) acc += s.c[i] * r.c[k - i];
    r.c[k] = -(acc * i0);
  }
  return r;
}
template <int K>
inline Series<K> ring_scale(const Series<K>& a, const Scalar& s) {
  Series<K> r;
  for (int i = 0; i <= K; ++i) r.c[i] = a.c[i] * s;
  return r;
}
template <int K>
inline Series<K> ring_divide_int(const Series<K>& a, long k) {
  Series<K> r;
  for (int i = 0; i <= K; ++i) r.c[i] = a.c[i].divided_by_int(k);
  return r;
}

// ---- embedding of Scalar into each ring --------------------------------------
template <class R>
struct RingTraits;
template <>
struct RingTraits<Scalar> {
  static Scalar from_scalar(const Scalar& s) { return s; }
};
template <>
struct RingTraits<Jet> {
  static Jet from_scalar(const Scalar& s) { return {s, Scalar(0)}; }
};
template <int K>
struct RingTraits<Series<K>> {
  static Series<K> from_scalar(const Scalar& s) {
    Series<K> r;
    r.c[0] = s;
    return r;
  }
};

template <class R>
R ring_from_scalar(const Scalar& s) {
  return RingTraits<R>::from_scalar(s);
}
template <class R>
R ring_one() {
  return ring_from_scalar<R>(Scalar(1));
}

}  // namespace grwick
