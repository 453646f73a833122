#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grwick/mask.hpp"
#include "grwick/rings.hpp"
#include "grwick/signature.hpp"

namespace grwick {

// Sparse Grassmann polynomial over a Signature, with coefficients in a
// commutative ring R (Scalar, Jet or Series<K>). Terms are keyed by the
// canonical ascending generator mask; zero coefficients are never stored.
// Values are immutable in spirit: every operation returns a fresh element.
template <class R>
class Element {
public:
  Signature sig;
  std::map<Mask, R> terms;

  Element() = default;
  explicit Element(Signature s) : sig(s) {}

  static Element zero(const Signature& s) { return Element(s); }
  static Element constant(const Signature& s, R c) {
    Element e(s);
    e.add_term(Mask{}, std::move(c));
    return e;
  }
  static Element unit(const Signature& s) { return constant(s, ring_one<R>()); }
  static Element generator(const Signature& s, int global_bit) {
    if (global_bit < 0 || global_bit >= s.total_bits())
      throw std::out_of_range("Element::generator: bit out of range");
    Element e(s);
    e.add_term(Mask::single(global_bit), ring_one<R>());
    return e;
  }
  static Element a_gen(const Signature& s, int g) { return generator(s, s.a_bit(g)); }
  static Element v_gen(const Signature& s, int copy, int i) {
    if (copy < 0 || copy >= s.copies) throw std::out_of_range("Element::v_gen: no such copy");
    return generator(s, s.v_bit(copy, i));
  }

  void add_term(const Mask& m, R c) {
    if (ring_is_zero(c)) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, std::move(c));
    } else {
      it->second = it->second + c;
      if (ring_is_zero(it->second)) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }

  R z_part() const {
    auto it = terms.find(Mask{});
    return it == terms.end() ? R{} : it->second;
  }
  Element without_z() const {
    Element e = *this;
    e.terms.erase(Mask{});
    return e;
  }

  bool is_even() const {
    for (const auto& [m, c] : terms)
      if (m.popcount() & 1) return false;
    return true;
  }
  bool is_odd() const {
    for (const auto& [m, c] : terms)
      if (!(m.popcount() & 1)) return false;
    return true;
  }

  Element scaled(const Scalar& s) const {
    Element e(sig);
    if (s.is_zero()) return e;
    for (const auto& [m, c] : terms) e.add_term(m, ring_scale(c, s));
    return e;
  }
  Element scaled_ring(const R& r) const {
    Element e(sig);
    for (const auto& [m, c] : terms) e.add_term(m, c * r);
    return e;
  }

  friend Element operator+(const Element& a, const Element& b) {
    a.check_same(b);
    Element e = a;
    for (const auto& [m, c] : b.terms) e.add_term(m, c);
    return e;
  }
  friend Element operator-(const Element& a, const Element& b) {
    a.check_same(b);
    Element e = a;
    for (const auto& [m, c] : b.terms) e.add_term(m, -c);
    return e;
  }
  Element operator-() const {
    Element e(sig);
    for (const auto& [m, c] : terms) e.terms.emplace(m, -c);
    return e;
  }
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }

  // Canonical-form product: disjoint masks merge with the inversion-count
  // sign; overlapping masks vanish by nilpotency.
  friend Element operator*(const Element& a, const Element& b) {
    a.check_same(b);
    Element e(a.sig);
    for (const auto& [ma, ca] : a.terms) {
      for (const auto& [mb, cb] : b.terms) {
        if (ma.intersects(mb)) continue;
        R c = ca * cb;
        if (merge_parity_odd(ma, mb)) c = -c;
        e.add_term(ma | mb, std::move(c));
      }
    }
    return e;
  }
  Element& operator*=(const Element& o) { return *this = *this * o; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.sig == b.sig && a.terms == b.terms;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  void check_same(const Element& o) const {
    if (!(sig == o.sig)) throw std::invalid_argument("Element: signature mismatch");
  }
};

// ---- structural maps ---------------------------------------------------------

// Generic generator-wise transport: every generator bit of f is replaced by
// image(bit), an element over `out`; coefficients ride along unchanged. For
// odd (or zero) images this is the unique algebra homomorphism extending the
// assignment, and all signs fall out of the canonical product.
template <class R, class F>
Element<R> transport(const Element<R>& f, const Signature& out, F&& image) {
  Element<R> res(out);
  for (const auto& [mask, coeff] : f.terms) {
    Element<R> acc = Element<R>::constant(out, coeff);
    for (int b : mask.bits()) {
      acc = acc * image(b);
      if (acc.is_zero()) break;
    }
    res += acc;
  }
  return res;
}

// Reinterpret f over a signature with extra trailing copies (bit layout is
// prefix-stable, so masks carry over unchanged).
template <class R>
Element<R> extend_copies(const Element<R>& f, int new_copy_count) {
  if (new_copy_count < f.sig.copies)
    throw std::invalid_argument("extend_copies: cannot shrink");
  Element<R> e(Signature(f.sig.a_gens, f.sig.dim, new_copy_count));
  e.terms = f.terms;
  return e;
}

// Drop a copy no term touches, relabelling higher copies down.
template <class R>
Element<R> drop_copy(const Element<R>& f, int copy) {
  const Signature& s = f.sig;
  Mask cm = s.copy_mask(copy);
  Signature out(s.a_gens, s.dim, s.copies - 1);
  Element<R> e(out);
  const int start = s.a_gens + copy * s.dim;
  for (const auto& [mask, c] : f.terms) {
    if (mask.intersects(cm))
      throw std::invalid_argument("drop_copy: element still depends on the copy");
    Mask nm;
    for (int b : mask.bits()) nm.set(b < start ? b : b - s.dim);
    e.add_term(nm, c);
  }
  return e;
}

// Replace every generator of target_copy by a scalar combination of the
// matching generators of other copies (empty list = evaluate the copy at 0).
template <class R>
Element<R> substitute_sum(const Element<R>& f, int target_copy,
                          const std::vector<std::pair<int, Scalar>>& combo) {
  const Signature& s = f.sig;
  if (target_copy < 0 || target_copy >= s.copies)
    throw std::out_of_range("substitute_sum: no such copy");
  for (const auto& [c, sc] : combo)
    if (c < 0 || c >= s.copies) throw std::out_of_range("substitute_sum: no such copy");
  return transport(f, s, [&](int b) {
    if (s.is_a_bit(b) || s.copy_of_bit(b) != target_copy)
      return Element<R>::generator(s, b);
    int i = s.index_of_bit(b);
    Element<R> img(s);
    for (const auto& [c, sc] : combo) img += Element<R>::v_gen(s, c, i).scaled(sc);
    return img;
  });
}

// Set copy_b equal to copy_a and remove copy_b from the signature.
template <class R>
Element<R> diagonal(const Element<R>& f, int copy_a, int copy_b) {
  if (copy_a == copy_b) throw std::invalid_argument("diagonal: copies must differ");
  Element<R> g = substitute_sum(f, copy_b, {{copy_a, Scalar(1)}});
  return drop_copy(g, copy_b);
}

// Evaluate one copy at zero (signature keeps the copy).
template <class R>
Element<R> evaluate_copy_zero(const Element<R>& f, int copy) {
  Mask cm = f.sig.copy_mask(copy);
  Element<R> e(f.sig);
  for (const auto& [m, c] : f.terms)
    if (!m.intersects(cm)) e.add_term(m, c);
  return e;
}

// Apply a permutation to the copies: generator i of copy c maps to generator
// i of perm[c].
template <class R>
Element<R> permute_copies(const Element<R>& f, const std::vector<int>& perm) {
  const Signature& s = f.sig;
  if (static_cast<int>(perm.size()) != s.copies)
    throw std::invalid_argument("permute_copies: bad permutation size");
  return transport(f, s, [&](int b) {
    if (s.is_a_bit(b)) return Element<R>::generator(s, b);
    return Element<R>::v_gen(s, perm[s.copy_of_bit(b)], s.index_of_bit(b));
  });
}

// ---- homogeneous decomposition ------------------------------------------------

struct ComponentKey {
  int m = 0;                 // coefficient-generator degree
  std::vector<int> n;        // degree per copy
  friend bool operator<(const ComponentKey& a, const ComponentKey& b) {
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  }
  friend bool operator==(const ComponentKey& a, const ComponentKey& b) {
    return a.m == b.m && a.n == b.n;
  }
  int total_v_degree() const {
    int t = 0;
    for (int x : n) t += x;
    return t;
  }
};

template <class R>
ComponentKey component_key_of(const Signature& s, const Mask& m) {
  ComponentKey k;
  k.m = (m & s.a_mask_all()).popcount();
  k.n.resize(s.copies);
  for (int c = 0; c < s.copies; ++c) k.n[c] = (m & s.copy_mask(c)).popcount();
  return k;
}

template <class R>
std::map<ComponentKey, Element<R>> homogeneous_components(const Element<R>& f) {
  std::map<ComponentKey, Element<R>> out;
  for (const auto& [m, c] : f.terms) {
    ComponentKey k = component_key_of<R>(f.sig, m);
    auto it = out.find(k);
    if (it == out.end()) it = out.emplace(k, Element<R>(f.sig)).first;
    it->second.add_term(m, c);
  }
  return out;
}

template <class R>
Element<R> degree_component(const Element<R>& f, int m, const std::vector<int>& n) {
  if (static_cast<int>(n.size()) != f.sig.copies)
    throw std::invalid_argument("degree_component: wrong number of copy degrees");
  Element<R> e(f.sig);
  for (const auto& [mask, c] : f.terms) {
    ComponentKey k = component_key_of<R>(f.sig, mask);
    if (k.m == m && k.n == n) e.add_term(mask, c);
  }
  return e;
}

template <class R>
Element<R> even_part(const Element<R>& f) {
  Element<R> e(f.sig);
  for (const auto& [m, c] : f.terms)
    if (!(m.popcount() & 1)) e.add_term(m, c);
  return e;
}
template <class R>
Element<R> odd_part(const Element<R>& f) {
  Element<R> e(f.sig);
  for (const auto& [m, c] : f.terms)
    if (m.popcount() & 1) e.add_term(m, c);
  return e;
}

// ---- series operations ----------------------------------------------------------

namespace detail {
inline int series_cap(const Signature& s) { return 2 * s.total_bits() + 2; }
}  // namespace detail

// exp(f) = sum f^k / k! for f with vanishing constant part; terminates by
// nilpotency (every term of f carries at least one generator).
template <class R>
Element<R> exp_nilpotent(const Element<R>& f) {
  if (!ring_is_zero(f.z_part()))
    throw std::invalid_argument("exp_nilpotent: nonzero constant part");
  Element<R> res = Element<R>::unit(f.sig);
  Element<R> pw = Element<R>::unit(f.sig);
  const int cap = detail::series_cap(f.sig);
  for (int k = 1;; ++k) {
    pw = pw * f;
    if (pw.is_zero()) break;
    if (k > cap) throw std::runtime_error("exp_nilpotent: series failed to terminate");
    pw = [&] {
      Element<R> t(pw.sig);
      for (const auto& [m, c] : pw.terms) t.add_term(m, ring_divide_int(c, k));
      return t;
    }();
    res += pw;
  }
  return res;
}

// log(f / Z(f)) = sum (-1)^(k-1)/k (f/Z - 1)^k; requires invertible Z(f).
template <class R>
Element<R> log_normalized(const Element<R>& f) {
  R z = f.z_part();
  if (!ring_is_invertible(z))
    throw std::domain_error("log_normalized: constant part not invertible");
  Element<R> g = f.scaled_ring(ring_inverse(z)) - Element<R>::unit(f.sig);
  Element<R> res(f.sig);
  Element<R> pw = Element<R>::unit(f.sig);
  const int cap = detail::series_cap(f.sig);
  for (int k = 1;; ++k) {
    pw = pw * g;
    if (pw.is_zero()) break;
    if (k > cap) throw std::runtime_error("log_normalized: series failed to terminate");
    Element<R> t(f.sig);
    for (const auto& [m, c] : pw.terms) {
      R v = ring_divide_int(c, k);
      t.add_term(m, (k % 2 == 0) ? -v : v);
    }
    res += t;
  }
  return res;
}

// f^{-1} = Z^{-1} sum (-(f/Z - 1))^k; requires invertible Z(f).
template <class R>
Element<R> inverse_invertible(const Element<R>& f) {
  R z = f.z_part();
  if (!ring_is_invertible(z))
    throw std::domain_error("inverse_invertible: constant part not invertible");
  Element<R> g = f.scaled_ring(ring_inverse(z)) - Element<R>::unit(f.sig);
  Element<R> res = Element<R>::unit(f.sig);
  Element<R> pw = Element<R>::unit(f.sig);
  const int cap = detail::series_cap(f.sig);
  for (int k = 1;; ++k) {
    pw = pw * g;
    if (pw.is_zero()) break;
    if (k > cap) throw std::runtime_error("inverse_invertible: series failed to terminate");
    if (k % 2 == 0)
      res += pw;
    else
      res -= pw;
  }
  return res.scaled_ring(ring_inverse(z));
}

// ---- coefficient-ring conversions -----------------------------------------------

template <class R2, class R, class F>
Element<R2> map_coefficients(const Element<R>& f, F&& fn) {
  Element<R2> e(f.sig);
  for (const auto& [m, c] : f.terms) e.add_term(m, fn(c));
  return e;
}

inline Element<Jet> to_jet(const Element<Scalar>& value, const Element<Scalar>& deriv) {
  value.check_same(deriv);
  Element<Jet> e(value.sig);
  for (const auto& [m, c] : value.terms) e.add_term(m, Jet{c, Scalar(0)});
  for (const auto& [m, c] : deriv.terms) e.add_term(m, Jet{Scalar(0), c});
  return e;
}
inline Element<Scalar> jet_value(const Element<Jet>& f) {
  return map_coefficients<Scalar>(f, [](const Jet& j) { return j.v; });
}
inline Element<Scalar> jet_deriv(const Element<Jet>& f) {
  return map_coefficients<Scalar>(f, [](const Jet& j) { return j.d; });
}

template <int K>
Element<Scalar> series_coefficient(const Element<Series<K>>& f, int k) {
  return map_coefficients<Scalar>(f, [&](const Series<K>& s) { return s.c.at(k); });
}

}  // namespace grwick
