#pragma once

#include <set>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/element.hpp"

namespace grwick {

// Grassmann Gaussian integration and Wick ordering. The integral over one
// copy maps each monomial to the Pfaffian of the covariance restricted to
// that copy's indices, after pulling the copy's generators to the right of
// the rest of the monomial (left-linearity over everything else).

template <class R>
Element<R> gaussian_integral(const Element<R>& f, const CovarianceT<R>& c, int copy) {
  const Signature& s = f.sig;
  if (copy < 0 || copy >= s.copies) throw std::out_of_range("gaussian_integral: no such copy");
  if (c.dim != s.dim) throw std::invalid_argument("gaussian_integral: dimension mismatch");
  PfaffianTable<R> tab(c);
  Mask cm = s.copy_mask(copy);
  const int start = s.a_gens + copy * s.dim;
  Signature out(s.a_gens, s.dim, s.copies - 1);
  Element<R> res(out);
  for (const auto& [mask, coeff] : f.terms) {
    Mask inside = mask & cm;
    if (inside.popcount() & 1) continue;  // odd moment vanishes
    std::uint64_t subset = 0;
    for (int b : inside.bits()) subset |= std::uint64_t(1) << (b - start);
    R val = coeff * tab.pf(subset);
    if (ring_is_zero(val)) continue;
    Mask rest = mask.without(inside);
    if (merge_parity_odd(rest, inside)) val = -val;
    Mask nm;
    for (int b : rest.bits()) nm.set(b < start ? b : b - s.dim);
    res.add_term(nm, std::move(val));
  }
  return res;
}

namespace detail {

// Shared core of Wick ordering: convolve one copy with an auxiliary copy
// integrated against the given covariance (the covariance sign decides
// between ordering and its inverse).
template <class R>
Element<R> wick_convolve(const Element<R>& f, const CovarianceT<R>& c, int copy) {
  const Signature& s = f.sig;
  int aux = s.copies;  // appended copy occupies the highest bits
  Element<R> g = extend_copies(f, s.copies + 1);
  g = substitute_sum(g, copy, {{copy, Scalar(1)}, {aux, Scalar(1)}});
  return gaussian_integral(g, c, aux);
}

}  // namespace detail

template <class R>
Element<R> wick_order(const Element<R>& f, const CovarianceT<R>& c, const std::set<int>& copies) {
  Element<R> g = f;
  CovarianceT<R> neg = -c;
  for (int copy : copies) g = detail::wick_convolve(g, neg, copy);
  return g;
}

template <class R>
Element<R> unwick(const Element<R>& f, const CovarianceT<R>& c, const std::set<int>& copies) {
  Element<R> g = f;
  for (int copy : copies) g = detail::wick_convolve(g, c, copy);
  return g;
}

template <class R>
Element<R> wick_order(const Element<R>& f, const CovarianceT<R>& c, int copy) {
  return wick_order(f, c, std::set<int>{copy});
}
template <class R>
Element<R> unwick(const Element<R>& f, const CovarianceT<R>& c, int copy) {
  return unwick(f, c, std::set<int>{copy});
}

// Left derivative with respect to one generator: delete the generator from
// each monomial containing it, with sign (-1)^(number of generators that
// precede it in the canonical order).
template <class R>
Element<R> left_derivative(const Element<R>& f, int global_bit) {
  Element<R> res(f.sig);
  for (const auto& [mask, c] : f.terms) {
    if (!mask.test(global_bit)) continue;
    Mask nm = mask;
    nm.reset(global_bit);
    res.add_term(nm, (mask.count_below(global_bit) & 1) ? -c : c);
  }
  return res;
}

template <class R>
Element<R> left_derivative_v(const Element<R>& f, int copy, int i) {
  return left_derivative(f, f.sig.v_bit(copy, i));
}

// Product of generators of one copy in the listed order (repeats give 0).
template <class R>
Element<R> monomial_of(const Signature& s, int copy, const std::vector<int>& idx) {
  Element<R> e = Element<R>::unit(s);
  for (int i : idx) e = e * Element<R>::v_gen(s, copy, i);
  return e;
}

// Mixed moment of two Wick monomials:
//   integral of :xi_{i_1}...xi_{i_n}: times :xi_{j_m}...xi_{j_1}: ,
// the second factor multiplied in reverse order. Equals the determinant of
// [C(i_k, j_l)] when the lists have equal length, and 0 otherwise.
inline Scalar moment_wick_pair(const std::vector<int>& is, const std::vector<int>& js,
                               const Covariance& c) {
  Signature s(0, c.dim, 1);
  Element<Scalar> a = monomial_of<Scalar>(s, 0, is);
  std::vector<int> rev(js.rbegin(), js.rend());
  Element<Scalar> b = monomial_of<Scalar>(s, 0, rev);
  Element<Scalar> w = wick_order(a, c, 0) * wick_order(b, c, 0);
  Element<Scalar> val = gaussian_integral(w, c, 0);
  return val.z_part();
}

// Exact check of the source-field identity: with sources z_g realized as
// coefficient generators,
//   integral of exp(sum_i xi_i z_i) d mu_C  ==  exp(-1/2 sum_{ij} z_i C_{ij} z_j).
inline bool generating_identity_check(const Covariance& c, int zeta_count) {
  int n = std::min(zeta_count, c.dim);
  Signature s(zeta_count, c.dim, 1);
  Element<Scalar> lin(s);
  for (int i = 0; i < n; ++i)
    lin += Element<Scalar>::v_gen(s, 0, i) * Element<Scalar>::a_gen(s, i);
  Element<Scalar> lhs = gaussian_integral(exp_nilpotent(lin), c, 0);

  Signature s0(zeta_count, c.dim, 0);
  Element<Scalar> quad(s0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      quad += (Element<Scalar>::a_gen(s0, i) * Element<Scalar>::a_gen(s0, j)).scaled(c.at(i, j));
  Element<Scalar> rhs = exp_nilpotent(quad.scaled(Scalar::rational(-1, 2)));
  return lhs == rhs;
}

// d/dk of the Gaussian integral along the linear family C0 + k*C1, at k = 0,
// computed through jet coefficients and through the double-derivative
// formula -1/2 sum_{ij} C1_{ij} integral of d/dxi_i d/dxi_j f; both routes
// must agree exactly.
inline Element<Scalar> jet_gaussian_derivative(const Element<Scalar>& f, const Covariance& c0,
                                               const Covariance& c1, int copy = 0) {
  Element<Jet> fj = to_jet(f, Element<Scalar>::zero(f.sig));
  Element<Jet> ij = gaussian_integral(fj, jet_covariance(c0, c1), copy);
  Element<Scalar> via_jet = jet_deriv(ij);

  Signature out(f.sig.a_gens, f.sig.dim, f.sig.copies - 1);
  Element<Scalar> via_formula(out);
  for (int i = 0; i < f.sig.dim; ++i) {
    for (int j = 0; j < f.sig.dim; ++j) {
      if (i == j || c1.at(i, j).is_zero()) continue;
      Element<Scalar> dd = left_derivative_v(left_derivative_v(f, copy, j), copy, i);
      via_formula += gaussian_integral(dd, c0, copy).scaled(c1.at(i, j));
    }
  }
  via_formula = via_formula.scaled(Scalar::rational(-1, 2));
  if (!(via_jet == via_formula))
    throw std::logic_error("jet_gaussian_derivative: route disagreement");
  return via_jet;
}

}  // namespace grwick
