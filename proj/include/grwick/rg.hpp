#pragma once

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/element.hpp"
#include "grwick/gaussian.hpp"

namespace grwick {

// Effective-interaction machinery: background-field integrals, fluctuation
// operators, and exact resolvent solves. Interactions live on copy 0 of a
// one-copy signature; auxiliary copies are appended as needed and integrated
// out again.

// ---- background-field integral ---------------------------------------------------

// W |-> log (1/Z) \int exp(W(psi + xi)) dmu_c(xi), normalized so the result
// vanishes at psi = 0. Z may involve coefficient generators; its scalar part
// must be invertible. Requires an even interaction on one copy; a constant
// part is dropped first.
template <class R>
Element<R> effective_interaction(const Element<R>& w, const CovarianceT<R>& c) {
  if (w.sig.copies != 1)
    throw std::invalid_argument("effective_interaction: expected a one-copy interaction");
  Element<R> w0 = w.without_z();
  if (!w0.is_even())
    throw std::invalid_argument("effective_interaction: interaction must be even");
  Element<R> shifted = substitute_sum(extend_copies(w0, 2), 0, {{0, Scalar(1)}, {1, Scalar(1)}});
  Element<R> integral = gaussian_integral(exp_nilpotent(shifted), c, 1);
  Element<R> z = evaluate_copy_zero(integral, 0);
  return log_normalized(integral * inverse_invertible(z));
}

// As effective_interaction, but also hands back the normalization Z (an
// element of the coefficient algebra, no copies).
template <class R>
std::pair<Element<R>, Element<R>> effective_interaction_with_z(const Element<R>& w,
                                                               const CovarianceT<R>& c) {
  if (w.sig.copies != 1)
    throw std::invalid_argument("effective_interaction: expected a one-copy interaction");
  Element<R> w0 = w.without_z();
  if (!w0.is_even())
    throw std::invalid_argument("effective_interaction: interaction must be even");
  Element<R> shifted = substitute_sum(extend_copies(w0, 2), 0, {{0, Scalar(1)}, {1, Scalar(1)}});
  Element<R> integral = gaussian_integral(exp_nilpotent(shifted), c, 1);
  Element<R> z = evaluate_copy_zero(integral, 0);
  Element<R> omega = log_normalized(integral * inverse_invertible(z));
  return {std::move(omega), drop_copy(z, 0)};
}

// Covariance-splitting step: returns w' with
//   wick_order(w', d) = effective_interaction(wick_order(w, c + d), c),
// i.e. the fluctuations over c are integrated out while the ordering
// covariance is traded from c + d down to d.
template <class R>
Element<R> effective_interaction_split(const Element<R>& w, const CovarianceT<R>& c,
                                       const CovarianceT<R>& d) {
  Element<R> om = effective_interaction(wick_order(w, c + d, 0), c);
  return unwick(om, d, 0);
}

// ---- Schwinger (generating) functional -------------------------------------------

// (1/Z) \int f exp(u) dmu_c over the single copy; f and u share the
// signature, the result lives on the coefficient algebra (no copies). The
// constant part of u cancels between numerator and denominator and is
// dropped.
template <class R>
Element<R> schwinger_direct(const Element<R>& f, const Element<R>& u, const CovarianceT<R>& c) {
  f.check_same(u);
  if (f.sig.copies != 1)
    throw std::invalid_argument("schwinger_direct: expected one-copy arguments");
  Element<R> boltz = exp_nilpotent(u.without_z());
  Element<R> num = gaussian_integral(f * boltz, c, 0);
  Element<R> den = gaussian_integral(boltz, c, 0);
  return num * inverse_invertible(den);
}

// ---- fluctuation operator --------------------------------------------------------

// Kernel of the fluctuation operator of the interaction u: on copies
// (xi = 0, eta = 1),
//   wick_order(exp(u(xi + eta) - u(xi)) - 1, c, eta).
template <class R>
Element<R> fluctuation_kernel(const Element<R>& u, const CovarianceT<R>& c) {
  if (u.sig.copies != 1)
    throw std::invalid_argument("fluctuation_kernel: expected a one-copy interaction");
  Element<R> ext = extend_copies(u.without_z(), 2);
  Element<R> diff = substitute_sum(ext, 0, {{0, Scalar(1)}, {1, Scalar(1)}}) - ext;
  Element<R> e = exp_nilpotent(diff) - Element<R>::unit(diff.sig);
  return wick_order(e, c, 1);
}

// Apply a two-copy fluctuation kernel to a one-copy argument:
//   f |-> \int kernel(xi, eta) f(eta) dmu_c(eta).
template <class R>
Element<R> fluctuation_apply(const Element<R>& kernel, const Element<R>& f,
                             const CovarianceT<R>& c) {
  if (kernel.sig.copies != 2)
    throw std::invalid_argument("fluctuation_apply: expected a two-copy kernel");
  if (f.sig.copies != 1 || f.sig.a_gens != kernel.sig.a_gens || f.sig.dim != kernel.sig.dim)
    throw std::invalid_argument("fluctuation_apply: argument signature mismatch");
  Element<R> f_eta = permute_copies(extend_copies(f, 2), {1, 0});
  return gaussian_integral(kernel * f_eta, c, 1);
}

// ---- kernel-driven fluctuation operator ------------------------------------------

// Difference kernel of an interaction u on copies (xi = 0, xi' = 1, eta = 2):
//   k(xi, xi', eta) = u(xi + xi' + eta) - u(xi + xi').
// Every term of the result touches eta.
template <class R>
Element<R> shift_difference_kernel(const Element<R>& u) {
  if (u.sig.copies != 1)
    throw std::invalid_argument("shift_difference_kernel: expected a one-copy interaction");
  Element<R> ext = extend_copies(u.without_z(), 3);
  Element<R> s3 =
      substitute_sum(ext, 0, {{0, Scalar(1)}, {1, Scalar(1)}, {2, Scalar(1)}});
  Element<R> s2 = substitute_sum(ext, 0, {{0, Scalar(1)}, {1, Scalar(1)}});
  return s3 - s2;
}

namespace detail {

// Shared tail of the kernel-driven operators: given g(xi, xi', eta) ordered
// in eta, integrate eta against f, then xi', and order the result in xi.
template <class R>
Element<R> kernel_operator_tail(const Element<R>& ordered, const Element<R>& f,
                                const CovarianceT<R>& c) {
  Element<R> f_eta = permute_copies(extend_copies(f, 3), {2, 1, 0});
  Element<R> g = gaussian_integral(ordered * f_eta, c, 2);
  g = gaussian_integral(g, c, 1);
  return wick_order(g, c, 0);
}

}  // namespace detail

// Fluctuation operator driven by a three-copy kernel k(xi, xi', eta):
//   f |-> wick_order_xi \int\int (exp(wick_order(k, c, xi')) - 1
//                                 ordered in eta) f(eta) dmu_c(xi') dmu_c(eta).
// The exponential requires wick_order(k, c, xi') to have no constant part
// (guaranteed when every term of k touches eta).
template <class R>
Element<R> kernel_fluctuation_apply(const Element<R>& k, const CovarianceT<R>& c,
                                    const Element<R>& f) {
  if (k.sig.copies != 3)
    throw std::invalid_argument("kernel_fluctuation_apply: expected a three-copy kernel");
  if (f.sig.copies != 1 || f.sig.a_gens != k.sig.a_gens || f.sig.dim != k.sig.dim)
    throw std::invalid_argument("kernel_fluctuation_apply: argument signature mismatch");
  Element<R> kw = wick_order(k, c, 1);
  Element<R> e = exp_nilpotent(kw) - Element<R>::unit(kw.sig);
  return detail::kernel_operator_tail(wick_order(e, c, 2), f, c);
}

// Multilinear slice of kernel_fluctuation_apply: the exponential is replaced
// by the plain product of the xi'-ordered kernels.
template <class R>
Element<R> multi_kernel_apply(const std::vector<Element<R>>& ks, const CovarianceT<R>& c,
                              const Element<R>& f) {
  if (ks.empty()) throw std::invalid_argument("multi_kernel_apply: no kernels");
  Element<R> prod = Element<R>::unit(ks.front().sig);
  for (const Element<R>& k : ks) {
    if (k.sig.copies != 3)
      throw std::invalid_argument("multi_kernel_apply: expected three-copy kernels");
    prod = prod * wick_order(k, c, 1);
  }
  return detail::kernel_operator_tail(wick_order(prod, c, 2), f, c);
}

// ---- exact resolvents ------------------------------------------------------------

// Right-coefficient decomposition of a one-copy element along the field
// monomials: f = sum_w e_w * comps[w], where e_w is the ascending product of
// the copy-0 generators in w and comps[w] lies in the coefficient algebra.
template <class R>
std::vector<Element<R>> field_monomial_components(const Element<R>& f) {
  const Signature& s = f.sig;
  if (s.copies != 1)
    throw std::invalid_argument("field_monomial_components: expected one copy");
  if (s.dim > 16)
    throw std::invalid_argument("field_monomial_components: dimension too large");
  std::vector<Element<R>> comps(std::size_t(1) << s.dim, Element<R>(s));
  Mask vm_all = s.copy_mask(0);
  for (const auto& [mask, coeff] : f.terms) {
    Mask vm = mask & vm_all;
    Mask am = mask.without(vm);
    std::size_t w = 0;
    for (int b : vm.bits()) w |= std::size_t(1) << (b - s.a_gens);
    R c = coeff;
    if ((am.popcount() * vm.popcount()) & 1) c = -c;
    comps[w].add_term(am, std::move(c));
  }
  return comps;
}

template <class R>
Element<R> assemble_field_monomials(const Signature& s, const std::vector<Element<R>>& comps) {
  Element<R> res(s);
  for (std::size_t w = 0; w < comps.size(); ++w) {
    if (comps[w].is_zero()) continue;
    Mask vm;
    for (int i = 0; i < s.dim; ++i)
      if (w & (std::size_t(1) << i)) vm.set(s.v_bit(0, i));
    Element<R> mono(s);
    mono.add_term(vm, ring_one<R>());
    res += mono * comps[w];
  }
  return res;
}

// Solve (1 - op) x = f exactly for a map `op` on one-copy elements that is
// linear over right coefficient-algebra multiplication (any map built from
// products by fixed kernels and Gaussian integrals over other copies is).
// The system is Gaussian elimination over the coefficient algebra; a pivot
// is usable when its scalar part is invertible.
template <class R, class Op>
Element<R> solve_unit_minus(Op&& op, const Element<R>& f) {
  const Signature& s = f.sig;
  if (s.copies != 1) throw std::invalid_argument("solve_unit_minus: expected one copy");
  const std::size_t n = std::size_t(1) << s.dim;
  std::vector<std::vector<Element<R>>> m(n, std::vector<Element<R>>(n, Element<R>(s)));
  for (std::size_t w = 0; w < n; ++w) {
    Mask vm;
    for (int i = 0; i < s.dim; ++i)
      if (w & (std::size_t(1) << i)) vm.set(s.v_bit(0, i));
    Element<R> mono(s);
    mono.add_term(vm, ring_one<R>());
    std::vector<Element<R>> col = field_monomial_components(op(mono));
    for (std::size_t u = 0; u < n; ++u) m[u][w] = -col[u];
    m[w][w] += Element<R>::unit(s);
  }
  std::vector<Element<R>> rhs = field_monomial_components(f);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (ring_is_invertible(m[i][k].z_part())) {
        piv = i;
        break;
      }
    }
    if (piv == n) throw std::domain_error("solve_unit_minus: no invertible pivot");
    std::swap(m[piv], m[k]);
    std::swap(rhs[piv], rhs[k]);
    Element<R> inv = inverse_invertible(m[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      Element<R> l = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= l * m[k][j];
      rhs[i] -= l * rhs[k];
    }
  }
  std::vector<Element<R>> x(n, Element<R>(s));
  for (std::size_t k = n; k-- > 0;) {
    Element<R> acc = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= m[k][j] * x[j];
    x[k] = inverse_invertible(m[k][k]) * acc;
  }
  return assemble_field_monomials(s, x);
}

// Schwinger functional through the fluctuation resolvent:
//   f |-> \int (1 - fluctuation operator of u)^{-1}(f) dmu_c.
template <class R>
Element<R> schwinger_resolvent(const Element<R>& f, const Element<R>& u,
                               const CovarianceT<R>& c) {
  f.check_same(u);
  Element<R> kernel = fluctuation_kernel(u, c);
  Element<R> x = solve_unit_minus(
      [&](const Element<R>& g) { return fluctuation_apply(kernel, g, c); }, f);
  return gaussian_integral(x, c, 0);
}

// x with (1 - kernel_fluctuation_apply(k, c, .)) x = f.
template <class R>
Element<R> kernel_resolvent_solve(const Element<R>& k, const CovarianceT<R>& c,
                                  const Element<R>& f) {
  return solve_unit_minus(
      [&](const Element<R>& g) { return kernel_fluctuation_apply(k, c, g); }, f);
}

// Neumann-series resolvent (1 - op)^{-1} f = sum_j op^j f for maps that are
// eventually zero on iteration (e.g. when each application raises the order
// in a truncated series ring). Throws if the series fails to terminate.
template <class R, class Op>
Element<R> neumann_resolvent(Op&& op, const Element<R>& f, int max_terms) {
  Element<R> acc = f;
  Element<R> t = f;
  for (int j = 0; j < max_terms; ++j) {
    t = op(t);
    if (t.is_zero()) return acc;
    acc += t;
  }
  throw std::runtime_error("neumann_resolvent: series failed to terminate");
}

}  // namespace grwick
