#include "grwick/bound_suite.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <thread>

#include "grwick/fock.hpp"
#include "grwick/gaussian.hpp"
#include "grwick/instance_gen.hpp"
#include "grwick/rg.hpp"
#include "grwick/seminorm.hpp"
#include "grwick/tensor.hpp"

namespace grwick {

namespace {

using E = Element<Scalar>;

struct CovDraw {
  Covariance c;
  double b = 1.0;  // integral bound to use for this covariance
};

CovDraw draw_cov(Rng& rng, const BoundContext& ctx) {
  if (ctx.fock_covariance) {
    for (;;) {
      FockSetup fs = random_fock_setup(rng, 2, ctx.dim, true);
      double s = fs.sup_norm();
      if (s > 0) return {time_pairing_covariance(fs), 2.0 * s};
    }
  }
  Covariance c = ctx.float_scalars ? random_float_covariance(rng, ctx.dim)
                                   : random_covariance(rng, ctx.dim);
  return {c, measured_integral_bound(c)};
}

// as draw_cov, but insists on a nonzero contraction constant
CovDraw draw_cov_nonzero(Rng& rng, const BoundContext& ctx) {
  for (;;) {
    CovDraw d = draw_cov(rng, ctx);
    if (covariance_l1_linf(d.c) > 0) return d;
  }
}

NormElement cfrak(const Covariance& c) {
  return NormElement::scalar(0, covariance_l1_linf(c));
}

ElementSpec generic_spec() {
  ElementSpec sp;
  sp.terms = 3;
  sp.allow_constant = true;
  sp.max_degree = 4;
  return sp;
}

ElementSpec even_spec() {
  ElementSpec sp;
  sp.terms = 3;
  sp.even_only = true;
  sp.max_degree = 4;
  return sp;
}

Element<Jet> jet_pair(const E& v, const E& d) {
  Element<Jet> out = constant_jet(v);
  out += map_coefficients<Jet>(d, [](const Scalar& s) { return Jet{Scalar(0), s}; });
  return out;
}

E anneal_gate(E w, double alpha_at, double b, const NormElement& cf,
              const WeightAssignment& wgt, double threshold) {
  return anneal_until(std::move(w), [&](const E& x) {
    NormElement n = big_n(x, alpha_at, b, cf, wgt);
    return n.is_finite() && n.constant_term() < threshold;
  });
}

double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// contraction of adjacent field groups against a product of homogeneous
// elements, compared with the product of their seminorms
BoundInstance run_contraction_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  Signature s(ctx.a_gens, ctx.dim, 3);
  int maxdeg = std::min(2, ctx.dim);
  int n1 = static_cast<int>(rng.range(0, 1));
  int n2 = static_cast<int>(rng.range(1, maxdeg));
  int p1 = static_cast<int>(rng.range(0, 1));
  int p3 = static_cast<int>(rng.range(1, maxdeg));
  int m1 = static_cast<int>(rng.range(0, std::min(1, ctx.a_gens)));
  int m2 = static_cast<int>(rng.range(0, std::min(1, ctx.a_gens)));
  E f1 = random_homogeneous(rng, s, m1, {n1, n2, 0}, 2);
  E f2 = random_homogeneous(rng, s, m2, {p1, 0, p3}, 2);
  E g = contract_fields(f1 * f2, 1, 2, dc.c);
  NormElement lhs = component_norm(g, {n1 + p1, n2 - 1, p3 - 1}, wgt);
  NormElement rhs = component_norm(f1, {n1, n2, 0}, wgt) *
                    component_norm(f2, {p1, 0, p3}, wgt) * cfrak(dc.c);
  return {lhs, rhs.scaled(p3)};
}

// seminorm of the Gaussian integral of a partially Wick-ordered element with
// its first field groups merged, against b^(merged degree) times the seminorm
BoundInstance run_wick_integral_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  Signature s(ctx.a_gens, ctx.dim, 3);
  int sw = static_cast<int>(rng.range(0, 1));
  int t = static_cast<int>(rng.range(std::max(sw, 1), 2));
  std::vector<int> n(3);
  int merged = 0;
  for (int i = 0; i < 3; ++i) {
    int cap = i < t ? std::min(2, ctx.dim - merged) : std::min(2, ctx.dim);
    n[i] = cap > 0 ? static_cast<int>(rng.range(0, cap)) : 0;
    if (i < t) merged += n[i];
  }
  int m = static_cast<int>(rng.range(0, std::min(1, ctx.a_gens)));
  E f = random_homogeneous(rng, s, m, n, 2);
  std::set<int> wset;
  for (int i = 0; i < sw; ++i) wset.insert(i);
  E ft = wset.empty() ? f : wick_order(f, dc.c, wset);
  for (int j = t - 1; j >= 1; --j) ft = diagonal(ft, 0, j);
  E integ = gaussian_integral(ft, dc.c, 0);
  std::vector<int> rest(n.begin() + t, n.end());
  NormElement lhs = component_norm(integ, rest, wgt);
  NormElement rhs = component_norm(f, n, wgt).scaled(pow_int(dc.b, merged));
  return {lhs, rhs};
}

// measured integral bound of a real linear combination of covariances,
// against the weighted combination of the individual bounds
BoundInstance run_mix_integral_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw d1 = draw_cov(rng, ctx);
  CovDraw d2 = draw_cov(rng, ctx);
  Scalar l1 = rng.nonzero_rational(2, 2);
  Scalar l2 = rng.nonzero_rational(2, 2);
  Covariance mix = d1.c.scaled(l1) + d2.c.scaled(l2);
  double bound = std::sqrt(std::abs(l1.to_double())) * d1.b +
                 std::sqrt(std::abs(l2.to_double())) * d2.b;
  return {NormElement::scalar(0, measured_integral_bound(mix)),
          NormElement::scalar(0, bound)};
}

// diagonal Gaussian integral measured in the weighted norm, with the norm run
// at b large enough that the covariance bound carries a factor eps = alpha/2
BoundInstance run_diagonal_integral_bound(Rng& rng, const BoundContext& ctx,
                                          bool vanishing) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  double eps = ctx.alpha / 2;
  double b = dc.b / eps;
  NormElement cf = cfrak(dc.c);
  Signature s(ctx.a_gens, ctx.dim, 2);
  int sw = static_cast<int>(rng.range(0, 1));
  int t = static_cast<int>(rng.range(std::max(sw, 1), 2));
  E f(s);
  if (vanishing) {
    for (int j = 0; j < t; ++j) {
      ElementSpec sp;
      sp.terms = 2;
      sp.max_degree = 4;
      sp.touch_copy = j;
      f += random_element(rng, s, sp);
    }
  } else {
    f = random_element(rng, s, generic_spec());
  }
  std::set<int> wset;
  for (int i = 0; i < sw; ++i) wset.insert(i);
  E ft = wset.empty() ? f : wick_order(f, dc.c, wset);
  for (int j = t - 1; j >= 1; --j) ft = diagonal(ft, 0, j);
  E integ = gaussian_integral(ft, dc.c, 0);
  NormElement lhs = big_n(integ, ctx.alpha, b, cf, wgt);
  NormElement rhs = big_n(f, ctx.alpha, b, cf, wgt);
  if (vanishing) rhs = rhs.scaled(eps * eps / (ctx.alpha * ctx.alpha));
  return {lhs, rhs};
}

// norm transport between an element and its Wick ordering at doubled weight,
// with the norm run at b large enough for an alpha-fold covariance margin
BoundInstance run_wick_transport_bound(Rng& rng, const BoundContext& ctx, bool order) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  double b = dc.b / ctx.alpha;
  NormElement cf = cfrak(dc.c);
  Signature s(ctx.a_gens, ctx.dim, 1);
  E f = random_element(rng, s, generic_spec());
  E wf = wick_order(f, dc.c, 0);
  const E& lo = order ? wf : f;
  const E& hi = order ? f : wf;
  return {big_n(lo, ctx.alpha, b, cf, wgt), big_n(hi, 2 * ctx.alpha, b, cf, wgt)};
}

// distance between an element and its transport between two Wick orderings
BoundInstance run_rewick_difference_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw d1 = draw_cov(rng, ctx);
  CovDraw d2 = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  double eps = ctx.alpha / 2;
  double b = measured_integral_bound(d1.c - d2.c) / eps;
  NormElement cf = cfrak(d1.c);
  Signature s(ctx.a_gens, ctx.dim, 1);
  E f = random_element(rng, s, generic_spec());
  E fp = unwick(wick_order(f, d2.c, 0), d1.c, 0);
  NormElement lhs = big_n(fp - f, ctx.alpha, b, cf, wgt);
  NormElement rhs = big_n(f, 2 * ctx.alpha, b, cf, wgt)
                        .scaled(2 * eps * eps / (ctx.alpha * ctx.alpha));
  return {lhs, rhs};
}

// derivative of the inverse Wick transport along a covariance line
BoundInstance run_unwick_derivative_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw d0 = draw_cov(rng, ctx);
  Covariance c1 = random_covariance(rng, ctx.dim);
  double bp = measured_integral_bound(c1);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(d0.c);
  Signature s(ctx.a_gens, ctx.dim, 1);
  E f = random_element(rng, s, generic_spec());
  E deriv = jet_deriv(unwick(constant_jet(f), jet_covariance(d0.c, c1), 0));
  double a1 = ctx.alpha - 1;
  NormElement lhs = big_n(deriv, ctx.alpha, d0.b, cf, wgt);
  NormElement rhs = big_n(f, 2 * ctx.alpha, d0.b, cf, wgt)
                        .scaled((bp / d0.b) * (bp / d0.b) / (a1 * a1));
  return {lhs, rhs};
}

// one application of the fluctuation kernel operator, in norm
BoundInstance run_kernel_series_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s3(ctx.a_gens, ctx.dim, 3);
  Signature s1(ctx.a_gens, ctx.dim, 1);
  ElementSpec ks;
  ks.terms = 3;
  ks.even_only = true;
  ks.touch_copy = 2;
  ks.max_degree = 4;
  E k = anneal_gate(random_element(rng, s3, ks), ctx.alpha, dc.b, cf, wgt, a2 / 2);
  E f = random_element(rng, s1, generic_spec());
  E fp = unwick(kernel_fluctuation_apply(k, dc.c, wick_order(f, dc.c, 0)), dc.c, 0);
  NormElement x2 = big_n(k, ctx.alpha, dc.b, cf, wgt).scaled(2 / a2);
  NormElement lhs = big_n(fp, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs =
      x2 * nv_geometric_inverse(1.0, x2) * big_n(f, ctx.alpha, dc.b, cf, wgt);
  return {lhs, rhs};
}

// remainder of the resolvent of the fluctuation kernel operator, in norm
BoundInstance run_resolvent_remainder_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s3(ctx.a_gens, ctx.dim, 3);
  Signature s1(ctx.a_gens, ctx.dim, 1);
  ElementSpec ks;
  ks.terms = 3;
  ks.even_only = true;
  ks.touch_copy = 2;
  ks.max_degree = 4;
  E k = anneal_gate(random_element(rng, s3, ks), ctx.alpha, dc.b, cf, wgt, a2 / 4);
  E f = random_element(rng, s1, generic_spec());
  E wf = wick_order(f, dc.c, 0);
  E fp = unwick(kernel_resolvent_solve(k, dc.c, wf) - wf, dc.c, 0);
  NormElement x = big_n(k, ctx.alpha, dc.b, cf, wgt);
  NormElement lhs = big_n(fp, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs = x.scaled(2 / a2) * nv_geometric_inverse(1.0, x.scaled(4 / a2)) *
                    big_n(f, ctx.alpha, dc.b, cf, wgt);
  return {lhs, rhs};
}

// distance of the interacting average from the free evaluation at zero
BoundInstance run_schwinger_distance_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E u = anneal_gate(random_element(rng, s, even_spec()), 4 * ctx.alpha, dc.b, cf, wgt,
                    a2 / 4);
  E f = random_element(rng, s, generic_spec());
  E avg = schwinger_direct(wick_order(f, dc.c, 0), wick_order(u, dc.c, 0), dc.c);
  E diff = avg - drop_copy(evaluate_copy_zero(f, 0), 0);
  NormElement x = big_n(u, 4 * ctx.alpha, dc.b, cf, wgt);
  NormElement lhs = big_n(diff, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs = x.scaled(2 / a2) * nv_geometric_inverse(1.0, x.scaled(4 / a2)) *
                    big_n(f, ctx.alpha, dc.b, cf, wgt);
  return {lhs, rhs};
}

// distance of the effective interaction from the bare interaction
BoundInstance run_rg_map_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w = anneal_gate(random_element(rng, s, even_spec()), 8 * ctx.alpha, dc.b, cf, wgt,
                    a2 / 4);
  E om = effective_interaction(wick_order(w, dc.c, 0), dc.c);
  NormElement x = big_n(w, 8 * ctx.alpha, dc.b, cf, wgt);
  NormElement lhs = big_n(om - w, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs =
      (x * x).scaled(2 / a2) * nv_geometric_inverse(1.0, x.scaled(4 / a2));
  return {lhs, rhs};
}

// same distance when the output is re-ordered with respect to a second
// covariance, integrating only the first
BoundInstance run_rewick_rg_map_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  CovDraw dd = draw_cov(rng, ctx);
  double b = std::max(dc.b, dd.b);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w = anneal_gate(random_element(rng, s, even_spec()), 32 * ctx.alpha, b, cf, wgt, a2);
  E wp = effective_interaction_split(w, dc.c, dd.c);
  NormElement x = big_n(w, 32 * ctx.alpha, b, cf, wgt);
  NormElement lhs = big_n(wp - w, ctx.alpha, b, cf, wgt);
  NormElement rhs =
      (x * x).scaled(1 / (2 * a2)) * nv_geometric_inverse(1.0, x.scaled(1 / a2));
  return {lhs, rhs};
}

// Gaussian integral of a product of jointly Wick-ordered factors, each
// vanishing when the integrated copy is set to zero
BoundInstance run_wick_product_integral_bound(Rng& rng, const BoundContext& ctx,
                                              bool factorial) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  Signature s(ctx.a_gens, ctx.dim, 2);
  int l = static_cast<int>(rng.range(1, 2));
  E prod = E::unit(s);
  NormElement nf = NormElement::scalar(0, 1.0);
  for (int i = 0; i < l; ++i) {
    ElementSpec sp;
    sp.terms = 2;
    sp.max_degree = 4;
    sp.touch_copy = 0;
    E fi = random_element(rng, s, sp);
    prod = prod * fi;
    nf = nf * big_n(fi, ctx.alpha, dc.b, cf, wgt);
  }
  E f = random_element(rng, s, generic_spec());
  E p = wick_order(prod, dc.c, std::set<int>{0});
  E fw = wick_order(f, dc.c, std::set<int>{0});
  E g = gaussian_integral(p * fw, dc.c, 0);
  NormElement lhs = big_n(g, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs = big_n(f, ctx.alpha, dc.b, cf, wgt) * nf;
  double fact = 1;
  for (int i = 2; i <= l; ++i) fact *= i;
  double scale = factorial ? fact / pow_int(ctx.alpha, l)
                           : pow_int(static_cast<double>(l), l) /
                                 pow_int(ctx.alpha, 2 * l);
  return {lhs, rhs.scaled(scale)};
}

// first-order response of the re-ordered effective interaction when both the
// interaction and both covariances move along a line
BoundInstance run_jet_flow_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc0 = draw_cov_nonzero(rng, ctx);
  CovDraw dd0 = draw_cov(rng, ctx);
  Covariance c1 = random_covariance(rng, ctx.dim);
  Covariance d1 = random_covariance(rng, ctx.dim);
  double b = 2 * std::max(dc0.b, dd0.b);
  double bp = 2 * measured_integral_bound(d1);
  double mu = covariance_l1_linf(dc0.c);
  double cp = covariance_l1_linf(c1);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = NormElement::scalar(0, mu);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w0 = anneal_gate(random_element(rng, s, even_spec()), 32 * ctx.alpha, b, cf, wgt, a2);
  E w1 = random_element(rng, s, even_spec());
  Element<Jet> wjet = jet_pair(w0, w1);
  Element<Jet> tilde = effective_interaction_split(wjet, jet_covariance(dc0.c, c1),
                                                   jet_covariance(dd0.c, d1));
  E deriv = jet_deriv(tilde - wjet);
  NormElement x = big_n(w0, 32 * ctx.alpha, b, cf, wgt);
  NormElement geo = nv_geometric_inverse(1.0, x.scaled(1 / a2));
  NormElement lhs = big_n(deriv, ctx.alpha, b, cf, wgt);
  NormElement rhs =
      x.scaled(1 / (2 * a2)) * geo * big_n(w1, 8 * ctx.alpha, b, cf, wgt) +
      ((x * x).scaled(1 / (2 * a2)) * geo)
          .scaled(cp / (4 * mu) + (bp / b) * (bp / b));
  return {lhs, rhs};
}

// first-order response of the effective interaction to a perturbed
// interaction at a fixed covariance
BoundInstance run_perturbation_derivative_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w0 = anneal_gate(random_element(rng, s, even_spec()), 8 * ctx.alpha, dc.b, cf, wgt,
                     a2 / 4);
  E w1 = random_element(rng, s, even_spec());
  Element<Jet> wjet = jet_pair(w0, w1);
  CovarianceT<Jet> cj = constant_jet_covariance(dc.c);
  Element<Jet> tilde = effective_interaction(wick_order(wjet, cj, 0), cj);
  E deriv = jet_deriv(tilde - wjet);
  NormElement x = big_n(w0, 8 * ctx.alpha, dc.b, cf, wgt);
  NormElement lhs = big_n(deriv, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs = x.scaled(2 / a2) * nv_geometric_inverse(1.0, x.scaled(4 / a2)) *
                    big_n(w1, 2 * ctx.alpha, dc.b, cf, wgt);
  return {lhs, rhs};
}

// as above, with the output re-ordered with respect to a second covariance
BoundInstance run_perturbation_derivative_rewick_bound(Rng& rng,
                                                       const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  CovDraw dd = draw_cov(rng, ctx);
  double b = std::max(dc.b, dd.b);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w0 = anneal_gate(random_element(rng, s, even_spec()), 32 * ctx.alpha, b, cf, wgt, a2);
  E w1 = random_element(rng, s, even_spec());
  Element<Jet> wjet = jet_pair(w0, w1);
  Element<Jet> tilde = effective_interaction_split(wjet, constant_jet_covariance(dc.c),
                                                   constant_jet_covariance(dd.c));
  E deriv = jet_deriv(tilde - wjet);
  NormElement x = big_n(w0, 32 * ctx.alpha, b, cf, wgt);
  NormElement lhs = big_n(deriv, ctx.alpha, b, cf, wgt);
  NormElement rhs = x.scaled(1 / (2 * a2)) *
                    nv_geometric_inverse(1.0, x.scaled(1 / a2)) *
                    big_n(w1, 8 * ctx.alpha, b, cf, wgt);
  return {lhs, rhs};
}

// bilinear first-derivative pairing against a covariance direction
BoundInstance run_bilinear_derivative_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov_nonzero(rng, ctx);
  Covariance c1 = random_covariance(rng, ctx.dim);
  double mu = covariance_l1_linf(dc.c);
  double cp = covariance_l1_linf(c1);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = NormElement::scalar(0, mu);
  Signature s(ctx.a_gens, ctx.dim, 1);
  E f = random_element(rng, s, generic_spec());
  E g = random_element(rng, s, generic_spec());
  E acc(s);
  for (int i = 0; i < ctx.dim; ++i)
    for (int j = 0; j < ctx.dim; ++j) {
      if (c1.at(i, j).is_zero()) continue;
      acc += (left_derivative_v(f, 0, i) * left_derivative_v(g, 0, j)).scaled(c1.at(i, j));
    }
  NormElement lhs = big_n(acc, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs = (big_n(f, 2 * ctx.alpha, dc.b, cf, wgt) *
                     big_n(g, 2 * ctx.alpha, dc.b, cf, wgt))
                        .scaled(cp / (mu * ctx.alpha * ctx.alpha));
  return {lhs, rhs};
}

// first-order response of the effective interaction to a moving integrated
// covariance, at a fixed interaction
BoundInstance run_covariance_derivative_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov_nonzero(rng, ctx);
  Covariance c1 = random_covariance(rng, ctx.dim);
  double mu = covariance_l1_linf(dc.c);
  double cp = covariance_l1_linf(c1);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = NormElement::scalar(0, mu);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w = anneal_gate(random_element(rng, s, even_spec()), 8 * ctx.alpha, dc.b, cf, wgt,
                    a2 / 4);
  CovarianceT<Jet> cj = jet_covariance(dc.c, c1);
  Element<Jet> tilde = effective_interaction(wick_order(constant_jet(w), cj, 0), cj);
  E deriv = jet_deriv(tilde);
  NormElement x = big_n(w, 8 * ctx.alpha, dc.b, cf, wgt);
  NormElement lhs = big_n(deriv, ctx.alpha, dc.b, cf, wgt);
  NormElement rhs = ((x * x).scaled(1 / (2 * a2)) *
                     nv_geometric_inverse(1.0, x.scaled(4 / a2)))
                        .scaled(cp / mu);
  return {lhs, rhs};
}

// as above, with the output re-ordered with respect to a fixed second
// covariance
BoundInstance run_covariance_derivative_rewick_bound(Rng& rng,
                                                     const BoundContext& ctx) {
  CovDraw dc = draw_cov_nonzero(rng, ctx);
  CovDraw dd = draw_cov(rng, ctx);
  Covariance c1 = random_covariance(rng, ctx.dim);
  double b = std::max(dc.b, dd.b);
  double mu = covariance_l1_linf(dc.c);
  double cp = covariance_l1_linf(c1);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = NormElement::scalar(0, mu);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w = anneal_gate(random_element(rng, s, even_spec()), 32 * ctx.alpha, b, cf, wgt, a2);
  Element<Jet> tilde = effective_interaction_split(
      constant_jet(w), jet_covariance(dc.c, c1), constant_jet_covariance(dd.c));
  E deriv = jet_deriv(tilde);
  NormElement x = big_n(w, 32 * ctx.alpha, b, cf, wgt);
  NormElement lhs = big_n(deriv, ctx.alpha, b, cf, wgt);
  NormElement rhs = ((x * x).scaled(1 / (8 * a2)) *
                     nv_geometric_inverse(1.0, x.scaled(1 / a2)))
                        .scaled(cp / mu);
  return {lhs, rhs};
}

// first-order response of the effective interaction to a moving re-ordering
// covariance, at a fixed interaction and integrated covariance
BoundInstance run_wick_covariance_derivative_bound(Rng& rng, const BoundContext& ctx) {
  CovDraw dc = draw_cov(rng, ctx);
  CovDraw dd0 = draw_cov(rng, ctx);
  Covariance d1 = random_covariance(rng, ctx.dim);
  double b = 2 * std::max(dc.b, dd0.b);
  double bp = 2 * measured_integral_bound(d1);
  WeightAssignment wgt = WeightAssignment::none(ctx.a_gens);
  NormElement cf = cfrak(dc.c);
  double a2 = ctx.alpha * ctx.alpha;
  Signature s(ctx.a_gens, ctx.dim, 1);
  E w = anneal_gate(random_element(rng, s, even_spec()), 32 * ctx.alpha, b, cf, wgt, a2);
  Element<Jet> tilde = effective_interaction_split(
      constant_jet(w), constant_jet_covariance(dc.c), jet_covariance(dd0.c, d1));
  E deriv = jet_deriv(tilde);
  NormElement x = big_n(w, 32 * ctx.alpha, b, cf, wgt);
  NormElement lhs = big_n(deriv, ctx.alpha, b, cf, wgt);
  NormElement rhs = ((x * x).scaled(1 / (2 * a2)) *
                     nv_geometric_inverse(1.0, x.scaled(1 / a2)))
                        .scaled((bp / b) * (bp / b));
  return {lhs, rhs};
}

std::string nv_str(const NormElement& x) {
  if (!x.is_finite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x.constant_term());
  return buf;
}

}  // namespace

const std::vector<BoundFamily>& bound_families() {
  static const std::vector<BoundFamily> fams = {
      {"certify_contraction_seminorm_bound", 0.0, run_contraction_bound},
      {"certify_wick_integral_seminorm_bound", 0.0, run_wick_integral_bound},
      {"certify_covariance_mix_integral_bound", 0.0, run_mix_integral_bound},
      {"certify_diagonal_integral_norm_bound", 0.0,
       [](Rng& r, const BoundContext& c) { return run_diagonal_integral_bound(r, c, false); }},
      {"certify_vanishing_diagonal_integral_norm_bound", 0.0,
       [](Rng& r, const BoundContext& c) { return run_diagonal_integral_bound(r, c, true); }},
      {"certify_wick_transport_norm_bound_order", 0.0,
       [](Rng& r, const BoundContext& c) { return run_wick_transport_bound(r, c, true); }},
      {"certify_wick_transport_norm_bound_unorder", 0.0,
       [](Rng& r, const BoundContext& c) { return run_wick_transport_bound(r, c, false); }},
      {"certify_rewick_difference_bound", 0.0, run_rewick_difference_bound},
      {"certify_unwick_derivative_bound", 0.0, run_unwick_derivative_bound},
      {"certify_kernel_series_bound", 0.0, run_kernel_series_bound},
      {"certify_resolvent_remainder_bound", 0.0, run_resolvent_remainder_bound},
      {"certify_schwinger_distance_bound", 0.0, run_schwinger_distance_bound},
      {"certify_rg_map_norm_bound", 0.0, run_rg_map_bound},
      {"certify_rewick_rg_map_bound", 0.0, run_rewick_rg_map_bound},
      {"certify_wick_product_integral_bound_factorial", 2.0,
       [](Rng& r, const BoundContext& c) { return run_wick_product_integral_bound(r, c, true); }},
      {"certify_wick_product_integral_bound_power", 2.0,
       [](Rng& r, const BoundContext& c) { return run_wick_product_integral_bound(r, c, false); }},
  };
  return fams;
}

const std::vector<BoundFamily>& derivative_families() {
  static const std::vector<BoundFamily> fams = {
      {"certify_jet_flow_bound", 0.0, run_jet_flow_bound},
      {"certify_perturbation_derivative_same_cov", 0.0, run_perturbation_derivative_bound},
      {"certify_perturbation_derivative_rewick", 0.0,
       run_perturbation_derivative_rewick_bound},
      {"certify_bilinear_derivative_bound", 0.0, run_bilinear_derivative_bound},
      {"certify_covariance_derivative_bound", 0.0, run_covariance_derivative_bound},
      {"certify_covariance_derivative_rewick", 0.0, run_covariance_derivative_rewick_bound},
      {"certify_wick_covariance_derivative_bound", 0.0,
       run_wick_covariance_derivative_bound},
  };
  return fams;
}

void run_bound_suite(const std::vector<BoundFamily>& families, std::uint64_t seed,
                     const BoundContext& ctx, int count, int jobs, ReportWriter& out) {
  struct Cell {
    std::size_t fam;
    int k;
  };
  std::vector<std::vector<CheckRecord>> per(families.size());
  std::vector<Cell> cells;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    if (ctx.alpha < families[fi].min_alpha) {
      CheckRecord rec;
      rec.name = families[fi].name + "[skipped]";
      rec.lhs = "alpha=" + nv_str(NormElement::scalar(0, ctx.alpha));
      rec.rhs = "needs alpha>=" + nv_str(NormElement::scalar(0, families[fi].min_alpha));
      rec.holds = true;
      per[fi].resize(1);
      per[fi][0] = std::move(rec);
      continue;
    }
    per[fi].resize(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) cells.push_back({fi, k});
  }

  auto run_cell = [&](std::size_t t) {
    const BoundFamily& fam = families[cells[t].fam];
    int k = cells[t].k;
    CheckRecord rec;
    rec.name = fam.name + "#" + std::to_string(k);
    bool got = false;
    BoundInstance inst;
    for (int attempt = 0; attempt < 8 && !got; ++attempt) {
      std::uint64_t salt = (static_cast<std::uint64_t>(cells[t].fam) << 40) |
                           (static_cast<std::uint64_t>(k) << 8) |
                           static_cast<std::uint64_t>(attempt);
      Rng r(mix_seed(seed, salt));
      try {
        inst = fam.run(r, ctx);
        got = true;
      } catch (const std::exception&) {
      }
    }
    if (!got) {
      rec.lhs = "error";
      rec.rhs = "error";
      rec.holds = false;
    } else {
      rec.lhs = nv_str(inst.lhs);
      rec.rhs = nv_str(inst.rhs);
      rec.holds = nv_leq(inst.lhs, inst.rhs);
      if (inst.lhs.is_finite() && inst.rhs.is_finite())
        rec.margin = inst.rhs.constant_term() - inst.lhs.constant_term();
    }
    per[cells[t].fam][static_cast<std::size_t>(k)] = std::move(rec);
  };

  if (jobs <= 1) {
    for (std::size_t t = 0; t < cells.size(); ++t) run_cell(t);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next.fetch_add(1); t < cells.size(); t = next.fetch_add(1))
        run_cell(t);
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(jobs, static_cast<int>(cells.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& group : per)
    for (CheckRecord& r : group) out.add(std::move(r));
}

}  // namespace grwick
