#include "grwick/identity_suite.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "grwick/gaussian.hpp"
#include "grwick/instance_gen.hpp"
#include "grwick/rg.hpp"
#include "grwick/tensor.hpp"

namespace grwick {

namespace {

using E = Element<Scalar>;

// f with its fields replaced by the sum of the listed copies, on a
// `total`-copy signature
E sum_shift(const E& f, int total, const std::vector<int>& parts) {
  std::vector<std::pair<int, Scalar>> combo;
  combo.reserve(parts.size());
  for (int c : parts) combo.emplace_back(c, Scalar(1));
  return substitute_sum(extend_copies(f, total), 0, combo);
}

// one-copy f relabelled into copy c of a `total`-copy signature
E at_copy(const E& f, int total, int c) {
  return substitute_sum(extend_copies(f, total), 0, {{c, Scalar(1)}});
}

// f(0) as a copy-free element of the coefficient algebra
E value_at_zero(const E& f) { return drop_copy(evaluate_copy_zero(f, 0), 0); }

Scalar det_exact(std::vector<std::vector<Scalar>> m) {
  const std::size_t n = m.size();
  Scalar det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (!m[i][k].is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) return Scalar(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det = det * m[k][k];
    Scalar inv = m[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      Scalar fac = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] = m[i][j] - fac * m[k][j];
    }
  }
  return det;
}

// retry a body that may hit a legitimately singular resolvent
template <class F>
bool with_resample(F&& body) {
  for (int t = 0; t < 8; ++t) {
    try {
      return body();
    } catch (const std::domain_error&) {
      continue;
    }
  }
  return false;
}

ElementSpec generic_spec(bool allow_constant = true) {
  ElementSpec sp;
  sp.terms = 3;
  sp.allow_constant = allow_constant;
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

// even, no constant part, and every term carries a coefficient generator, so
// exponentials stay polynomial under Wick ordering and integration
ElementSpec boltzmann_spec() {
  ElementSpec sp;
  sp.terms = 3;
  sp.even_only = true;
  sp.touch_a = true;
  sp.max_degree = 4;
  return sp;
}

bool check_moment_pair_determinant(Rng& rng, int dim, int) {
  Covariance c = random_covariance(rng, dim);
  int top = std::min(3, dim);
  int n = static_cast<int>(rng.range(0, top));
  int m = static_cast<int>(rng.range(0, top));
  std::vector<int> is, js;
  for (int k = 0; k < n; ++k) is.push_back(static_cast<int>(rng.below(dim)));
  for (int k = 0; k < m; ++k) js.push_back(static_cast<int>(rng.below(dim)));
  Scalar lhs = moment_wick_pair(is, js, c);
  if (n != m) return lhs.is_zero();
  std::vector<std::vector<Scalar>> mat(n, std::vector<Scalar>(n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) mat[k][l] = c.at(is[k], js[l]);
  return lhs == det_exact(std::move(mat));
}

bool check_wick_inverse_shift(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E fhat = random_element(rng, s, generic_spec());
  E f = wick_order(fhat, c, 0);
  E back = gaussian_integral(sum_shift(fhat, 2, {0, 1}), -c, 1);
  if (back != f) return false;
  E fwd = gaussian_integral(sum_shift(f, 2, {0, 1}), c, 1);
  if (fwd != fhat) return false;
  return gaussian_integral(fhat, -c, 0) == value_at_zero(f);
}

bool check_wick_shift_transfer(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E g = random_element(rng, s, generic_spec());
  E f = wick_order(g, c, 0);
  E m = sum_shift(g, 2, {0, 1});
  E lhs = sum_shift(f, 2, {0, 1});
  return lhs == wick_order(m, c, 0) && lhs == wick_order(m, c, 1);
}

bool check_wick_product_convolution(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  int l = static_cast<int>(rng.range(2, 3));
  E lhs = E::unit(s);
  E prod = E::unit(Signature(a_gens, dim, 2));
  for (int i = 0; i < l; ++i) {
    E fi = random_element(rng, s, generic_spec());
    lhs = lhs * wick_order(fi, c, 0);
    prod = prod * wick_order(sum_shift(fi, 2, {0, 1}), c, 1);
  }
  E rhs = wick_order(gaussian_integral(prod, c, 1), c, 0);
  return lhs == rhs;
}

bool check_wick_exponential_convolution(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E f = random_element(rng, s, boltzmann_spec());
  E lhs = exp_nilpotent(wick_order(f, c, 0));
  E inner = exp_nilpotent(wick_order(sum_shift(f, 2, {0, 1}), c, 1));
  E rhs = wick_order(gaussian_integral(inner, c, 1), c, 0);
  return lhs == rhs;
}

bool check_wick_product_tail_factor(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  int l = static_cast<int>(rng.range(1, 2));
  E g = random_element(rng, s, generic_spec());
  E lhs = E::unit(s);
  E prod = E::unit(Signature(a_gens, dim, 3));
  for (int i = 0; i < l; ++i) {
    E fi = random_element(rng, s, generic_spec());
    lhs = lhs * wick_order(fi, c, 0);
    prod = prod * wick_order(sum_shift(fi, 3, {0, 1, 2}), c, 1);
  }
  lhs = lhs * wick_order(g, c, 0);
  E pw = wick_order(prod, c, 2);
  E gw = wick_order(sum_shift(g, 3, {0, 2}), c, 2);
  // integrating the middle copy renumbers the third one down to index 1
  E integ = gaussian_integral(gaussian_integral(pw * gw, c, 1), c, 1);
  E rhs = wick_order(integ, c, 0);
  return lhs == rhs;
}

bool check_wick_covariance_additivity(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  Covariance d = random_covariance(rng, dim);
  E f = random_element(rng, s, generic_spec());
  return wick_order(f, c + d, 0) == wick_order(wick_order(f, c, 0), d, 0);
}

bool check_wick_sum_shift_split(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  Covariance d = random_covariance(rng, dim);
  E f = random_element(rng, s, generic_spec());
  E lhs = sum_shift(wick_order(f, c + d, 0), 2, {0, 1});
  E rhs = wick_order(wick_order(sum_shift(f, 2, {0, 1}), c, 0), d, 1);
  return lhs == rhs;
}

bool check_wick_covariance_transfer(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  Covariance d = random_covariance(rng, dim);
  E f = random_element(rng, s, generic_spec());
  E fp = gaussian_integral(sum_shift(f, 2, {0, 1}), -d, 1);
  return wick_order(f, c + d, 0) == wick_order(fp, c, 0);
}

bool check_partial_wick_integral(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E f = random_element(rng, s, generic_spec());
  E g = random_element(rng, s, generic_spec());
  E h = random_element(rng, s, generic_spec());
  E lhs = gaussian_integral(wick_order(f * g, c, 0) * h, c, 0);
  E fw = wick_order(f, c, 0);
  E g2 = wick_order(at_copy(g, 2, 1), c, 1);
  E h2 = wick_order(sum_shift(h, 2, {0, 1}), c, 0);
  E inner = gaussian_integral(g2 * h2, c, 1);
  E rhs = gaussian_integral(fw * inner, c, 0);
  return lhs == rhs;
}

bool check_integral_smoothing(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E f = random_element(rng, s, generic_spec());
  E h = random_element(rng, s, generic_spec());
  E lhs = gaussian_integral(f * h, c, 0);
  E smooth = wick_order(gaussian_integral(sum_shift(h, 2, {0, 1}), c, 1), c, 0);
  E rhs = gaussian_integral(f * smooth, c, 0);
  return lhs == rhs;
}

bool check_quadratic_mix_integral(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E f = random_homogeneous(rng, s, 0, {2}, 2);
  E g = random_element(rng, s, generic_spec());
  E h = random_element(rng, s, generic_spec());
  E fw = wick_order(f, c, 0);
  E lhs = gaussian_integral(fw * wick_order(g * h, c, 0), c, 0);
  E fmix = sum_shift(f, 2, {0, 1}) - at_copy(f, 2, 0) - at_copy(f, 2, 1);
  E x = fmix * wick_order(at_copy(g, 2, 0), c, 0) * wick_order(at_copy(h, 2, 1), c, 1);
  E t1 = gaussian_integral(gaussian_integral(x, c, 0), c, 0);
  E t2 = value_at_zero(h) * gaussian_integral(fw * wick_order(g, c, 0), c, 0);
  E t3 = value_at_zero(g) * gaussian_integral(fw * wick_order(h, c, 0), c, 0);
  return lhs == t1 + t2 + t3;
}

bool check_jet_integral_derivative(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c0 = random_covariance(rng, dim);
  Covariance c1 = random_covariance(rng, dim);
  E f = random_element(rng, s, generic_spec());
  try {
    jet_gaussian_derivative(f, c0, c1);
  } catch (const std::logic_error&) {
    return false;
  }
  return true;
}

bool check_jet_wick_derivative(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c0 = random_covariance(rng, dim);
  Covariance c1 = random_covariance(rng, dim);
  E f = random_element(rng, s, generic_spec());
  E lhs = jet_deriv(wick_order(constant_jet(f), jet_covariance(c0, c1), 0));
  E acc(s);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (c1.at(i, j).is_zero()) continue;
      acc += left_derivative_v(left_derivative_v(f, 0, j), 0, i).scaled(c1.at(i, j));
    }
  E rhs = wick_order(acc, c0, 0).scaled(Scalar::rational(1, 2));
  return lhs == rhs;
}

bool check_jet_boltzmann_derivative(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c0 = random_covariance(rng, dim);
  Covariance c1 = random_covariance(rng, dim);
  E f = random_element(rng, s, boltzmann_spec());
  E ef = exp_nilpotent(f);
  E lhs = jet_deriv(
      gaussian_integral(exp_nilpotent(constant_jet(f)), jet_covariance(c0, c1), 0));
  E acc(Signature(a_gens, dim, 0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (c1.at(i, j).is_zero()) continue;
      E dj = left_derivative_v(f, 0, j);
      E bracket = left_derivative_v(f, 0, i) * dj + left_derivative_v(dj, 0, i);
      acc += gaussian_integral(bracket * ef, c0, 0).scaled(c1.at(i, j));
    }
  return lhs == acc.scaled(Scalar::rational(-1, 2));
}

bool check_jet_wick_boltzmann_derivative(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c0 = random_covariance(rng, dim);
  Covariance c1 = random_covariance(rng, dim);
  E f = random_element(rng, s, boltzmann_spec());
  CovarianceT<Jet> jc = jet_covariance(c0, c1);
  E lhs = jet_deriv(
      gaussian_integral(exp_nilpotent(wick_order(constant_jet(f), jc, 0)), jc, 0));
  E boltz = exp_nilpotent(wick_order(f, c0, 0));
  E acc(Signature(a_gens, dim, 0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (c1.at(i, j).is_zero()) continue;
      E wi = wick_order(left_derivative_v(f, 0, i), c0, 0);
      E wj = wick_order(left_derivative_v(f, 0, j), c0, 0);
      acc += gaussian_integral(wi * wj * boltz, c0, 0).scaled(c1.at(i, j));
    }
  return lhs == acc.scaled(Scalar::rational(-1, 2));
}

bool check_contraction_slot_independence(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 2);
  Covariance c = random_covariance(rng, dim);
  int n1 = static_cast<int>(rng.range(1, std::min(2, dim)));
  int n2 = static_cast<int>(rng.range(1, std::min(2, dim)));
  int m = static_cast<int>(rng.range(0, std::min(2, a_gens)));
  E f = random_homogeneous(rng, s, m, {n1, n2}, 2);
  Tensor t = to_tensor(f, {n1, n2});
  Tensor base = contract_slots(t, 1, n1 + 1, c);
  for (int mu = 1; mu <= n1; ++mu)
    for (int nu = n1 + 1; nu <= n1 + n2; ++nu)
      if (contract_slots(t, mu, nu, c) != base) return false;
  return true;
}

bool check_contraction_group_antisymmetry(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 2);
  Covariance c = random_covariance(rng, dim);
  int n1 = static_cast<int>(rng.range(1, std::min(2, dim)));
  int n2 = static_cast<int>(rng.range(1, std::min(2, dim)));
  E f = random_homogeneous(rng, s, 1, {n1, n2}, 2);
  Tensor t = to_tensor(f, {n1, n2});
  Tensor r = contract_slots(t, 1, n1 + 1, c);
  return antisymmetrize(r, {n1 - 1, n2 - 1}) == r;
}

bool check_contraction_derivative_routes(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 2);
  Covariance c = random_covariance(rng, dim);
  ElementSpec sp = generic_spec();
  sp.terms = 4;
  E f = random_element(rng, s, sp);
  return contract_fields(f, 0, 1, c) == contract_fields_via_derivatives(f, 0, 1, c);
}

bool check_pair_contraction_values(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 2);
  Covariance c = random_covariance(rng, dim);
  int k = static_cast<int>(rng.below(dim));
  int l = static_cast<int>(rng.below(dim));
  int m = static_cast<int>(rng.below(dim));
  while (m == l) m = static_cast<int>(rng.below(dim));
  int j = static_cast<int>(rng.below(dim));
  while (j == k) j = static_cast<int>(rng.below(dim));
  auto xi = [&](int i) { return E::v_gen(s, 0, i); };
  auto xp = [&](int i) { return E::v_gen(s, 1, i); };

  E f1 = xi(k) * xp(l);
  if (contract_fields(f1, 0, 1, c) != E::constant(s, c.at(k, l))) return false;

  E f2 = xi(k) * xp(l) * xp(m);
  E r2 = xp(m).scaled(c.at(k, l)) - xp(l).scaled(c.at(k, m));
  if (contract_fields(f2, 0, 1, c) != r2) return false;

  E f3 = xi(j) * xi(k) * xp(l);
  E r3 = (xi(j).scaled(c.at(k, l)) - xi(k).scaled(c.at(j, l))).scaled(Scalar::rational(1, 2));
  return contract_fields(f3, 0, 1, c) == r3;
}

bool check_contraction_wick_exchange(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 2);
  Covariance c = random_covariance(rng, dim);
  ElementSpec sp = generic_spec();
  sp.terms = 4;
  E f = random_element(rng, s, sp);
  return contract_fields(wick_order(f, c, 1), 0, 1, c) ==
         wick_order(contract_fields(f, 0, 1, c), c, 1);
}

bool check_contraction_integration_by_parts(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 3);
  Covariance c = random_covariance(rng, dim);
  ElementSpec sp = generic_spec(false);
  sp.touch_copy = 1;
  E f = random_element(rng, s, sp);
  auto pipeline = [&](const E& g) {
    E d1 = diagonal(g, 0, 1);
    E w = wick_order(d1, c, 0);
    E d2 = diagonal(w, 0, 1);
    return gaussian_integral(d2, c, 0);
  };
  return pipeline(f) == pipeline(contract_fields(f, 1, 2, c));
}

bool check_average_ratio_vs_resolvent(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  return with_resample([&] {
    Covariance c = random_covariance(rng, dim);
    E u = random_element(rng, s, even_spec());
    E f = random_element(rng, s, generic_spec());
    return schwinger_direct(f, u, c) == schwinger_resolvent(f, u, c);
  });
}

bool check_fluctuation_kernel_form(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E uhat = random_element(rng, s, even_spec());
  E f = random_element(rng, s, generic_spec());
  E u = wick_order(uhat, c, 0);
  E lhs = fluctuation_apply(fluctuation_kernel(u, c), f, c);
  E rhs = kernel_fluctuation_apply(shift_difference_kernel(uhat), c, f);
  return lhs == rhs;
}

bool check_kernel_exponential_expansion(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  Covariance c = random_covariance(rng, dim);
  E uhat = random_element(rng, s, even_spec());
  E f = random_element(rng, s, generic_spec());
  E k = shift_difference_kernel(uhat);
  E rhs = kernel_fluctuation_apply(k, c, f);
  E acc(s);
  long fact = 1;
  for (int l = 1; l <= 8; ++l) {
    fact *= l;
    E term = multi_kernel_apply(std::vector<E>(static_cast<std::size_t>(l), k), c, f);
    if (term.is_zero()) break;
    acc += term.scaled(Scalar::rational(1, fact));
  }
  return acc == rhs;
}

bool check_resolvent_solve_roundtrip(Rng& rng, int dim, int a_gens) {
  Signature s(a_gens, dim, 1);
  return with_resample([&] {
    Covariance c = random_covariance(rng, dim);
    E u = random_element(rng, s, even_spec());
    E f = random_element(rng, s, generic_spec());
    E kernel = fluctuation_kernel(wick_order(u, c, 0), c);
    auto op = [&](const E& g) { return fluctuation_apply(kernel, g, c); };
    E x = solve_unit_minus(op, f);
    return x - op(x) == f;
  });
}

}  // namespace

const std::vector<SuiteCheck>& identity_checks() {
  static const std::vector<SuiteCheck> checks = {
      {"moment_pair_determinant", 1, check_moment_pair_determinant},
      {"wick_inverse_shift", 1, check_wick_inverse_shift},
      {"wick_shift_transfer", 1, check_wick_shift_transfer},
      {"wick_product_convolution", 1, check_wick_product_convolution},
      {"wick_exponential_convolution", 1, check_wick_exponential_convolution},
      {"wick_product_tail_factor", 1, check_wick_product_tail_factor},
      {"wick_covariance_additivity", 1, check_wick_covariance_additivity},
      {"wick_sum_shift_split", 1, check_wick_sum_shift_split},
      {"wick_covariance_transfer", 1, check_wick_covariance_transfer},
      {"partial_wick_integral", 1, check_partial_wick_integral},
      {"integral_smoothing", 1, check_integral_smoothing},
      {"quadratic_mix_integral", 2, check_quadratic_mix_integral},
      {"jet_integral_derivative", 1, check_jet_integral_derivative},
      {"jet_wick_derivative", 1, check_jet_wick_derivative},
      {"jet_boltzmann_derivative", 1, check_jet_boltzmann_derivative},
      {"jet_wick_boltzmann_derivative", 1, check_jet_wick_boltzmann_derivative},
      {"contraction_slot_independence", 2, check_contraction_slot_independence},
      {"contraction_group_antisymmetry", 2, check_contraction_group_antisymmetry},
      {"contraction_derivative_routes", 1, check_contraction_derivative_routes},
      {"pair_contraction_values", 2, check_pair_contraction_values},
      {"contraction_wick_exchange", 1, check_contraction_wick_exchange},
      {"contraction_integration_by_parts", 1, check_contraction_integration_by_parts},
  };
  return checks;
}

const std::vector<SuiteCheck>& schwinger_checks() {
  static const std::vector<SuiteCheck> checks = {
      {"average_ratio_vs_resolvent", 1, check_average_ratio_vs_resolvent},
      {"fluctuation_kernel_form", 1, check_fluctuation_kernel_form},
      {"kernel_exponential_expansion", 1, check_kernel_exponential_expansion},
      {"resolvent_solve_roundtrip", 1, check_resolvent_solve_roundtrip},
  };
  return checks;
}

void run_suite(const std::vector<SuiteCheck>& checks, std::uint64_t seed,
               const std::vector<int>& dims, int count, int a_gens, int jobs,
               ReportWriter& out) {
  struct Cell {
    std::size_t check;
    std::size_t dim_idx;
  };
  std::vector<Cell> cells;
  for (std::size_t ci = 0; ci < checks.size(); ++ci)
    for (std::size_t di = 0; di < dims.size(); ++di)
      if (dims[di] >= checks[ci].min_dim) cells.push_back({ci, di});

  std::vector<CheckRecord> recs(cells.size());
  auto run_cell = [&](std::size_t t) {
    const SuiteCheck& chk = checks[cells[t].check];
    int dim = dims[cells[t].dim_idx];
    int passes = 0;
    for (int k = 0; k < count; ++k) {
      std::uint64_t salt =
          (static_cast<std::uint64_t>(cells[t].check) << 40) |
          (static_cast<std::uint64_t>(cells[t].dim_idx) << 32) | static_cast<std::uint64_t>(k);
      Rng r(mix_seed(seed, salt));
      bool ok = false;
      try {
        ok = chk.run(r, dim, a_gens);
      } catch (const std::exception&) {
        ok = false;
      }
      if (ok) ++passes;
    }
    CheckRecord rec;
    rec.name = chk.name + "[dim=" + std::to_string(dim) + "]";
    rec.lhs = std::to_string(passes);
    rec.rhs = std::to_string(count);
    rec.holds = passes == count;
    rec.margin = static_cast<double>(passes - count);
    recs[t] = std::move(rec);
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
  for (CheckRecord& r : recs) out.add(std::move(r));
}

}  // namespace grwick
