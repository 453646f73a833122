#pragma once

#include <map>
#include <utility>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/element.hpp"

namespace grwick {

// Sparse coefficient system with explicit tensor slots: a formal sum of
// (coefficient monomial) x (ordered tuple of generator indices), scalar
// coefficients. Slot tuples may repeat indices; nothing is symmetrized
// implicitly.
struct TensorKey {
  Mask a_mask;
  std::vector<int> idx;

  friend bool operator<(const TensorKey& a, const TensorKey& b) {
    if (a.idx != b.idx) return a.idx < b.idx;
    return a.a_mask < b.a_mask;
  }
  friend bool operator==(const TensorKey& a, const TensorKey& b) {
    return a.idx == b.idx && a.a_mask == b.a_mask;
  }
};

class Tensor {
public:
  int a_gens = 0;
  int dim = 0;
  int slots = 0;
  std::map<TensorKey, Scalar> terms;

  Tensor() = default;
  Tensor(int a_gens_, int dim_, int slots_);

  void add_term(const Mask& a_mask, std::vector<int> idx, Scalar c);
  bool is_zero() const { return terms.empty(); }
  Tensor scaled(const Scalar& s) const;

  friend Tensor operator+(const Tensor& a, const Tensor& b);
  friend Tensor operator-(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.a_gens == b.a_gens && a.dim == b.dim && a.slots == b.slots &&
           a.terms == b.terms;
  }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  void check_same(const Tensor& o) const;
};

// All permutations of {0,...,n-1} paired with their signs (cached, n <= 8).
using PermSign = std::pair<std::vector<int>, int>;
const std::vector<PermSign>& permutations_with_sign(int n);

// Partial antisymmetrization over consecutive slot groups of the given sizes:
// the signed average over all products of within-group permutations.
Tensor antisymmetrize(const Tensor& f, const std::vector<int>& groups);

// Contraction of slot mu into slot nu (1-based, distinct): both slots are
// removed and each term picks up eps(mu,nu) * c(idx_mu, idx_nu), where
// eps(mu,nu) = (-1)^(nu-mu+1) for nu > mu and (-1)^(mu-nu) for nu < mu.
Tensor contract_slots(const Tensor& f, int mu, int nu, const Covariance& c);

// Graded product: slot tuples concatenate; the second factor's coefficient
// monomial moves left past the first factor's slots, then the two monomials
// merge, each step contributing the usual sign.
Tensor tensor_product(const Tensor& f, const Tensor& g);

// Gaussian integral of the antisymmetrization of the first n_first slots:
// each raw term maps to moment(leading indices) x (remaining slots). The
// signed averaging cancels against the antisymmetry of the moments, so it
// never needs to be carried out explicitly.
Tensor integrate_ant(const Tensor& f, int n_first, const Covariance& c);

// Embed a homogeneous element (per-copy degrees `groups`, one entry per copy)
// as the equivalent within-group antisymmetric tensor, slots grouped by copy
// in copy order.
Tensor to_tensor(const Element<Scalar>& f, const std::vector<int>& groups);

// Inverse of to_tensor, defined on tensors antisymmetric within each group.
Element<Scalar> from_tensor(const Tensor& t, const std::vector<int>& groups,
                            const Signature& sig);

// Contraction of the copy_k fields into the copy_l fields: on a homogeneous
// component of degree n_l in copy_l this is n_l times the contraction of one
// copy_k slot into one copy_l slot (on within-group antisymmetric tensors any
// slot choice agrees); components of degree zero in either copy map to zero.
Element<Scalar> contract_fields(const Element<Scalar>& f, int copy_k,
                                int copy_l, const Covariance& c);

// Same map written with generator derivatives:
//   -(1/n_k) sum_{i,j} c_ij d/d(copy_k,i) d/d(copy_l,j)
// applied componentwise, the copy_l derivative acting first.
Element<Scalar> contract_fields_via_derivatives(const Element<Scalar>& f,
                                                int copy_k, int copy_l,
                                                const Covariance& c);

}  // namespace grwick
