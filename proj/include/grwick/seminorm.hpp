#pragma once

#include <array>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/element.hpp"
#include "grwick/normdomain.hpp"
#include "grwick/tensor.hpp"

namespace grwick {

// Assignment of bookkeeping-variable exponents to the coefficient
// generators. d = 0 gives plain scalar-valued norms; otherwise every
// coefficient monomial is weighted by t^(sum of its generators' profiles).
struct WeightAssignment {
  int d = 0;
  std::vector<std::array<int, 3>> w;

  static WeightAssignment none(int a_gens) {
    return WeightAssignment{0, std::vector<std::array<int, 3>>(
                                   static_cast<std::size_t>(a_gens), {0, 0, 0})};
  }
  // Generator g carries the unit profile of variable (g mod d).
  static WeightAssignment cyclic(int a_gens, int d);

  std::array<int, 3> profile(const Mask& a_mask) const;
};

// L1-L∞ norm of a slot tensor: per coefficient monomial, the maximum over
// slot positions of the largest column sum sup_v sum_{idx[k]=v} |coeff|;
// the per-monomial values are summed with their weight profiles. A bare
// constant (no coefficient monomial, no slots) contributes zero.
NormElement l1_linf_tensor(const Tensor& t, const WeightAssignment& wa);

// Same norm evaluated directly on a homogeneous element with per-copy
// degrees `groups`, using the closed form for within-group antisymmetric
// tensors: per coefficient monomial, max over copies j (n_j >= 1) and
// generator values v of sum_{terms containing v in copy j} |coeff| / n_j.
NormElement component_norm(const Element<Scalar>& comp,
                           const std::vector<int>& groups,
                           const WeightAssignment& wa);

// Weighted-degree aggregate: (1/b^2) * c_frak * sum over per-copy degree
// profiles n of (alpha b)^{|n|} times the norm of the degree-n slice.
NormElement big_n(const Element<Scalar>& f, double alpha, double b,
                  const NormElement& c_frak, const WeightAssignment& wa);

// Largest row sum max_i sum_j |c_ij|.
double covariance_l1_linf(const Covariance& c);

// Smallest g with |moment(I)| <= (g/2)^{|I|} for every generator subset I,
// i.e. 2 * max over even subsets of |Pf(C_I)|^{1/|I|}; 1 when all moments
// vanish.
double measured_integral_bound(const Covariance& c);

// Whether |moment(I)| <= (b/2)^{|I|} holds for every generator subset I.
bool moment_bound_holds(const Covariance& c, double b);

}  // namespace grwick
