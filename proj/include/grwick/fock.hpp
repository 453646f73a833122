#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/scalar.hpp"

namespace grwick {

// Finite fermionic Fock space over C^h with an orthonormal one-particle
// basis e_0..e_{h-1}. States are sparse vectors over occupation bitmasks;
// the vacuum is the empty mask. Inner products are conjugate-linear in the
// first argument.

using FockVector = std::map<std::uint32_t, Scalar>;

// Generator data for pairing-built covariances: a side flag (0 = the
// annihilation side, 1 = the creation side), a rational time (used only by
// the time-dependent case), and a vector in C^h.
struct FockGenerator {
  int side = 0;
  Scalar tau;
  std::vector<Scalar> w;
};

struct FockSetup {
  int h = 0;
  std::vector<FockGenerator> gens;

  int dim() const { return static_cast<int>(gens.size()); }
  Scalar sup_norm_squared() const;  // max_i ||w_i||^2, exact when the data is
  double sup_norm() const;          // sqrt of the above
};

FockVector fock_vacuum();
void fock_add_scaled(FockVector& x, const FockVector& y, const Scalar& s);
Scalar fock_inner(const FockVector& x, const FockVector& y);
double fock_norm(const FockVector& x);

// Exterior multiplication by sum_j v_j e_j (linear in v).
FockVector fock_create(const std::vector<Scalar>& v, const FockVector& s, int h);
// Its adjoint (conjugate-linear in v).
FockVector fock_annihilate(const std::vector<Scalar>& v, const FockVector& s, int h);

// Static pairing covariance: C(xi_i, xi_j) = <w_i, w_j> when side_i = 0 and
// side_j = 1, zero on same-side pairs, antisymmetric completion. Exact.
Covariance pairing_covariance(const FockSetup& fs);

// Time-dependent pairing covariance: for side_i = 0, side_j = 1,
// C(xi_i, xi_j) = exp(-(tau_i - tau_j)) <w_i, w_j> when tau_i > tau_j and 0
// otherwise; zero on same-side pairs; antisymmetric completion. Floating.
Covariance time_pairing_covariance(const FockSetup& fs);

// Whether tau_{i_1} >= ... >= tau_{i_m} and, among entries of equal time, no
// side-0 entry precedes a side-1 entry.
bool is_time_ordered(const FockSetup& fs, const std::vector<int>& seq);

// <vacuum, a_{i_1} ... a_{i_m} vacuum> with a_i = exp(-tau_i) a(w_i) on side
// 0 and a_i = exp(+tau_i) a^dagger(w_i) on side 1. Requires a time-ordered
// sequence; matches the Grassmann moment of time_pairing_covariance.
Scalar time_ordered_vev(const FockSetup& fs, const std::vector<int>& seq);

// Whether every side-0 entry precedes every side-1 entry.
bool is_block_ordered(const FockSetup& fs, const std::vector<int>& seq);

// <vacuum, a_{i_1} ... a_{i_m} vacuum> with a_i = a(w_i) on side 0 and
// a_i = a^dagger(w_i) on side 1, no time factors. Requires a block-ordered
// sequence; matches the exact Grassmann moment of pairing_covariance.
Scalar static_vev(const FockSetup& fs, const std::vector<int>& seq);

// |moment(I)| <= S^|I| for every generator subset of size <= max_m, where
// S^2 = s_squared; squares are compared exactly when the covariance is
// exact, within relative slack 1e-9 otherwise.
bool gram_bound_check(const Covariance& c, const Scalar& s_squared, int max_m);

}  // namespace grwick
