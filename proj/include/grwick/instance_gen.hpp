#pragma once

#include <functional>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/element.hpp"
#include "grwick/fock.hpp"
#include "grwick/randgen.hpp"

namespace grwick {

// Dense antisymmetric covariance with small rational entries; a few entries
// are left zero so sparsity patterns vary.
Covariance random_covariance(Rng& rng, int dim);

// Same shape but with floating entries.
Covariance random_float_covariance(Rng& rng, int dim);

struct ElementSpec {
  int terms = 3;        // number of generated terms (duplicates merge)
  bool even_only = false;
  bool allow_constant = false;
  int max_degree = 4;   // bits per term
  int touch_copy = -1;  // every term must use this copy when >= 0
  bool touch_a = false; // every term must use a coefficient generator
  bool float_coeffs = false;
};

Element<Scalar> random_element(Rng& rng, const Signature& s, const ElementSpec& spec);

// Element whose terms all have coefficient degree m and per-copy field
// degrees n.
Element<Scalar> random_homogeneous(Rng& rng, const Signature& s, int m,
                                   const std::vector<int>& n, int terms);

// Random creation/annihilation system over an h-dimensional one-particle
// space; dim generators split between the two sides, with strictly ordered
// or tied rational times when with_times is set.
FockSetup random_fock_setup(Rng& rng, int h, int dim, bool with_times);

// Halve f until gate(f) returns true; gives up after 64 halvings.
Element<Scalar> anneal_until(Element<Scalar> f,
                             const std::function<bool(const Element<Scalar>&)>& gate);

CovarianceT<Jet> constant_jet_covariance(const Covariance& c0);
Element<Jet> constant_jet(const Element<Scalar>& v);

}  // namespace grwick
