#pragma once

#include <stdexcept>

#include "grwick/mask.hpp"

namespace grwick {

// Shape of a Grassmann algebra with graded coefficients: a_gens odd
// coefficient generators, then `copies` copies of a dim-dimensional
// generator space. Global bit layout (ascending):
//   [0, a_gens)                                  coefficient generators
//   a_gens + copy*dim + i, i in [0, dim)         generator i of a copy
struct Signature {
  int a_gens = 0;
  int dim = 0;
  int copies = 0;

  Signature() = default;
  Signature(int a, int d, int r) : a_gens(a), dim(d), copies(r) {
    if (a < 0 || d < 0 || r < 0) throw std::invalid_argument("Signature: negative count");
    if (total_bits() > 128) throw std::invalid_argument("Signature: more than 128 generators");
  }

  int total_bits() const { return a_gens + dim * copies; }
  int v_bit(int copy, int i) const { return a_gens + copy * dim + i; }
  int a_bit(int g) const { return g; }

  bool is_a_bit(int b) const { return b < a_gens; }
  int copy_of_bit(int b) const { return (b - a_gens) / dim; }
  int index_of_bit(int b) const { return (b - a_gens) % dim; }

  Mask a_mask_all() const {
    Mask m;
    for (int g = 0; g < a_gens; ++g) m.set(g);
    return m;
  }
  Mask copy_mask(int copy) const {
    Mask m;
    for (int i = 0; i < dim; ++i) m.set(v_bit(copy, i));
    return m;
  }

  friend bool operator==(const Signature& x, const Signature& y) {
    return x.a_gens == y.a_gens && x.dim == y.dim && x.copies == y.copies;
  }
  friend bool operator!=(const Signature& x, const Signature& y) { return !(x == y); }
};

}  // namespace grwick
