#include "grwick/instance_gen.hpp"

#include <stdexcept>

namespace grwick {

Covariance random_covariance(Rng& rng, int dim) {
  Covariance c(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (!rng.chance(1, 5)) c.set(i, j, rng.rational(3, 3));
  return c;
}

Covariance random_float_covariance(Rng& rng, int dim) {
  Covariance c(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (!rng.chance(1, 5)) c.set(i, j, Scalar::floating(2.0 * rng.unit() - 1.0));
  return c;
}

namespace {

// pick `count` distinct bits, the first from [lo0, hi0), the rest anywhere in
// [0, total)
Mask pick_bits(Rng& rng, int total, int count, int lo0, int hi0) {
  Mask m;
  int placed = 0;
  while (placed < count) {
    int b;
    if (placed == 0 && hi0 > lo0)
      b = lo0 + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi0 - lo0)));
    else
      b = static_cast<int>(rng.below(static_cast<std::uint64_t>(total)));
    if (m.test(b)) continue;
    m.set(b);
    ++placed;
  }
  return m;
}

}  // namespace

Element<Scalar> random_element(Rng& rng, const Signature& s, const ElementSpec& spec) {
  int total = s.total_bits();
  Element<Scalar> e(s);
  for (int t = 0; t < spec.terms; ++t) {
    int min_deg = spec.allow_constant ? 0 : 1;
    if (spec.touch_copy >= 0 || spec.touch_a) min_deg = std::max(min_deg, 1);
    if (spec.even_only && min_deg == 1) min_deg = 2;
    int max_deg = std::min(spec.max_degree, total);
    if (max_deg < min_deg) throw std::invalid_argument("random_element: empty degree range");
    int deg = static_cast<int>(rng.range(min_deg, max_deg));
    if (spec.even_only) deg &= ~1;
    if (deg < min_deg) deg = min_deg;

    int lo0 = 0, hi0 = 0;
    if (spec.touch_copy >= 0) {
      lo0 = s.a_gens + spec.touch_copy * s.dim;
      hi0 = lo0 + s.dim;
    } else if (spec.touch_a) {
      lo0 = 0;
      hi0 = s.a_gens;
    }
    Mask m = pick_bits(rng, total, deg, lo0, hi0);
    Scalar c = spec.float_coeffs ? Scalar::floating(2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0)
                                 : rng.complex_rational(3, 3);
    if (c.is_zero()) c = Scalar(1);
    e.add_term(m, c);
  }
  return e;
}

Element<Scalar> random_homogeneous(Rng& rng, const Signature& s, int m,
                                   const std::vector<int>& n, int terms) {
  if (static_cast<int>(n.size()) != s.copies)
    throw std::invalid_argument("random_homogeneous: grading size mismatch");
  Element<Scalar> e(s);
  for (int t = 0; t < terms; ++t) {
    Mask mask;
    // m distinct coefficient generators
    int placed = 0;
    while (placed < m) {
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(s.a_gens)));
      if (mask.test(b)) continue;
      mask.set(b);
      ++placed;
    }
    for (int c = 0; c < s.copies; ++c) {
      placed = 0;
      while (placed < n[static_cast<std::size_t>(c)]) {
        int b = s.a_gens + c * s.dim + static_cast<int>(rng.below(static_cast<std::uint64_t>(s.dim)));
        if (mask.test(b)) continue;
        mask.set(b);
        ++placed;
      }
    }
    Scalar coeff = rng.complex_rational(3, 3);
    if (coeff.is_zero()) coeff = Scalar(1);
    e.add_term(mask, coeff);
  }
  return e;
}

FockSetup random_fock_setup(Rng& rng, int h, int dim, bool with_times) {
  FockSetup setup;
  setup.h = h;
  for (int i = 0; i < dim; ++i) {
    FockGenerator g;
    // guarantee both sides appear once dim >= 2
    if (i == 0)
      g.side = 0;
    else if (i == 1)
      g.side = 1;
    else
      g.side = static_cast<int>(rng.range(0, 1));
    g.tau = with_times ? rng.rational(2, 2) : Scalar(0);
    g.w.resize(static_cast<std::size_t>(h));
    for (int k = 0; k < h; ++k) g.w[static_cast<std::size_t>(k)] = rng.complex_rational(2, 2);
    setup.gens.push_back(std::move(g));
  }
  return setup;
}

Element<Scalar> anneal_until(Element<Scalar> f,
                             const std::function<bool(const Element<Scalar>&)>& gate) {
  Scalar half = Scalar::rational(1, 2);
  for (int k = 0; k < 64; ++k) {
    if (gate(f)) return f;
    f = f.scaled(half);
  }
  throw std::runtime_error("anneal_until: gate still failing after 64 halvings");
}

CovarianceT<Jet> constant_jet_covariance(const Covariance& c0) {
  CovarianceT<Jet> c(c0.dim);
  for (int i = 0; i < c0.dim; ++i)
    for (int j = i + 1; j < c0.dim; ++j) c.set(i, j, Jet{c0.at(i, j), Scalar(0)});
  return c;
}

Element<Jet> constant_jet(const Element<Scalar>& v) {
  return map_coefficients<Jet>(v, [](const Scalar& s) { return Jet{s, Scalar(0)}; });
}

}  // namespace grwick
