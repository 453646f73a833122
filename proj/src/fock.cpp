#include "grwick/fock.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace grwick {

namespace {

Scalar vector_inner(const std::vector<Scalar>& v, const std::vector<Scalar>& w) {
  if (v.size() != w.size()) throw std::invalid_argument("fock: vector dimension mismatch");
  Scalar acc(0);
  for (std::size_t k = 0; k < v.size(); ++k) acc += v[k].conj() * w[k];
  return acc;
}

// Exact comparison of rational times; both must be exact reals.
int tau_compare(const Scalar& a, const Scalar& b) {
  return cmp(a.re_rational(), b.re_rational());
}

int mask_sign_below(std::uint32_t mask, int j) {
  std::uint32_t below = mask & ((std::uint32_t(1) << j) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace

Scalar FockSetup::sup_norm_squared() const {
  Scalar best(0);
  bool exact = true;
  double best_f = 0.0;
  for (const FockGenerator& g : gens) {
    Scalar n2 = vector_inner(g.w, g.w);
    if (!n2.exact()) exact = false;
    if (exact) {
      if (cmp(n2.re_rational(), best.re_rational()) > 0) best = n2;
    } else {
      best_f = std::max(best_f, n2.to_double());
    }
  }
  return exact ? best : Scalar::floating(best_f, 0.0);
}

double FockSetup::sup_norm() const {
  return std::sqrt(sup_norm_squared().to_double());
}

FockVector fock_vacuum() {
  FockVector v;
  v.emplace(0u, Scalar(1));
  return v;
}

void fock_add_scaled(FockVector& x, const FockVector& y, const Scalar& s) {
  for (const auto& [m, c] : y) {
    auto it = x.find(m);
    if (it == x.end()) {
      Scalar v = c * s;
      if (!v.is_zero()) x.emplace(m, std::move(v));
    } else {
      it->second += c * s;
      if (it->second.is_zero()) x.erase(it);
    }
  }
}

Scalar fock_inner(const FockVector& x, const FockVector& y) {
  Scalar acc(0);
  for (const auto& [m, c] : x) {
    auto it = y.find(m);
    if (it != y.end()) acc += c.conj() * it->second;
  }
  return acc;
}

double fock_norm(const FockVector& x) {
  return std::sqrt(fock_inner(x, x).to_double());
}

FockVector fock_create(const std::vector<Scalar>& v, const FockVector& s, int h) {
  if (static_cast<int>(v.size()) != h)
    throw std::invalid_argument("fock_create: vector dimension mismatch");
  FockVector out;
  for (const auto& [mask, c] : s) {
    for (int j = 0; j < h; ++j) {
      if (v[j].is_zero()) continue;
      std::uint32_t bit = std::uint32_t(1) << j;
      if (mask & bit) continue;
      Scalar term = v[j] * c;
      if (mask_sign_below(mask, j) < 0) term = -term;
      auto it = out.find(mask | bit);
      if (it == out.end()) {
        if (!term.is_zero()) out.emplace(mask | bit, std::move(term));
      } else {
        it->second += term;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

FockVector fock_annihilate(const std::vector<Scalar>& v, const FockVector& s, int h) {
  if (static_cast<int>(v.size()) != h)
    throw std::invalid_argument("fock_annihilate: vector dimension mismatch");
  FockVector out;
  for (const auto& [mask, c] : s) {
    for (int j = 0; j < h; ++j) {
      if (v[j].is_zero()) continue;
      std::uint32_t bit = std::uint32_t(1) << j;
      if (!(mask & bit)) continue;
      Scalar term = v[j].conj() * c;
      if (mask_sign_below(mask, j) < 0) term = -term;
      auto it = out.find(mask & ~bit);
      if (it == out.end()) {
        if (!term.is_zero()) out.emplace(mask & ~bit, std::move(term));
      } else {
        it->second += term;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

Covariance pairing_covariance(const FockSetup& fs) {
  int d = fs.dim();
  Covariance c(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const FockGenerator& gi = fs.gens[std::size_t(i)];
      const FockGenerator& gj = fs.gens[std::size_t(j)];
      if (gi.side == gj.side) continue;
      Scalar v = gi.side == 0 ? vector_inner(gi.w, gj.w) : -vector_inner(gj.w, gi.w);
      c.set(i, j, v);
    }
  }
  return c;
}

Covariance time_pairing_covariance(const FockSetup& fs) {
  int d = fs.dim();
  Covariance c(d);
  auto mixed = [&](int a, int b) {  // side_a = 0, side_b = 1
    const FockGenerator& ga = fs.gens[std::size_t(a)];
    const FockGenerator& gb = fs.gens[std::size_t(b)];
    if (tau_compare(ga.tau, gb.tau) <= 0) return Scalar(0);
    double dt = ga.tau.to_double() - gb.tau.to_double();
    return Scalar::floating(std::exp(-dt), 0.0) * vector_inner(ga.w, gb.w);
  };
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const FockGenerator& gi = fs.gens[std::size_t(i)];
      const FockGenerator& gj = fs.gens[std::size_t(j)];
      if (gi.side == gj.side) continue;
      Scalar v = gi.side == 0 ? mixed(i, j) : -mixed(j, i);
      if (!v.is_zero()) c.set(i, j, v);
    }
  }
  return c;
}

bool is_time_ordered(const FockSetup& fs, const std::vector<int>& seq) {
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const FockGenerator& cur = fs.gens[std::size_t(seq[k])];
    const FockGenerator& nxt = fs.gens[std::size_t(seq[k + 1])];
    int c = tau_compare(cur.tau, nxt.tau);
    if (c < 0) return false;
    if (c == 0 && cur.side == 0 && nxt.side != 0) return false;
  }
  return true;
}

Scalar time_ordered_vev(const FockSetup& fs, const std::vector<int>& seq) {
  if (!is_time_ordered(fs, seq))
    throw std::invalid_argument("time_ordered_vev: sequence not time ordered");
  FockVector state = fock_vacuum();
  for (std::size_t k = seq.size(); k-- > 0;) {
    const FockGenerator& g = fs.gens[std::size_t(seq[k])];
    double t = g.tau.to_double();
    state = g.side == 0 ? fock_annihilate(g.w, state, fs.h) : fock_create(g.w, state, fs.h);
    Scalar factor = Scalar::floating(std::exp(g.side == 0 ? -t : t), 0.0);
    FockVector scaled;
    fock_add_scaled(scaled, state, factor);
    state = std::move(scaled);
    if (state.empty()) return Scalar(0);
  }
  auto it = state.find(0u);
  return it == state.end() ? Scalar(0) : it->second;
}

bool is_block_ordered(const FockSetup& fs, const std::vector<int>& seq) {
  bool seen_creation = false;
  for (int i : seq) {
    int side = fs.gens[std::size_t(i)].side;
    if (side == 1) {
      seen_creation = true;
    } else if (seen_creation) {
      return false;
    }
  }
  return true;
}

Scalar static_vev(const FockSetup& fs, const std::vector<int>& seq) {
  if (!is_block_ordered(fs, seq))
    throw std::invalid_argument("static_vev: sequence not block ordered");
  FockVector state = fock_vacuum();
  for (std::size_t k = seq.size(); k-- > 0;) {
    const FockGenerator& g = fs.gens[std::size_t(seq[k])];
    state = g.side == 0 ? fock_annihilate(g.w, state, fs.h) : fock_create(g.w, state, fs.h);
    if (state.empty()) return Scalar(0);
  }
  auto it = state.find(0u);
  return it == state.end() ? Scalar(0) : it->second;
}

bool gram_bound_check(const Covariance& c, const Scalar& s_squared, int max_m) {
  if (c.dim > 20) throw std::invalid_argument("gram_bound_check: dimension too large");
  bool exact = s_squared.exact();
  for (const Scalar& v : c.m)
    if (!v.exact()) exact = false;
  PfaffianTable<Scalar> tab(c);
  double s = std::sqrt(s_squared.to_double());
  for (std::uint64_t subset = 0; subset < (std::uint64_t(1) << c.dim); ++subset) {
    int n = std::popcount(subset);
    if (n > max_m || (n & 1)) continue;  // odd moments vanish
    Scalar pf = tab.pf(subset);
    if (exact) {
      Scalar mag2 = pf * pf.conj();
      mpq_class bound(1);
      for (int k = 0; k < n; ++k) bound *= s_squared.re_rational();
      if (cmp(mag2.re_rational(), bound) > 0) return false;
    } else {
      double bound = std::pow(s, n);
      if (pf.abs() > bound * (1.0 + 1e-9) + 1e-12) return false;
    }
  }
  return true;
}

}  // namespace grwick
