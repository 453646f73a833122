#include "grwick/seminorm.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace grwick {

WeightAssignment WeightAssignment::cyclic(int a_gens, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("WeightAssignment: d must be 1..3");
  WeightAssignment wa;
  wa.d = d;
  wa.w.resize(static_cast<std::size_t>(a_gens), {0, 0, 0});
  for (int g = 0; g < a_gens; ++g) wa.w[static_cast<std::size_t>(g)][g % d] = 1;
  return wa;
}

std::array<int, 3> WeightAssignment::profile(const Mask& a_mask) const {
  std::array<int, 3> p{0, 0, 0};
  for (int b : a_mask.bits()) {
    if (b >= static_cast<int>(w.size()))
      throw std::out_of_range("WeightAssignment: generator without a profile");
    for (int k = 0; k < 3; ++k) p[k] += w[static_cast<std::size_t>(b)][k];
  }
  return p;
}

NormElement l1_linf_tensor(const Tensor& t, const WeightAssignment& wa) {
  NormElement res(wa.d);
  if (t.slots == 0) {
    for (const auto& [key, c] : t.terms) {
      if (key.a_mask.popcount() == 0) continue;
      res.add_truncated(wa.profile(key.a_mask), c.abs());
    }
    return res;
  }
  // Per coefficient monomial: column sums for every slot position, then the
  // largest one.
  std::map<Mask, std::vector<std::map<int, double>>> sums;
  for (const auto& [key, c] : t.terms) {
    auto& cols = sums[key.a_mask];
    if (cols.empty()) cols.resize(static_cast<std::size_t>(t.slots));
    double a = c.abs();
    for (int k = 0; k < t.slots; ++k)
      cols[static_cast<std::size_t>(k)][key.idx[static_cast<std::size_t>(k)]] += a;
  }
  for (const auto& [a_mask, cols] : sums) {
    double best = 0.0;
    for (const auto& col : cols)
      for (const auto& [v, s] : col)
        if (s > best) best = s;
    res.add_truncated(wa.profile(a_mask), best);
  }
  return res;
}

NormElement component_norm(const Element<Scalar>& comp,
                           const std::vector<int>& groups,
                           const WeightAssignment& wa) {
  const Signature& sig = comp.sig;
  if (static_cast<int>(groups.size()) != sig.copies)
    throw std::invalid_argument("component_norm: one group per copy required");
  int total = 0;
  for (int n : groups) total += n;
  NormElement res(wa.d);
  if (total == 0) {
    for (const auto& [mask, c] : comp.terms) {
      if (mask.popcount() == 0) continue;
      res.add_truncated(wa.profile(mask), c.abs());
    }
    return res;
  }
  std::map<Mask, std::vector<std::map<int, double>>> sums;
  Mask all_a = sig.a_mask_all();
  for (const auto& [mask, c] : comp.terms) {
    Mask am = mask & all_a;
    auto& cols = sums[am];
    if (cols.empty()) cols.resize(static_cast<std::size_t>(sig.copies));
    double a = c.abs();
    for (int j = 0; j < sig.copies; ++j) {
      int nj = groups[static_cast<std::size_t>(j)];
      Mask cm = mask & sig.copy_mask(j);
      if (cm.popcount() != nj)
        throw std::invalid_argument("component_norm: element not homogeneous of the given degrees");
      if (nj == 0) continue;
      for (int b : cm.bits())
        cols[static_cast<std::size_t>(j)][sig.index_of_bit(b)] += a / nj;
    }
  }
  for (const auto& [a_mask, cols] : sums) {
    double best = 0.0;
    for (const auto& col : cols)
      for (const auto& [v, s] : col)
        if (s > best) best = s;
    res.add_truncated(wa.profile(a_mask), best);
  }
  return res;
}

NormElement big_n(const Element<Scalar>& f, double alpha, double b,
                  const NormElement& c_frak, const WeightAssignment& wa) {
  if (!(alpha > 0.0) || !(b > 0.0))
    throw std::invalid_argument("big_n: alpha and b must be positive");
  const Signature& sig = f.sig;
  std::map<std::vector<int>, Element<Scalar>> slices;
  for (const auto& [mask, c] : f.terms) {
    std::vector<int> n(static_cast<std::size_t>(sig.copies));
    for (int j = 0; j < sig.copies; ++j)
      n[static_cast<std::size_t>(j)] = (mask & sig.copy_mask(j)).popcount();
    auto it = slices.find(n);
    if (it == slices.end()) it = slices.emplace(std::move(n), Element<Scalar>(sig)).first;
    it->second.add_term(mask, c);
  }
  NormElement acc(wa.d);
  for (const auto& [n, slice] : slices) {
    int deg = 0;
    for (int x : n) deg += x;
    acc += component_norm(slice, n, wa).scaled(std::pow(alpha * b, deg));
  }
  return acc * c_frak.scaled(1.0 / (b * b));
}

double covariance_l1_linf(const Covariance& c) {
  double best = 0.0;
  for (int i = 0; i < c.dim; ++i) {
    double row = 0.0;
    for (int j = 0; j < c.dim; ++j) row += c.at(i, j).abs();
    if (row > best) best = row;
  }
  return best;
}

double measured_integral_bound(const Covariance& c) {
  if (c.dim > 20)
    throw std::invalid_argument("measured_integral_bound: dimension too large");
  PfaffianTable<Scalar> tab(c);
  double best = 0.0;
  const std::uint64_t full = std::uint64_t(1) << c.dim;
  for (std::uint64_t sub = 1; sub < full; ++sub) {
    int n = std::popcount(sub);
    if (n & 1) continue;
    double v = tab.pf(sub).abs();
    if (v > 0.0) {
      double g = 2.0 * std::pow(v, 1.0 / n);
      if (g > best) best = g;
    }
  }
  return best > 0.0 ? best : 1.0;
}

bool moment_bound_holds(const Covariance& c, double b) {
  if (c.dim > 20)
    throw std::invalid_argument("moment_bound_holds: dimension too large");
  PfaffianTable<Scalar> tab(c);
  const std::uint64_t full = std::uint64_t(1) << c.dim;
  for (std::uint64_t sub = 1; sub < full; ++sub) {
    int n = std::popcount(sub);
    if (n & 1) continue;
    if (tab.pf(sub).abs() > std::pow(b / 2.0, n) * (1.0 + 1e-9)) return false;
  }
  return true;
}

}  // namespace grwick
