#include "grwick/tensor.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "grwick/gaussian.hpp"

namespace grwick {

Tensor::Tensor(int a_gens_, int dim_, int slots_)
    : a_gens(a_gens_), dim(dim_), slots(slots_) {
  if (a_gens < 0 || dim < 0 || slots < 0)
    throw std::invalid_argument("Tensor: negative shape");
}

void Tensor::add_term(const Mask& a_mask, std::vector<int> idx, Scalar c) {
  if (static_cast<int>(idx.size()) != slots)
    throw std::invalid_argument("Tensor: wrong slot count");
  for (int v : idx)
    if (v < 0 || v >= dim) throw std::out_of_range("Tensor: index out of range");
  if (c.is_zero()) return;
  TensorKey key{a_mask, std::move(idx)};
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(std::move(key), std::move(c));
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Tensor Tensor::scaled(const Scalar& s) const {
  Tensor r(a_gens, dim, slots);
  if (s.is_zero()) return r;
  for (const auto& [k, c] : terms) r.terms.emplace(k, c * s);
  return r;
}

void Tensor::check_same(const Tensor& o) const {
  if (a_gens != o.a_gens || dim != o.dim || slots != o.slots)
    throw std::invalid_argument("Tensor: shape mismatch");
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  a.check_same(b);
  Tensor r = a;
  for (const auto& [k, c] : b.terms) r.add_term(k.a_mask, k.idx, c);
  return r;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  a.check_same(b);
  Tensor r = a;
  for (const auto& [k, c] : b.terms) r.add_term(k.a_mask, k.idx, -c);
  return r;
}

const std::vector<PermSign>& permutations_with_sign(int n) {
  constexpr int kMax = 8;
  static const auto table = [] {
    std::array<std::vector<PermSign>, kMax + 1> t;
    t[0] = {{{}, 1}};
    for (int m = 1; m <= kMax; ++m) {
      t[m].reserve(t[m - 1].size() * m);
      for (const auto& [p, s] : t[m - 1])
        for (int pos = m - 1; pos >= 0; --pos) {
          std::vector<int> q(p.begin(), p.begin() + pos);
          q.push_back(m - 1);
          q.insert(q.end(), p.begin() + pos, p.end());
          t[m].emplace_back(std::move(q), ((m - 1 - pos) % 2) ? -s : s);
        }
    }
    return t;
  }();
  if (n < 0 || n > kMax)
    throw std::invalid_argument("permutations_with_sign: size out of range");
  return table[n];
}

Tensor antisymmetrize(const Tensor& f, const std::vector<int>& groups) {
  int total = 0;
  long denom = 1;
  std::vector<int> offs;
  for (int n : groups) {
    if (n < 0) throw std::invalid_argument("antisymmetrize: negative group size");
    offs.push_back(total);
    total += n;
    for (int k = 2; k <= n; ++k) denom *= k;
  }
  if (total != f.slots)
    throw std::invalid_argument("antisymmetrize: group sizes do not sum to slot count");
  Tensor res(f.a_gens, f.dim, f.slots);
  for (const auto& [key, c] : f.terms) {
    Scalar base = c.divided_by_int(denom);
    std::vector<int> cur = key.idx;
    std::function<void(std::size_t, int)> rec = [&](std::size_t g, int sign) {
      if (g == groups.size()) {
        res.add_term(key.a_mask, cur, (sign < 0) ? -base : base);
        return;
      }
      int n = groups[g], o = offs[g];
      for (const auto& [perm, ps] : permutations_with_sign(n)) {
        for (int p = 0; p < n; ++p) cur[o + p] = key.idx[o + perm[p]];
        rec(g + 1, sign * ps);
      }
    };
    rec(0, 1);
  }
  return res;
}

Tensor contract_slots(const Tensor& f, int mu, int nu, const Covariance& c) {
  if (c.dim != f.dim) throw std::invalid_argument("contract_slots: dimension mismatch");
  if (mu < 1 || nu < 1 || mu > f.slots || nu > f.slots || mu == nu)
    throw std::invalid_argument("contract_slots: bad slot pair");
  const int eps = (nu > mu) ? (((nu - mu + 1) % 2 == 0) ? 1 : -1)
                            : (((mu - nu) % 2 == 0) ? 1 : -1);
  Tensor res(f.a_gens, f.dim, f.slots - 2);
  for (const auto& [key, coeff] : f.terms) {
    Scalar cv = c.at(key.idx[mu - 1], key.idx[nu - 1]);
    if (cv.is_zero()) continue;
    std::vector<int> idx;
    idx.reserve(f.slots - 2);
    for (int p = 0; p < f.slots; ++p)
      if (p != mu - 1 && p != nu - 1) idx.push_back(key.idx[p]);
    Scalar v = coeff * cv;
    res.add_term(key.a_mask, std::move(idx), (eps < 0) ? -v : v);
  }
  return res;
}

Tensor tensor_product(const Tensor& f, const Tensor& g) {
  if (f.a_gens != g.a_gens || f.dim != g.dim)
    throw std::invalid_argument("tensor_product: shape mismatch");
  Tensor res(f.a_gens, f.dim, f.slots + g.slots);
  for (const auto& [ka, ca] : f.terms) {
    for (const auto& [kb, cb] : g.terms) {
      if (ka.a_mask.intersects(kb.a_mask)) continue;
      bool neg = merge_parity_odd(ka.a_mask, kb.a_mask);
      if ((kb.a_mask.popcount() * f.slots) & 1) neg = !neg;
      std::vector<int> idx = ka.idx;
      idx.insert(idx.end(), kb.idx.begin(), kb.idx.end());
      Scalar v = ca * cb;
      res.add_term(ka.a_mask | kb.a_mask, std::move(idx), neg ? -v : v);
    }
  }
  return res;
}

namespace {

// Moment of the leading n_first indices of a tuple: the sequence moment,
// evaluated as sign-of-sorting times the memoized subset Pfaffian.
Scalar leading_moment(PfaffianTable<Scalar>& tab, const std::vector<int>& idx,
                      int n_first) {
  if (n_first & 1) return Scalar(0);
  std::uint64_t subset = 0;
  int inversions = 0;
  for (int p = 0; p < n_first; ++p) {
    std::uint64_t bit = std::uint64_t(1) << idx[p];
    if (subset & bit) return Scalar(0);
    for (int q = p + 1; q < n_first; ++q)
      if (idx[q] < idx[p]) ++inversions;
    subset |= bit;
  }
  Scalar v = tab.pf(subset);
  return (inversions & 1) ? -v : v;
}

}  // namespace

Tensor integrate_ant(const Tensor& f, int n_first, const Covariance& c) {
  if (c.dim != f.dim) throw std::invalid_argument("integrate_ant: dimension mismatch");
  if (n_first < 0 || n_first > f.slots)
    throw std::invalid_argument("integrate_ant: bad slot count");
  PfaffianTable<Scalar> tab(c);
  Tensor res(f.a_gens, f.dim, f.slots - n_first);
  for (const auto& [key, coeff] : f.terms) {
    Scalar m = leading_moment(tab, key.idx, n_first);
    if (m.is_zero()) continue;
    res.add_term(key.a_mask,
                 std::vector<int>(key.idx.begin() + n_first, key.idx.end()),
                 coeff * m);
  }
  return res;
}

Tensor to_tensor(const Element<Scalar>& f, const std::vector<int>& groups) {
  const Signature& s = f.sig;
  if (static_cast<int>(groups.size()) != s.copies)
    throw std::invalid_argument("to_tensor: one group per copy required");
  int slots = 0;
  for (int n : groups) slots += n;
  Tensor seed(s.a_gens, s.dim, slots);
  for (const auto& [mask, c] : f.terms) {
    std::vector<int> idx;
    idx.reserve(slots);
    for (int copy = 0; copy < s.copies; ++copy) {
      Mask cm = mask & s.copy_mask(copy);
      if (cm.popcount() != groups[copy])
        throw std::invalid_argument("to_tensor: element not homogeneous of the given degrees");
      for (int b : cm.bits()) idx.push_back(s.index_of_bit(b));
    }
    seed.add_term(mask & s.a_mask_all(), std::move(idx), c);
  }
  return antisymmetrize(seed, groups);
}

Element<Scalar> from_tensor(const Tensor& t, const std::vector<int>& groups,
                            const Signature& sig) {
  if (static_cast<int>(groups.size()) != sig.copies)
    throw std::invalid_argument("from_tensor: one group per copy required");
  if (t.a_gens != sig.a_gens || t.dim != sig.dim)
    throw std::invalid_argument("from_tensor: shape mismatch");
  int slots = 0;
  long mult = 1;
  for (int n : groups) {
    slots += n;
    for (int k = 2; k <= n; ++k) mult *= k;
  }
  if (slots != t.slots) throw std::invalid_argument("from_tensor: slot mismatch");
  Element<Scalar> res(sig);
  for (const auto& [key, c] : t.terms) {
    bool ascending = true;
    Mask m = key.a_mask;
    int off = 0;
    for (std::size_t g = 0; g < groups.size() && ascending; ++g) {
      for (int p = 0; p < groups[g]; ++p) {
        if (p > 0 && key.idx[off + p] <= key.idx[off + p - 1]) {
          ascending = false;
          break;
        }
        m.set(sig.v_bit(static_cast<int>(g), key.idx[off + p]));
      }
      off += groups[g];
    }
    if (!ascending) continue;
    res.add_term(m, c * Scalar(mult));
  }
  return res;
}

Element<Scalar> contract_fields(const Element<Scalar>& f, int copy_k,
                                int copy_l, const Covariance& c) {
  const Signature& s = f.sig;
  if (copy_k == copy_l) throw std::invalid_argument("contract_fields: copies must differ");
  if (copy_k < 0 || copy_k >= s.copies || copy_l < 0 || copy_l >= s.copies)
    throw std::out_of_range("contract_fields: no such copy");
  if (c.dim != s.dim) throw std::invalid_argument("contract_fields: dimension mismatch");
  Element<Scalar> res(s);
  for (const auto& [key, comp] : homogeneous_components(f)) {
    int nk = key.n[copy_k], nl = key.n[copy_l];
    if (nk == 0 || nl == 0) continue;
    Tensor t = to_tensor(comp, key.n);
    auto first_slot = [&](int copy) {
      int o = 0;
      for (int g = 0; g < copy; ++g) o += key.n[g];
      return o + 1;
    };
    Tensor ct = contract_slots(t, first_slot(copy_k), first_slot(copy_l), c)
                    .scaled(Scalar(nl));
    std::vector<int> g2 = key.n;
    --g2[copy_k];
    --g2[copy_l];
    res += from_tensor(ct, g2, s);
  }
  return res;
}

Element<Scalar> contract_fields_via_derivatives(const Element<Scalar>& f,
                                                int copy_k, int copy_l,
                                                const Covariance& c) {
  const Signature& s = f.sig;
  if (copy_k == copy_l)
    throw std::invalid_argument("contract_fields_via_derivatives: copies must differ");
  if (c.dim != s.dim)
    throw std::invalid_argument("contract_fields_via_derivatives: dimension mismatch");
  Element<Scalar> res(s);
  for (const auto& [key, comp] : homogeneous_components(f)) {
    int nk = key.n[copy_k];
    if (nk == 0 || key.n[copy_l] == 0) continue;
    Element<Scalar> acc(s);
    for (int j = 0; j < s.dim; ++j) {
      Element<Scalar> dj = left_derivative_v(comp, copy_l, j);
      if (dj.is_zero()) continue;
      for (int i = 0; i < s.dim; ++i) {
        const Scalar& cij = c.at(i, j);
        if (cij.is_zero()) continue;
        Element<Scalar> g = left_derivative_v(dj, copy_k, i);
        if (g.is_zero()) continue;
        acc += g.scaled(cij);
      }
    }
    res += acc.scaled(Scalar::rational(-1, nk));
  }
  return res;
}

}  // namespace grwick
