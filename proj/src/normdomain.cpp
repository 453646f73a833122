#include "grwick/normdomain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace grwick {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ExponentTable {
  std::vector<std::array<int, 3>> exps;
  std::map<std::array<int, 3>, int> rank;
  std::vector<std::vector<int>> prod;  // rank x rank -> rank, or -1 past the cap
};

ExponentTable build_table(int d, int cap) {
  ExponentTable t;
  std::array<int, 3> g{0, 0, 0};
  // Enumerate in (total degree, lex) order.
  for (int total = 0; total <= cap; ++total) {
    std::vector<std::array<int, 3>> level;
    std::function<void(int, int)> rec = [&](int coord, int left) {
      if (coord == d) {
        if (left == 0) level.push_back(g);
        return;
      }
      for (int e = left; e >= 0; --e) {
        g[coord] = e;
        rec(coord + 1, left - e);
      }
      g[coord] = 0;
    };
    if (d == 0) {
      if (total == 0) level.push_back(g);
    } else {
      rec(0, total);
    }
    std::sort(level.begin(), level.end());
    for (const auto& e : level) {
      t.rank.emplace(e, static_cast<int>(t.exps.size()));
      t.exps.push_back(e);
    }
  }
  int n = static_cast<int>(t.exps.size());
  t.prod.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::array<int, 3> s{t.exps[i][0] + t.exps[j][0], t.exps[i][1] + t.exps[j][1],
                           t.exps[i][2] + t.exps[j][2]};
      auto it = t.rank.find(s);
      if (it != t.rank.end()) t.prod[i][j] = it->second;
    }
  return t;
}

const ExponentTable& table(int d) {
  if (d < 0 || d > 3) throw std::invalid_argument("NormElement: dimension must be 0..3");
  static const std::array<ExponentTable, 4> tables = [] {
    std::array<ExponentTable, 4> r;
    int cap = norm_series_max_degree();
    for (int d2 = 0; d2 <= 3; ++d2) r[static_cast<std::size_t>(d2)] = build_table(d2, cap);
    return r;
  }();
  return tables[static_cast<std::size_t>(d)];
}

void require_valid(double v) {
  if (std::isnan(v) || v < 0.0)
    throw std::invalid_argument("NormElement: coefficients must lie in [0, inf]");
}

}  // namespace

int norm_series_max_degree() {
  static const int k = [] {
    if (const char* s = std::getenv("FRG_MAX_DEGREE")) {
      int v = std::atoi(s);
      if (v >= 0 && v <= 12) return v;
    }
    return 4;
  }();
  return k;
}

const std::vector<std::array<int, 3>>& norm_series_exponents(int d) {
  return table(d).exps;
}

double nv_mul(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return a * b;
}

NormElement::NormElement(int d) : d_(d), c_(table(d).exps.size(), 0.0) {}

NormElement NormElement::scalar(int d, double v) {
  require_valid(v);
  NormElement e(d);
  e.c_[0] = v;
  return e;
}

NormElement NormElement::infinite(int d) { return scalar(d, kInf); }

NormElement NormElement::variable(int d, int i) {
  NormElement e(d);
  if (i < 0 || i >= d) throw std::out_of_range("NormElement::variable: bad index");
  std::array<int, 3> g{0, 0, 0};
  g[static_cast<std::size_t>(i)] = 1;
  e.set(g, 1.0);
  return e;
}

double NormElement::at(const std::array<int, 3>& gamma) const {
  auto it = table(d_).rank.find(gamma);
  if (it == table(d_).rank.end()) throw std::out_of_range("NormElement: exponent past cap");
  return c_[static_cast<std::size_t>(it->second)];
}

void NormElement::set(const std::array<int, 3>& gamma, double v) {
  require_valid(v);
  auto it = table(d_).rank.find(gamma);
  if (it == table(d_).rank.end()) throw std::out_of_range("NormElement: exponent past cap");
  c_[static_cast<std::size_t>(it->second)] = v;
}

void NormElement::add(const std::array<int, 3>& gamma, double v) {
  require_valid(v);
  auto it = table(d_).rank.find(gamma);
  if (it == table(d_).rank.end()) throw std::out_of_range("NormElement: exponent past cap");
  c_[static_cast<std::size_t>(it->second)] += v;
}

void NormElement::add_truncated(const std::array<int, 3>& gamma, double v) {
  require_valid(v);
  auto it = table(d_).rank.find(gamma);
  if (it == table(d_).rank.end()) return;
  c_[static_cast<std::size_t>(it->second)] += v;
}

bool NormElement::is_finite() const {
  for (double v : c_)
    if (std::isinf(v)) return false;
  return true;
}

NormElement NormElement::scaled(double s) const {
  require_valid(s);
  NormElement e(d_);
  for (std::size_t i = 0; i < c_.size(); ++i) e.c_[i] = nv_mul(c_[i], s);
  return e;
}

void NormElement::check_same(const NormElement& o) const {
  if (d_ != o.d_ || c_.size() != o.c_.size())
    throw std::invalid_argument("NormElement: dimension mismatch");
}

NormElement operator+(const NormElement& a, const NormElement& b) {
  a.check_same(b);
  NormElement e(a.d_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) e.c_[i] = a.c_[i] + b.c_[i];
  return e;
}

NormElement operator*(const NormElement& a, const NormElement& b) {
  a.check_same(b);
  const auto& prod = table(a.d_).prod;
  NormElement e(a.d_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      int t = prod[i][j];
      if (t < 0) continue;
      double v = nv_mul(a.c_[i], b.c_[j]);
      if (v != 0.0) e.c_[static_cast<std::size_t>(t)] += v;
    }
  }
  return e;
}

bool nv_leq(const NormElement& a, const NormElement& b) {
  a.check_same(b);
  for (int i = 0; i < a.size(); ++i) {
    double x = a.at(i), y = b.at(i);
    if (std::isinf(x)) {
      if (!std::isinf(y)) return false;
      continue;
    }
    if (std::isinf(y)) continue;
    if (x > y * (1.0 + 1e-9) + 1e-12) return false;
  }
  return true;
}

NormElement nv_max(const NormElement& a, const NormElement& b) {
  a.check_same(b);
  NormElement e(a.dim());
  for (int i = 0; i < a.size(); ++i) {
    double x = a.at(i), y = b.at(i);
    e.set(norm_series_exponents(a.dim())[static_cast<std::size_t>(i)], x > y ? x : y);
  }
  return e;
}

NormElement nv_geometric_inverse(double a, const NormElement& x) {
  double x0 = x.constant_term();
  if (!(a > 0.0) || std::isinf(x0) || !(a - x0 > 0.0))
    throw std::domain_error("nv_geometric_inverse: constant term not strictly below a");
  double r = 1.0 / (a - x0);
  NormElement y = x;
  y.set({0, 0, 0}, 0.0);
  y = y.scaled(r);
  NormElement res = NormElement::scalar(x.dim(), 1.0);
  NormElement pw = NormElement::scalar(x.dim(), 1.0);
  for (int n = 1; n <= norm_series_max_degree(); ++n) {
    pw = pw * y;
    res += pw;
  }
  return res.scaled(r);
}

}  // namespace grwick
