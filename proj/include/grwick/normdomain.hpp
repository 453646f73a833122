#pragma once

#include <array>
#include <vector>

namespace grwick {

// Truncated formal power series in up to three bookkeeping variables, with
// coefficients in [0, +inf]. Addition and comparison are componentwise; the
// product is convolution with the convention 0 * inf = inf, so unbounded
// quantities stay unbounded under products. Series are truncated at a global
// total degree (FRG_MAX_DEGREE in the environment, default 4).

int norm_series_max_degree();

// Exponent tuples with total degree within the cap, in (total degree, lex)
// order; unused coordinates stay zero. Entry 0 is the constant term.
const std::vector<std::array<int, 3>>& norm_series_exponents(int d);

double nv_mul(double a, double b);

class NormElement {
public:
  explicit NormElement(int d = 0);
  static NormElement scalar(int d, double v);
  static NormElement infinite(int d);
  static NormElement variable(int d, int i);

  int dim() const { return d_; }
  int size() const { return static_cast<int>(c_.size()); }
  double at(int rank) const { return c_.at(static_cast<std::size_t>(rank)); }
  double at(const std::array<int, 3>& gamma) const;
  void set(const std::array<int, 3>& gamma, double v);
  void add(const std::array<int, 3>& gamma, double v);
  // As add, but contributions past the degree cap are dropped.
  void add_truncated(const std::array<int, 3>& gamma, double v);
  double constant_term() const { return c_[0]; }

  bool is_finite() const;
  NormElement scaled(double s) const;

  friend NormElement operator+(const NormElement& a, const NormElement& b);
  friend NormElement operator*(const NormElement& a, const NormElement& b);
  NormElement& operator+=(const NormElement& o) { return *this = *this + o; }

  const std::vector<double>& coeffs() const { return c_; }

  void check_same(const NormElement& o) const;

private:
  int d_ = 0;
  std::vector<double> c_;
};

// Componentwise comparison with a small relative slack; an infinite entry is
// only dominated by an infinite entry.
bool nv_leq(const NormElement& a, const NormElement& b);

// Componentwise maximum.
NormElement nv_max(const NormElement& a, const NormElement& b);

// (a - x)^{-1} = (a - x_0)^{-1} sum_n ((x - x_0)/(a - x_0))^n, defined when
// the constant term x_0 is finite and strictly below a > 0.
NormElement nv_geometric_inverse(double a, const NormElement& x);

}  // namespace grwick
