#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace grwick {

// Complex scalar that is either exact (arbitrary-precision rational real and
// imaginary parts) or floating (complex<double>). Exact is the default mode;
// any operation mixing the two modes produces a float result. Exact-mode
// arithmetic never rounds, so identity suites can compare with operator==.
class Scalar {
public:
  Scalar() : exact_(true) {}
  Scalar(int n) : exact_(true), re_(n) {}
  Scalar(long n) : exact_(true), re_(static_cast<signed long>(n)) {}

  static Scalar rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("Scalar::rational: zero denominator");
    Scalar s;
    s.re_ = mpq_class(num, den);
    s.re_.canonicalize();
    return s;
  }
  static Scalar exact_complex(mpq_class re, mpq_class im) {
    Scalar s;
    s.re_ = std::move(re);
    s.im_ = std::move(im);
    return s;
  }
  static Scalar imaginary() { return exact_complex(0, 1); }
  static Scalar floating(double re, double im = 0.0) {
    Scalar s;
    s.exact_ = false;
    s.f_ = {re, im};
    return s;
  }
  static Scalar floating(std::complex<double> z) {
    Scalar s;
    s.exact_ = false;
    s.f_ = z;
    return s;
  }

  bool exact() const { return exact_; }

  bool is_zero() const {
    return exact_ ? (re_ == 0 && im_ == 0) : (f_.real() == 0.0 && f_.imag() == 0.0);
  }
  bool is_real() const { return exact_ ? im_ == 0 : f_.imag() == 0.0; }

  const mpq_class& re_rational() const {
    require_exact();
    return re_;
  }
  const mpq_class& im_rational() const {
    require_exact();
    return im_;
  }
  std::complex<double> to_complex() const {
    return exact_ ? std::complex<double>(re_.get_d(), im_.get_d()) : f_;
  }
  double to_double() const { return to_complex().real(); }
  double abs() const { return std::abs(to_complex()); }

  Scalar conj() const {
    if (exact_) return exact_complex(re_, -im_);
    return floating(std::conj(f_));
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("Scalar::inverse: division by zero");
    if (exact_) {
      mpq_class n = re_ * re_ + im_ * im_;
      return exact_complex(re_ / n, -im_ / n);
    }
    return floating(1.0 / f_);
  }

  Scalar divided_by_int(long k) const {
    if (k == 0) throw std::domain_error("Scalar: division by zero integer");
    if (exact_) return exact_complex(re_ / k, im_ / k);
    return floating(f_ / static_cast<double>(k));
  }

  // Demote to float mode (identity if already float).
  Scalar to_float() const { return exact_ ? floating(to_complex()) : *this; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return exact_complex(a.re_ + b.re_, a.im_ + b.im_);
    return floating(a.to_complex() + b.to_complex());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return exact_complex(a.re_ - b.re_, a.im_ - b.im_);
    return floating(a.to_complex() - b.to_complex());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_)
      return exact_complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    return floating(a.to_complex() * b.to_complex());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const {
    if (exact_) return exact_complex(-re_, -im_);
    return floating(-f_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Exact comparison; float values compare bitwise (use approx_equal for
  // tolerance-aware checks).
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
    return a.to_complex() == b.to_complex();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const {
    if (!exact_) {
      return "(" + std::to_string(f_.real()) + "," + std::to_string(f_.imag()) + ")";
    }
    std::string s = re_.get_str();
    if (im_ != 0) s += (im_ > 0 ? "+" : "") + im_.get_str() + "i";
    return s;
  }

private:
  void require_exact() const {
    if (!exact_) throw std::logic_error("Scalar: exact value required");
  }

  bool exact_ = true;
  mpq_class re_{0}, im_{0};
  std::complex<double> f_{0.0, 0.0};
};

inline bool approx_equal(const Scalar& a, const Scalar& b, double tol = 1e-9) {
  if (a.exact() && b.exact()) return a == b;
  std::complex<double> x = a.to_complex(), y = b.to_complex();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

}  // namespace grwick
