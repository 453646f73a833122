#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "grwick/gaussian.hpp"
#include "grwick/instance_gen.hpp"
#include "grwick/randgen.hpp"

using namespace grwick;

namespace {

// Independent Pfaffian: enumerate perfect matchings explicitly and compute
// each sign from the inversion count of the flattened pairing sequence.
Scalar pf_matchings(const std::vector<std::vector<Scalar>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Scalar(1);
  if (n % 2) return Scalar(0);
  std::vector<int> seq;
  std::vector<bool> used(n, false);
  Scalar total(0);
  std::function<void(Scalar)> rec = [&](Scalar acc) {
    int i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      int inv = 0;
      for (std::size_t p = 0; p < seq.size(); ++p)
        for (std::size_t q = p + 1; q < seq.size(); ++q)
          if (seq[p] > seq[q]) ++inv;
      total = total + (inv % 2 ? -acc : acc);
      return;
    }
    used[i] = true;
    for (int j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      seq.push_back(i);
      seq.push_back(j);
      rec(acc * m[i][j]);
      seq.pop_back();
      seq.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec(Scalar(1));
  return total;
}

std::vector<std::vector<Scalar>> random_antisym(Rng& rng, int n) {
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Scalar v = rng.rational(3, 3);
      m[i][j] = v;
      m[j][i] = -v;
    }
  return m;
}

double det_double(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int i = k + 1; i < n; ++i) {
      double l = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= l * a[k][j];
    }
  }
  return det;
}

// 1/2, 1/3, 1/4, 1/5, 1/6, 1/7 down the upper triangle
Covariance frozen_covariance() {
  Covariance c(4);
  long den = 2;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) c.set(i, j, Scalar::rational(1, den++));
  return c;
}

}  // namespace

TEST_CASE("pfaffian matches the matching expansion") {
  Rng rng(101);
  for (int n : {0, 2, 3, 4, 5, 6, 8}) {
    for (int rep = 0; rep < 4; ++rep) {
      auto m = random_antisym(rng, n);
      CHECK(pfaffian(m) == pf_matchings(m));
    }
  }
}

TEST_CASE("pfaffian frozen value") {
  Covariance c = frozen_covariance();
  // af - be + cd = 1/14 - 1/18 + 1/20
  CHECK(pfaffian(c) == Scalar::rational(83, 1260));
  std::vector<std::vector<Scalar>> m(4, std::vector<Scalar>(4, Scalar(0)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = c.at(i, j);
  CHECK(pfaffian(m) == Scalar::rational(83, 1260));
}

TEST_CASE("pfaffian squares to the determinant") {
  Rng rng(77);
  for (int n : {4, 8, 10, 12}) {
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar::floating(0.0)));
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double v = rng.unit() - 0.5;
        m[i][j] = Scalar::floating(v);
        m[j][i] = Scalar::floating(-v);
        d[i][j] = v;
        d[j][i] = -v;
      }
    double pf = pfaffian(m).to_double();
    double det = det_double(d);
    CHECK(pf * pf == doctest::Approx(det).epsilon(1e-9));
  }
}

TEST_CASE("pfaffian validates input") {
  std::vector<std::vector<Scalar>> bad{{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
  CHECK_THROWS_AS(pfaffian(bad), std::invalid_argument);
  std::vector<std::vector<Scalar>> ragged{{Scalar(0)}, {Scalar(0), Scalar(0)}};
  CHECK_THROWS_AS(pfaffian(ragged), std::invalid_argument);
}

TEST_CASE("moments of the gaussian measure") {
  Covariance c = frozen_covariance();
  Signature s(0, 4, 1);
  auto mono = [&](std::vector<int> idx) { return monomial_of<Scalar>(s, 0, idx); };

  CHECK(gaussian_integral(Element<Scalar>::unit(s), c, 0).z_part() == Scalar(1));
  CHECK(gaussian_integral(mono({0, 1}), c, 0).z_part() == Scalar::rational(1, 2));
  CHECK(gaussian_integral(mono({1, 0}), c, 0).z_part() == Scalar::rational(-1, 2));
  CHECK(gaussian_integral(mono({0}), c, 0).is_zero());
  CHECK(gaussian_integral(mono({0, 1, 2}), c, 0).is_zero());
  // four-point moment = C01 C23 - C02 C13 + C03 C12
  CHECK(gaussian_integral(mono({0, 1, 2, 3}), c, 0).z_part() == Scalar::rational(83, 1260));

  CHECK(sequence_moment(c, {0, 1}) == Scalar::rational(1, 2));
  CHECK(sequence_moment(c, {0, 1, 2, 3}) == Scalar::rational(83, 1260));
  CHECK(sequence_moment(c, {2, 1}) == Scalar::rational(-1, 5));
  CHECK(sequence_moment(c, {0, 1, 2}).is_zero());
  CHECK(sequence_moment(c, {0, 0}).is_zero());
  CHECK(sequence_moment(c, {1, 2, 1, 3}).is_zero());
  CHECK(sequence_moment(c, {}) == Scalar(1));
}

TEST_CASE("integral drops the integrated copy") {
  Covariance c = frozen_covariance();
  Signature s(1, 4, 2);
  Element<Scalar> f = Element<Scalar>::v_gen(s, 0, 0) * Element<Scalar>::v_gen(s, 1, 0) *
                      Element<Scalar>::v_gen(s, 1, 1);
  Element<Scalar> g = gaussian_integral(f, c, 1);
  CHECK(g.sig == Signature(1, 4, 1));
  CHECK(g == Element<Scalar>::v_gen(Signature(1, 4, 1), 0, 0).scaled(Scalar::rational(1, 2)));

  // integrating a copy the element does not touch just removes it
  Element<Scalar> h = Element<Scalar>::v_gen(s, 0, 2).scaled(Scalar(3));
  CHECK(gaussian_integral(h, c, 1) ==
        Element<Scalar>::v_gen(Signature(1, 4, 1), 0, 2).scaled(Scalar(3)));
}

TEST_CASE("wick ordering subtracts pairings") {
  Covariance c = frozen_covariance();
  Signature s(0, 4, 1);
  auto v = [&](int i) { return Element<Scalar>::v_gen(s, 0, i); };

  Element<Scalar> w = wick_order(v(0) * v(1), c, 0);
  CHECK(w == v(0) * v(1) - Element<Scalar>::unit(s).scaled(Scalar::rational(1, 2)));
  CHECK(gaussian_integral(w, c, 0).is_zero());

  // a wick-ordered monomial integrates to zero at every degree
  Element<Scalar> w4 = wick_order(v(0) * v(1) * v(2) * v(3), c, 0);
  CHECK(gaussian_integral(w4, c, 0).is_zero());
  CHECK(gaussian_integral(wick_order(v(2), c, 0), c, 0).is_zero());
}

TEST_CASE("wick ordering round-trips") {
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    Covariance c = random_covariance(rng, 4);
    Signature s(2, 4, 2);
    Element<Scalar> f = random_element(rng, s, {4, false, true, 5, -1, false, false});
    CHECK(unwick(wick_order(f, c, 0), c, 0) == f);
    CHECK(unwick(wick_order(f, c, {0, 1}), c, {0, 1}) == f);
    CHECK(wick_order(unwick(f, c, 1), c, 1) == f);
    // ordering different copies commutes
    CHECK(wick_order(wick_order(f, c, 0), c, 1) == wick_order(wick_order(f, c, 1), c, 0));
    // ordering against c is the same convolution as unwicking against -c
    CHECK(wick_order(f, c, 0) == unwick(f, -c, 0));
  }
}

TEST_CASE("left derivatives anticommute correctly") {
  Signature s(1, 4, 1);
  auto v = [&](int i) { return Element<Scalar>::v_gen(s, 0, i); };
  Element<Scalar> f = v(0) * v(1);

  CHECK(left_derivative_v(f, 0, 0) == v(1));
  CHECK(left_derivative_v(f, 0, 1) == -v(0));
  CHECK(left_derivative_v(f, 0, 2).is_zero());
  CHECK(left_derivative_v(left_derivative_v(f, 0, 1), 0, 0) ==
        -Element<Scalar>::unit(s));

  // derivative is an odd operator: acts through even factors unchanged
  Element<Scalar> g = v(0) * v(1) * v(2);
  CHECK(left_derivative_v(g, 0, 2) == v(0) * v(1));
  CHECK(left_derivative_v(g, 0, 0) == v(1) * v(2));
  CHECK(left_derivative(Element<Scalar>::a_gen(s, 0) * v(0), 0) == v(0));
}

TEST_CASE("source-field identity") {
  Rng rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    Covariance c = random_covariance(rng, 4);
    CHECK(generating_identity_check(c, 3));
  }
  CHECK(generating_identity_check(frozen_covariance(), 4));
}

TEST_CASE("mixed wick moments form determinants") {
  Covariance c = frozen_covariance();
  CHECK(moment_wick_pair({0}, {1}, c) == Scalar::rational(1, 2));
  CHECK(moment_wick_pair({0}, {0}, c) == Scalar(0));
  CHECK(moment_wick_pair({0, 1}, {2}, c) == Scalar(0));
  // det [[C02, C03], [C12, C13]]
  CHECK(moment_wick_pair({0, 1}, {2, 3}, c) ==
        c.at(0, 2) * c.at(1, 3) - c.at(0, 3) * c.at(1, 2));
  CHECK(moment_wick_pair({0, 1}, {2, 3}, c) == Scalar::rational(1, 180));
}

TEST_CASE("covariance derivative of the integral") {
  Covariance c0 = frozen_covariance();
  Covariance dir(4);
  dir.set(0, 1, Scalar(1));
  Signature s(0, 4, 1);
  Element<Scalar> f = monomial_of<Scalar>(s, 0, {0, 1, 2, 3});

  // d/dk Pf(C0 + k dir) at 0 picks out the complementary pairing
  Element<Scalar> d = jet_gaussian_derivative(f, c0, dir);
  CHECK(d == Element<Scalar>::constant(Signature(0, 4, 0), c0.at(2, 3)));

  // both internal routes must agree on random data too (throws otherwise)
  Rng rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    Covariance a = random_covariance(rng, 4);
    Covariance b = random_covariance(rng, 4);
    Element<Scalar> g = random_element(rng, Signature(2, 4, 1), {3, false, true, 4, -1, false, false});
    CHECK_NOTHROW((void)jet_gaussian_derivative(g, a, b));
  }
}
