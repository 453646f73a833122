#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "grwick/instance_gen.hpp"
#include "grwick/randgen.hpp"
#include "grwick/seminorm.hpp"

using namespace grwick;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// random element with exactly representable (dyadic) coefficients
NormElement dyadic(Rng& rng, int d) {
  NormElement e(d);
  const auto& exps = norm_series_exponents(d);
  for (std::size_t i = 0; i < exps.size(); ++i)
    e.add(exps[i], static_cast<double>(rng.below(9)) / 4.0);
  return e;
}

bool nv_close(const NormElement& a, const NormElement& b) {
  return nv_leq(a, b) && nv_leq(b, a);
}

}  // namespace

TEST_CASE("norm element basics") {
  NormElement s = NormElement::scalar(0, 2.5);
  CHECK(s.size() == 1);
  CHECK(s.constant_term() == 2.5);
  CHECK((s + s).constant_term() == 5.0);
  CHECK((s * s).constant_term() == 6.25);
  CHECK(s.scaled(2.0).constant_term() == 5.0);
  CHECK(s.is_finite());
  CHECK_FALSE(NormElement::infinite(0).is_finite());
  CHECK_THROWS_AS(NormElement::scalar(0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(NormElement::variable(2, 2), std::out_of_range);

  NormElement x = NormElement::variable(2, 0);
  NormElement y = NormElement::variable(2, 1);
  NormElement p = (x + y) * (x + y);
  CHECK(p.at({2, 0, 0}) == 1.0);
  CHECK(p.at({1, 1, 0}) == 2.0);
  CHECK(p.at({0, 2, 0}) == 1.0);
  CHECK(p.at({0, 0, 0}) == 0.0);
  CHECK(NormElement(2).size() == static_cast<int>(norm_series_exponents(2).size()));
}

TEST_CASE("infinite entries absorb everything") {
  CHECK(std::isinf(nv_mul(0.0, kInf)));
  CHECK(std::isinf(nv_mul(kInf, 0.0)));
  CHECK(nv_mul(2.0, 3.0) == 6.0);

  NormElement i = NormElement::infinite(0);
  NormElement z = NormElement::scalar(0, 0.0);
  CHECK_FALSE((i * z).is_finite());
  CHECK_FALSE((i + z).is_finite());
  CHECK(nv_leq(i, i));
  CHECK(nv_leq(NormElement::scalar(0, 1e300), i));
  CHECK_FALSE(nv_leq(i, NormElement::scalar(0, 1e300)));
}

TEST_CASE("comparison and maximum") {
  NormElement a = NormElement::scalar(0, 1.0);
  NormElement b = NormElement::scalar(0, 2.0);
  CHECK(nv_leq(a, b));
  CHECK_FALSE(nv_leq(b, a));
  CHECK(nv_leq(a, a));
  CHECK(nv_max(a, b).constant_term() == 2.0);

  NormElement x = NormElement::variable(1, 0);
  // incomparable pair: max picks each coordinate separately
  NormElement u = a.scaled(3.0) + x;          // 3 + t
  NormElement v = a + x.scaled(5.0);          // 1 + 5t
  CHECK_FALSE(nv_leq(u, v));
  CHECK_FALSE(nv_leq(v, u));
  NormElement m = nv_max(u, v);
  CHECK(m.at({0, 0, 0}) == 3.0);
  CHECK(m.at({1, 0, 0}) == 5.0);
  CHECK(nv_leq(u, m));
  CHECK(nv_leq(v, m));
}

TEST_CASE("algebra laws hold exactly on dyadic data") {
  Rng rng(9);
  for (int d = 0; d <= 3; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      NormElement a = dyadic(rng, d), b = dyadic(rng, d), c = dyadic(rng, d);
      CHECK((a + b).coeffs() == (b + a).coeffs());
      CHECK(((a + b) + c).coeffs() == (a + (b + c)).coeffs());
      CHECK((a * b).coeffs() == (b * a).coeffs());
      // truncation keeps exactly the triples below the cap, both ways
      CHECK(((a * b) * c).coeffs() == (a * (b * c)).coeffs());
      CHECK((a * (b + c)).coeffs() == (a * b + a * c).coeffs());
      CHECK((a * NormElement::scalar(d, 1.0)).coeffs() == a.coeffs());

      // monotonicity in every slot
      CHECK(nv_leq(a, a + b));
      CHECK(nv_leq(a * c, (a + b) * c));
      CHECK(nv_leq(a.scaled(0.5), a));
      CHECK(nv_leq(a, nv_max(a, b)));
    }
  }
}

TEST_CASE("geometric inverse satisfies its defining identity") {
  Rng rng(31);
  for (int d = 0; d <= 3; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      NormElement x = dyadic(rng, d);
      double a = 2.25 + static_cast<double>(rng.below(8)) / 4.0;
      NormElement geo = nv_geometric_inverse(a, x);
      // (a - x) geo = 1 in the truncated algebra, written without subtraction
      NormElement lhs = geo.scaled(a);
      NormElement rhs = NormElement::scalar(d, 1.0) + x * geo;
      CHECK(nv_close(lhs, rhs));
    }
  }
  CHECK_THROWS_AS(nv_geometric_inverse(1.0, NormElement::scalar(0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(nv_geometric_inverse(1.0, NormElement::infinite(0)),
                  std::domain_error);
  CHECK_THROWS_AS(nv_geometric_inverse(0.0, NormElement::scalar(0, 0.0)),
                  std::domain_error);
}

TEST_CASE("component norm frozen values") {
  WeightAssignment none0 = WeightAssignment::none(0);

  Signature s(0, 2, 1);
  Element<Scalar> f =
      (Element<Scalar>::v_gen(s, 0, 0) * Element<Scalar>::v_gen(s, 0, 1))
          .scaled(Scalar::rational(1, 2));
  CHECK(component_norm(f, {2}, none0).constant_term() == 0.25);

  // bare constants carry no norm; coefficient monomials do
  Signature s0(2, 2, 0);
  Element<Scalar> g =
      Element<Scalar>::unit(s0).scaled(Scalar(5)) +
      (Element<Scalar>::a_gen(s0, 0) * Element<Scalar>::a_gen(s0, 1))
          .scaled(Scalar::rational(3, 2));
  CHECK(component_norm(g, {}, WeightAssignment::none(2)).constant_term() == 1.5);

  WeightAssignment cyc = WeightAssignment::cyclic(2, 2);
  NormElement n = component_norm(g, {}, cyc);
  CHECK(n.at({1, 1, 0}) == 1.5);
  CHECK(n.at({0, 0, 0}) == 0.0);

  // mixed degrees must match the declared groups
  Element<Scalar> bad = Element<Scalar>::v_gen(s, 0, 0) +
                        Element<Scalar>::v_gen(s, 0, 0) * Element<Scalar>::v_gen(s, 0, 1);
  CHECK_THROWS_AS(component_norm(bad, {2}, none0), std::invalid_argument);

  CHECK_THROWS_AS(WeightAssignment::cyclic(2, 4), std::invalid_argument);
}

TEST_CASE("component norm agrees with the tensor norm") {
  Rng rng(41);
  Signature s(2, 3, 2);
  WeightAssignment wa = WeightAssignment::cyclic(2, 2);
  for (int rep = 0; rep < 10; ++rep) {
    int m = static_cast<int>(rng.below(3));
    Element<Scalar> f = random_homogeneous(rng, s, m, {2, 1}, 3);
    NormElement direct = component_norm(f, {2, 1}, wa);
    NormElement via_tensor = l1_linf_tensor(to_tensor(f, {2, 1}), wa);
    CHECK(nv_close(direct, via_tensor));
  }
}

TEST_CASE("aggregate norm hand value") {
  Signature s(0, 2, 1);
  Element<Scalar> f =
      Element<Scalar>::unit(s).scaled(Scalar(7)) +
      (Element<Scalar>::v_gen(s, 0, 0) * Element<Scalar>::v_gen(s, 0, 1))
          .scaled(Scalar::rational(3, 4));
  // (cfrak / b^2) * (alpha b)^2 * (3/4)/2 with alpha=2, b=1/2, cfrak=5;
  // the bare constant 7 contributes nothing
  NormElement n = big_n(f, 2.0, 0.5, NormElement::scalar(0, 5.0), WeightAssignment::none(0));
  CHECK(n.constant_term() == doctest::Approx(7.5).epsilon(1e-12));
  CHECK_THROWS_AS(big_n(f, 0.0, 0.5, NormElement::scalar(0, 1.0), WeightAssignment::none(0)),
                  std::invalid_argument);
}

TEST_CASE("covariance summaries") {
  Covariance c(3);
  c.set(0, 1, Scalar::rational(1, 2));
  c.set(0, 2, Scalar::rational(-1, 3));
  c.set(1, 2, Scalar::rational(1, 4));
  CHECK(covariance_l1_linf(c) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));

  Covariance c2(2);
  c2.set(0, 1, Scalar::rational(1, 4));
  CHECK(measured_integral_bound(c2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(measured_integral_bound(Covariance(3)) == 1.0);  // all moments vanish

  Rng rng(47);
  for (int rep = 0; rep < 5; ++rep) {
    Covariance r = random_covariance(rng, 4);
    double b = measured_integral_bound(r);
    CHECK(moment_bound_holds(r, b));
    if (covariance_l1_linf(r) > 0.0) CHECK_FALSE(moment_bound_holds(r, 0.9 * b));
  }
}
