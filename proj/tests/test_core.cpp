#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "grwick/element.hpp"
#include "grwick/randgen.hpp"
#include "grwick/rings.hpp"

using namespace grwick;

TEST_CASE("mask bit operations") {
  Mask m;
  CHECK(m.empty());
  m.set(3);
  m.set(70);
  CHECK(m.test(3));
  CHECK(m.test(70));
  CHECK_FALSE(m.test(4));
  CHECK(m.popcount() == 2);

  Mask n = Mask::single(3);
  CHECK((m & n) == n);
  CHECK(m.intersects(n));
  CHECK(m.without(n) == Mask::single(70));
  CHECK_FALSE(m.without(n).intersects(n));
  CHECK((n | Mask::single(70)) == m);

  m.reset(70);
  CHECK(m == n);

  std::vector<int> bits;
  Mask k;
  k.set(0);
  k.set(65);
  k.set(17);
  for (int b : k.bits()) bits.push_back(b);
  CHECK(bits == std::vector<int>{0, 17, 65});

  CHECK(k.count_below(17) == 1);
  CHECK(k.count_above(17) == 1);
  CHECK(k.count_above(65) == 0);
  CHECK(k.count_below(0) == 0);
}

TEST_CASE("merge parity counts inversions") {
  auto mk = [](std::initializer_list<int> bs) {
    Mask m;
    for (int b : bs) m.set(b);
    return m;
  };
  CHECK_FALSE(merge_parity_odd(mk({0}), mk({1})));
  CHECK(merge_parity_odd(mk({1}), mk({0})));
  // interleaving {1} into {0,2}: one generator of the left factor sits above
  CHECK(merge_parity_odd(mk({0, 2}), mk({1})));
  // {2,3} past {0,1}: four inversions, even
  CHECK_FALSE(merge_parity_odd(mk({2, 3}), mk({0, 1})));
  CHECK_FALSE(merge_parity_odd(mk({}), mk({5, 9})));
  // across the word boundary
  CHECK(merge_parity_odd(mk({100}), mk({63})));
}

TEST_CASE("signature layout") {
  Signature s(2, 3, 2);  // 2 coefficient generators, two 3-dimensional copies
  CHECK(s.total_bits() == 8);
  CHECK(s.a_bit(1) == 1);
  CHECK(s.v_bit(0, 0) == 2);
  CHECK(s.v_bit(1, 2) == 7);
  CHECK(s.is_a_bit(1));
  CHECK_FALSE(s.is_a_bit(2));
  CHECK(s.copy_of_bit(5) == 1);
  CHECK(s.index_of_bit(5) == 0);
  CHECK(s.a_mask_all().popcount() == 2);
  CHECK(s.copy_mask(1).popcount() == 3);
  CHECK_FALSE(s.copy_mask(0).intersects(s.copy_mask(1)));
  CHECK(s == Signature(2, 3, 2));
  CHECK(s != Signature(2, 3, 1));
  CHECK_THROWS_AS(Signature(0, 65, 2), std::invalid_argument);
}

TEST_CASE("exact scalar arithmetic") {
  Scalar a = Scalar::rational(1, 3);
  Scalar b = Scalar::rational(1, 6);
  CHECK(a + b == Scalar::rational(1, 2));
  CHECK(a - b == Scalar::rational(1, 6));
  CHECK(a * b == Scalar::rational(1, 18));
  CHECK(a / b == Scalar(2));
  CHECK(-a == Scalar::rational(-1, 3));
  CHECK(a.inverse() == Scalar(3));
  CHECK(a.divided_by_int(2) == b);
  CHECK(a.exact());
  CHECK_FALSE(a.is_zero());
  CHECK(Scalar(0).is_zero());
  CHECK_THROWS_AS(Scalar(0).inverse(), std::domain_error);

  Scalar z = Scalar::rational(3, 4) + Scalar::rational(-2, 5) * Scalar::imaginary();
  CHECK(z == Scalar::exact_complex(mpq_class(3, 4), mpq_class(-2, 5)));
  CHECK(z.conj() == Scalar::exact_complex(mpq_class(3, 4), mpq_class(2, 5)));
  CHECK(Scalar::imaginary() * Scalar::imaginary() == Scalar(-1));
  CHECK((z * z.conj()).is_real());
  CHECK_FALSE(z.is_real());
  CHECK(z * z.inverse() == Scalar(1));
}

TEST_CASE("floating scalars and promotion") {
  Scalar f = Scalar::floating(0.25);
  CHECK_FALSE(f.exact());
  Scalar mixed = f + Scalar::rational(1, 4);
  CHECK_FALSE(mixed.exact());
  CHECK(mixed.to_double() == doctest::Approx(0.5));
  CHECK(approx_equal(mixed, Scalar::rational(1, 2)));
  CHECK_FALSE(approx_equal(f, Scalar::rational(1, 3)));
  CHECK(Scalar::rational(1, 4).to_float() == f);
  CHECK(Scalar::floating(std::complex<double>(1.0, -2.0)).conj() ==
        Scalar::floating(1.0, 2.0));
}

TEST_CASE("generators anticommute") {
  Signature s(1, 3, 1);
  auto v0 = Element<Scalar>::v_gen(s, 0, 0);
  auto v1 = Element<Scalar>::v_gen(s, 0, 1);
  auto v2 = Element<Scalar>::v_gen(s, 0, 2);
  auto a0 = Element<Scalar>::a_gen(s, 0);

  CHECK(v0 * v1 == -(v1 * v0));
  CHECK((v0 * v0).is_zero());
  CHECK(a0 * v2 == -(v2 * a0));
  CHECK((a0 * a0).is_zero());
  // full reversal of a 3-product: sign (-1)^3
  CHECK(v2 * v1 * v0 == -(v0 * v1 * v2));
  // product respects the global generator order in the canonical form
  Element<Scalar> p = v1 * a0 * v0;
  CHECK(p == a0 * v0 * v1);

  CHECK_THROWS_AS(Element<Scalar>::v_gen(s, 1, 0), std::out_of_range);
  Signature other(1, 3, 2);
  CHECK_THROWS_AS((void)(v0 * Element<Scalar>::v_gen(other, 0, 1)),
                  std::invalid_argument);
}

TEST_CASE("element ring structure") {
  Signature s(1, 2, 1);
  auto v0 = Element<Scalar>::v_gen(s, 0, 0);
  auto v1 = Element<Scalar>::v_gen(s, 0, 1);
  auto one = Element<Scalar>::unit(s);

  Element<Scalar> f = one.scaled(Scalar::rational(2, 3)) + (v0 * v1).scaled(Scalar(5));
  CHECK(f.z_part() == Scalar::rational(2, 3));
  CHECK(f.without_z() == (v0 * v1).scaled(Scalar(5)));
  CHECK(f.is_even());
  CHECK_FALSE(f.is_odd());
  CHECK((f - f).is_zero());
  CHECK(f.scaled(Scalar(0)).is_zero());
  CHECK(-(-f) == f);

  Element<Scalar> g = v0 + v1.scaled(Scalar::rational(-1, 2));
  CHECK(g.is_odd());
  CHECK(even_part(f + g) == f);
  CHECK(odd_part(f + g) == g);

  // degree components: pick out the quadratic field part
  CHECK(degree_component(f, 0, {2}) == (v0 * v1).scaled(Scalar(5)));
  CHECK(degree_component(f, 0, {0}) == one.scaled(Scalar::rational(2, 3)));
  CHECK(degree_component(g, 0, {1}) == g);
}

TEST_CASE("exponential and logarithm") {
  Signature s(0, 4, 1);
  auto v = [&](int i) { return Element<Scalar>::v_gen(s, 0, i); };
  Element<Scalar> f = v(0) * v(1) + v(2) * v(3);
  Element<Scalar> e = exp_nilpotent(f);
  // (v0 v1 + v2 v3)^2 = 2 v0 v1 v2 v3, so exp has a unit top coefficient
  Element<Scalar> expect =
      Element<Scalar>::unit(s) + f + v(0) * v(1) * v(2) * v(3);
  CHECK(e == expect);
  CHECK(log_normalized(e) == f);
  CHECK(inverse_invertible(e) * e == Element<Scalar>::unit(s));
  CHECK(exp_nilpotent(-f) * e == Element<Scalar>::unit(s));

  CHECK_THROWS_AS(exp_nilpotent(Element<Scalar>::unit(s)), std::invalid_argument);
  CHECK_THROWS_AS(log_normalized(f), std::domain_error);
  CHECK_THROWS_AS(inverse_invertible(f), std::domain_error);

  // log of a scaled exponential divides the normalization out
  CHECK(log_normalized(e.scaled(Scalar::rational(7, 2))) == f);
}

TEST_CASE("structural copy maps") {
  Signature s1(1, 2, 1);
  auto v0 = Element<Scalar>::v_gen(s1, 0, 0);
  auto v1 = Element<Scalar>::v_gen(s1, 0, 1);
  auto a0 = Element<Scalar>::a_gen(s1, 0);
  Element<Scalar> f = v0 * v1 + (a0 * v0).scaled(Scalar::rational(1, 2));

  Element<Scalar> ext = extend_copies(f, 3);
  CHECK(ext.sig == Signature(1, 2, 3));
  CHECK(drop_copy(drop_copy(ext, 2), 1) == f);
  CHECK_THROWS_AS(drop_copy(ext, 0), std::invalid_argument);

  // substitute psi -> psi' + psi'' and evaluate one copy at zero to undo it
  Element<Scalar> split =
      substitute_sum(extend_copies(f, 2), 0, {{0, Scalar(1)}, {1, Scalar(1)}});
  CHECK(drop_copy(evaluate_copy_zero(split, 1), 1) == f);
  CHECK(drop_copy(evaluate_copy_zero(split, 0), 0) == f);

  // scaling substitution multiplies each field degree accordingly
  Element<Scalar> doubled = substitute_sum(f, 0, {{0, Scalar(2)}});
  CHECK(doubled == (v0 * v1).scaled(Scalar(4)) + a0 * v0);
}

TEST_CASE("copy permutation and diagonal") {
  Signature s(0, 2, 2);
  auto x0 = Element<Scalar>::v_gen(s, 0, 0);
  auto y1 = Element<Scalar>::v_gen(s, 1, 1);
  Element<Scalar> f = x0 * y1;

  Element<Scalar> swapped = permute_copies(f, {1, 0});
  CHECK(swapped == -(Element<Scalar>::v_gen(s, 0, 1) * Element<Scalar>::v_gen(s, 1, 0)));
  CHECK(permute_copies(swapped, {1, 0}) == f);

  // diagonal identifies copy 1 with copy 0 and drops it
  Element<Scalar> d = diagonal(f, 0, 1);
  Signature s1(0, 2, 1);
  CHECK(d == Element<Scalar>::v_gen(s1, 0, 0) * Element<Scalar>::v_gen(s1, 0, 1));
}

TEST_CASE("jet coefficients track first derivatives") {
  Jet x{Scalar(2), Scalar(1)};  // the parameter itself
  Jet c{Scalar(5), Scalar(0)};
  Jet p = x * x + c;
  CHECK(p.v == Scalar(9));
  CHECK(p.d == Scalar(4));
  CHECK(ring_inverse(x) * x == ring_one<Jet>());
  CHECK_FALSE(ring_is_invertible(Jet{Scalar(0), Scalar(3)}));
  CHECK(ring_divide_int(Jet{Scalar(1), Scalar(2)}, 2) ==
        Jet{Scalar::rational(1, 2), Scalar(1)});

  Signature s(0, 4, 1);
  auto pair01 = Element<Scalar>::v_gen(s, 0, 0) * Element<Scalar>::v_gen(s, 0, 1);
  auto pair23 = Element<Scalar>::v_gen(s, 0, 2) * Element<Scalar>::v_gen(s, 0, 3);
  Element<Jet> j1 = to_jet(pair01, pair01.scaled(Scalar(3)));
  Element<Jet> j2 = to_jet(pair23, pair23.scaled(Scalar(5)));
  CHECK(jet_value(j1) == pair01);
  CHECK(jet_deriv(j1) == pair01.scaled(Scalar(3)));
  // product rule: (fg)' = f'g + fg'
  Element<Jet> prod = j1 * j2;
  CHECK(jet_value(prod) == pair01 * pair23);
  CHECK(jet_deriv(prod) == (pair01 * pair23).scaled(Scalar(8)));
}

TEST_CASE("series ring truncates at its order") {
  using S3 = Series<3>;
  S3 t = S3::variable();
  S3 u = ring_one<S3>() + t;
  S3 p = u * u * u * u;  // (1+t)^4 truncated at degree 3
  CHECK(p.c[0] == Scalar(1));
  CHECK(p.c[1] == Scalar(4));
  CHECK(p.c[2] == Scalar(6));
  CHECK(p.c[3] == Scalar(4));
  CHECK(ring_inverse(u) * u == ring_one<S3>());
  CHECK_FALSE(ring_is_invertible(t));

  Signature s(0, 2, 1);
  Element<S3> f = Element<S3>::unit(s) +
                  (Element<S3>::v_gen(s, 0, 0) * Element<S3>::v_gen(s, 0, 1)).scaled_ring(t);
  CHECK(series_coefficient(f, 0) == Element<Scalar>::unit(Signature(0, 2, 1)));
  CHECK(series_coefficient(f, 2).is_zero());
}

TEST_CASE("random streams are deterministic and splittable") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng c(42);
  CHECK(c.below(10) < 10);
  long r = c.range(-3, 3);
  CHECK(r >= -3);
  CHECK(r <= 3);
  Scalar q = c.nonzero_rational(4, 4);
  CHECK_FALSE(q.is_zero());
  double u = c.unit();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);

  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(2, 2) != mix_seed(1, 2));

  Rng p(7);
  Rng q1 = p.fork(0);
  Rng q2 = p.fork(1);
  CHECK(q1.next() != q2.next());
}
