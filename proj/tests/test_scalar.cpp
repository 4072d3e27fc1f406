#include <doctest.h>

#include <random>

#include "cuntz/error.hpp"
#include "cuntz/radical.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/scalar.hpp"

using namespace cuntz;

TEST_CASE("rational parsing and reduction") {
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("-2/4") == Rational(-1, 2));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-7, 3).str() == "-7/3");
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rational overflow is reported, not wrapped") {
  Rational big(INT64_MAX / 2);
  CHECK_THROWS_AS(big * Rational(3), OverflowError);
  // Cross-cancellation keeps representable products exact.
  CHECK(Rational(INT64_MAX / 3, 7) * Rational(7, INT64_MAX / 3) == Rational(1));
}

TEST_CASE("square-free decomposition") {
  CHECK(squarefree_decomposition(12) == std::pair<std::int64_t, std::int64_t>{2, 3});
  CHECK(squarefree_decomposition(1) == std::pair<std::int64_t, std::int64_t>{1, 1});
  CHECK(squarefree_decomposition(72) == std::pair<std::int64_t, std::int64_t>{6, 2});
  CHECK(squarefree_decomposition(97) == std::pair<std::int64_t, std::int64_t>{1, 97});
  // Cofactor past the trial-division bound: (10^6 + 3)^2 * 2.
  const std::int64_t p = 1'000'003;
  CHECK(squarefree_decomposition(p * p * 2) == std::pair<std::int64_t, std::int64_t>{p, 2});
}

TEST_CASE("sqrt of positive rationals") {
  CHECK(sqrt_positive_rational(Rational(4, 9)) == RadicalSum(Rational(2, 3)));
  CHECK(sqrt_positive_rational(Rational(1, 2)) == RadicalSum::term(Rational(1, 2), 2));
  CHECK(sqrt_positive_rational(Rational(12)) == RadicalSum::term(Rational(2), 3));
  CHECK_THROWS_AS(sqrt_positive_rational(Rational(0)), DomainError);
  CHECK_THROWS_AS(sqrt_positive_rational(Rational(-1)), DomainError);
}

TEST_CASE("radical arithmetic") {
  const RadicalSum r2 = RadicalSum::term(1, 2);
  const RadicalSum r3 = RadicalSum::term(1, 3);
  CHECK(r2 * RadicalSum::term(1, 8) == RadicalSum(4));
  CHECK(r2 + r2 == RadicalSum::term(2, 2));
  CHECK((RadicalSum(1) + r3) * (RadicalSum(1) - r3) == RadicalSum(-2));
  CHECK((r2 - r2).is_zero());
  CHECK(r2.sign() == 1);
  CHECK((r2 - RadicalSum::term(1, 3)).sign() == -1);
  CHECK(RadicalSum::term(Rational(2, 3), 3).reciprocal() == RadicalSum::term(Rational(1, 2), 3));
  CHECK_THROWS_AS((r2 + r3).reciprocal(), DomainError);
}

TEST_CASE("to_float") {
  CHECK(to_float(Scalar(Rational(2, 3))).to_complex().real() == doctest::Approx(0.6666666667));
  CHECK(to_float(Scalar(RadicalSum::term(Rational(1, 2), 2))).to_complex().real() ==
        doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(to_float(Scalar()).to_complex() == std::complex<double>(0.0, 0.0));
}

TEST_CASE("complex scalars") {
  const Scalar z = Scalar(Rational(1, 2)) + Scalar::i() * Scalar(Rational(1, 2));
  CHECK(z.abs2() == Scalar(Rational(1, 2)));
  CHECK(z * z.conj() == Scalar(Rational(1, 2)));
  CHECK(z * z.reciprocal() == Scalar(1));
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK_FALSE(z.is_real());
  CHECK(Scalar(RadicalSum::term(1, 2)).is_nonnegative_real());
}

TEST_CASE("approximate scalars compare with tolerance") {
  const Scalar a = Scalar::approx({0.5, 0.0});
  CHECK(equal(a, Scalar(Rational(1, 2))));
  CHECK(equal(a, Scalar::approx({0.5 + 1e-12, 0.0})));
  CHECK_FALSE(equal(a, Scalar::approx({0.5 + 1e-6, 0.0})));
  CHECK_FALSE((a + Scalar(1)).is_exact());
}

namespace {

Rational random_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(1, 2000), den(1, 2000);
  return Rational(num(rng), den(rng));
}

RadicalSum random_radical(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-9, 9), radicand(1, 12), terms(1, 3);
  RadicalSum r;
  for (int k = terms(rng); k > 0; --k) r += RadicalSum::term(Rational(coeff(rng), 1 + (coeff(rng) + 9) % 5), radicand(rng));
  return r;
}

}  // namespace

TEST_CASE("property: sqrt(q)^2 = q for 1000 random positive rationals") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Rational q = random_positive(rng);
    const RadicalSum r = sqrt_positive_rational(q);
    REQUIRE(r * r == RadicalSum(q));
    REQUIRE(r.sign() == 1);
  }
}

TEST_CASE("property: ring axioms hold exactly") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const RadicalSum a = random_radical(rng), b = random_radical(rng), c = random_radical(rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
  }
}

TEST_CASE("property: exact equality agrees with floating comparison") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    const RadicalSum a = random_radical(rng);
    const RadicalSum b = (t % 2 == 0) ? a : random_radical(rng);
    const bool exact = a == b;
    const bool approx = std::abs(a.to_double() - b.to_double()) <= 1e-9;
    REQUIRE(exact == approx);
    REQUIRE(a.sign() == (a.to_double() > 0) - (a.to_double() < 0));
  }
}
