#include <doctest.h>

#include <random>

#include "cuntz/error.hpp"
#include "cuntz/universal.hpp"
#include "oracles.hpp"

using namespace cuntz;

namespace {

const Alphabet kTwo(2);

MarkovSpec m1_spec() {
  return MarkovSpec::create({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}});
}

Measure m1() { return Measure::markov(m1_spec()); }

Measure product(Rational a, Rational b) { return Measure::product(ProductSpec::create({a, b})); }

SigmaVector one(const Measure& mu) { return SigmaVector::one_term(StepFunction::constant(mu.alphabet(), Scalar(1)), mu); }

}  // namespace

TEST_CASE("inner products at finite depth") {
  const Measure mu = m1();
  for (int d = 0; d <= 4; ++d) CHECK(std::abs(inner_product_depth(one(mu), one(mu), d) - 1.0) < 1e-12);
  const Measure a = product(Rational(1, 2), Rational(1, 2));
  const Measure b = product(Rational(1, 4), Rational(3, 4));
  CHECK(std::abs(inner_product_depth(one(a), one(b), 1).real() - affinity(a, b, 1)) < 1e-12);
  CHECK(std::abs(inner_product_depth(one(a), one(b), 1).real() - 0.9659258262890683) < 1e-12);

  const StepFunction f(kTwo, 2, {Scalar(1), Scalar(-2), Scalar::i(), Scalar(3)});
  const StepFunction g(kTwo, 1, {Scalar(2), Scalar(-1)});
  const SigmaVector x = SigmaVector::one_term(f, mu);
  const SigmaVector y = SigmaVector::one_term(g, mu);
  CHECK(inner_product_depth_exact(x, y, 3) == inner_product(f, g, mu));
  CHECK_THROWS_AS(inner_product_depth(x, y, 1), ResolutionError);
}

TEST_CASE("universal isometries and adjoints") {
  const Measure mu = m1();
  const SigmaVector s0 = universal_isometry(0, one(mu));
  REQUIRE(s0.terms.size() == 1);
  CHECK(s0.terms[0].measure.kind() == MeasureKind::kSectionPushforward);
  CHECK(equal(s0.terms[0].f, StepFunction::constant(kTwo, Scalar(1)).refine(1), 0.0));

  const SigmaVector a0 = universal_adjoint(0, one(mu));
  CHECK(a0.terms[0].measure.total_mass() == Rational(1, 3));

  const SigmaVector chi0 = SigmaVector::one_term(StepFunction::indicator(kTwo, Word({0})), mu);
  const SigmaVector a1 = universal_adjoint(1, chi0);
  for (int d = 0; d <= 4; ++d) CHECK(distance2_depth(a1, SigmaVector{}, d) == doctest::Approx(0.0).epsilon(1e-15));

  const SigmaVector x = SigmaVector::one_term(StepFunction(kTwo, 1, {Scalar(2), Scalar(-1)}), mu);
  const SigmaVector y = SigmaVector::one_term(StepFunction(kTwo, 1, {Scalar(1), Scalar(5)}), product(Rational(1, 3), Rational(2, 3)));
  CHECK(std::abs(inner_product_depth(universal_isometry(0, x), universal_isometry(1, y), 3)) < 1e-12);
  for (int i = 0; i < 2; ++i) {
    CHECK(distance2_depth(universal_adjoint(i, universal_isometry(i, x)), x, 3) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("projections") {
  const Measure mu = m1();
  const SigmaVector x = SigmaVector::one_term(StepFunction(kTwo, 2, {Scalar(1), Scalar(2), Scalar(3), Scalar(4)}), mu);
  CHECK(distance2_depth(universal_projection(Word(), x), x, 3) < 1e-15);
  const Word I({1, 0});
  const SigmaVector px = universal_projection(I, x);
  CHECK(distance2_depth(universal_projection(I, px), px, 3) < 1e-15);
  CHECK(pvm_covariance_check(x, 4).pass());
}

TEST_CASE("embedding and intertwining") {
  const MonicSystem sys = markov_monic_system(m1_spec());
  // f_0(01) sqrt(mu(C(01))) = 2 sqrt(1/6), squared 2/3 = (mu o sigma_0^-1)(C(01)).
  CHECK(sys.f(0).evaluate(Word({0, 1})).abs2() * Scalar(sys.measure().mass(Word({0, 1}))) ==
        Scalar(pushforward_section(sys.measure(), 0).mass(Word({0, 1}))));
  CHECK(pushforward_section(sys.measure(), 0).mass(Word({0, 1})) == Rational(2, 3));
  const Report report = intertwine_check(sys, 5, 10, 7);
  CHECK(report.pass());
  for (const Clause& c : report.clauses) CHECK_MESSAGE(c.pass, c.name, ": ", c.detail);

  const StepFunction f(kTwo, 2, {Scalar(1), Scalar(2), Scalar(-3), Scalar(4)});
  const StepFunction g(kTwo, 1, {Scalar(5), Scalar(-1)});
  CHECK(inner_product_depth_exact(embed(sys, f), embed(sys, g), 2) == inner_product(f, g, sys.measure()));

  const RadicalSum r = RadicalSum::term(Rational(1, 2), 2);
  const MonicSystem phase = kakutani_monic_system(std::vector<Scalar>{Scalar(r), Scalar::i() * Scalar(r)});
  CHECK_THROWS_AS(embed(phase, f), ValidationError);
}

TEST_CASE("universal relations on mixed measures") {
  const std::vector<Measure> measures{m1(), product(Rational(1, 3), Rational(2, 3)),
                                      Measure::atomic_tail(AtomicTailSpec::create(0, {Rational(1, 3), Rational(1, 3)}))};
  const Report report = universal_relations_check(measures, 3, 20, 9);
  for (const Clause& c : report.clauses) CHECK_MESSAGE(c.pass, c.name, ": ", c.detail);
}

TEST_CASE("commutant families") {
  const Measure mu = m1();
  CommutantFamily constant;
  constant.members.push_back({mu, StepFunction::constant(kTwo, Scalar(3))});
  for (int i = 0; i < 2; ++i) constant.members.push_back({pushforward_section(mu, i), StepFunction::constant(kTwo, Scalar(3))});
  CHECK(commutant_family_check(constant, 3).pass());

  CommutantFamily chi = constant;
  for (auto& member : chi.members) member.second = StepFunction::indicator(kTwo, Word({0}));
  const Report bad = commutant_family_check(chi, 3);
  CHECK_FALSE(bad.pass());
  const Clause* relation = bad.find("pushforward_relation");
  REQUIRE(relation != nullptr);
  CHECK_FALSE(relation->pass);
  CHECK(relation->witness.front() == '1');

  CommutantFamily open;
  open.members.push_back({mu, StepFunction::constant(kTwo, Scalar(1))});
  CHECK_THROWS_AS(commutant_family_check(open, 3), ValidationError);
}

TEST_CASE("property: depth shift isometry and completeness on random one-term vectors") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    const Measure mu = Measure::markov(MarkovSpec::create(oracle::random_stochastic(n, rng)));
    const Measure nu = Measure::product(ProductSpec::create(oracle::random_probability(n, rng)));
    const Alphabet& alphabet = mu.alphabet();
    const SigmaVector x = SigmaVector::one_term(random_step_function(alphabet, 3, rng, true), mu);
    const SigmaVector y = SigmaVector::one_term(random_step_function(alphabet, 3, rng, true), nu);
    SigmaVector total;
    for (int i = 0; i < n; ++i) {
      const std::complex<double> lifted = inner_product_depth(universal_isometry(i, x), universal_isometry(i, y), 4);
      REQUIRE(std::abs(lifted - inner_product_depth(x, y, 3)) < 1e-9);
      total = total + universal_isometry(i, universal_adjoint(i, x));
    }
    REQUIRE(distance2_depth(total, x, 3) < 1e-9);
    // Affinity of the unit vectors is nonincreasing in depth.
    double prev = 1.0;
    for (int d = 0; d <= 6; ++d) {
      const double v = std::abs(inner_product_depth(one(mu), one(nu), d));
      REQUIRE(v <= prev + 1e-12);
      prev = v;
    }
  }
}
