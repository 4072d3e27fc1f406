#include <doctest.h>

#include "cuntz/atomic.hpp"
#include "cuntz/error.hpp"
#include "oracles.hpp"

using namespace cuntz;

namespace {

AtomicTailSpec a1() { return AtomicTailSpec::create(0, {Rational(1, 3), Rational(1, 3)}); }

TailPoint atom(std::vector<std::uint8_t> prefix) { return TailPoint(Word(std::move(prefix)), 0); }

}  // namespace

TEST_CASE("atom masses") {
  const AtomicTailSpec spec = a1();
  CHECK(atom_mass(spec, atom({})) == Rational(1, 2));
  CHECK(atom_mass(spec, atom({1})) == Rational(1, 6));
  CHECK(atom_mass(spec, atom({0, 1})) == Rational(1, 18));
  CHECK_THROWS_AS(atom_mass(spec, TailPoint(Word({1}), 1)), ValidationError);
}

TEST_CASE("atomic Radon-Nikodym values") {
  const AtomicTailSpec spec = a1();
  CHECK(atomic_rn_value(spec, 1, atom({1})) == Rational(3));
  CHECK(atomic_monic_function(spec, 1, atom({1})) == Scalar(RadicalSum::term(1, 3)));
  CHECK(atomic_rn_value(spec, 0, atom({0, 1})) == Rational(3));
  CHECK(atomic_rn_value(spec, 0, atom({})) == Rational(1));
  CHECK(atomic_rn_value(spec, 1, atom({0, 1})) == Rational(0));
}

TEST_CASE("atomic operators") {
  const AtomicTailSpec spec = a1();
  const AtomVector delta = AtomVector::delta(atom({}), 4);
  const AtomicApplyResult s1 = atomic_apply(spec, AtomicOp::kIsometry, 1, delta);
  REQUIRE(s1.vector.entries.size() == 1);
  CHECK(s1.vector.entries.begin()->first == atom({1}));
  CHECK(s1.vector.entries.begin()->second == Scalar(RadicalSum::term(1, 3)));
  CHECK(s1.vector.norm2(spec) == delta.norm2(spec));

  // Past the bound, mass is accounted for rather than dropped silently.
  const AtomVector edge = AtomVector::delta(atom({1, 1}), 2);
  const AtomicApplyResult over = atomic_apply(spec, AtomicOp::kIsometry, 1, edge);
  CHECK(over.vector.entries.empty());
  REQUIRE(over.truncated.size() == 1);
  CHECK(over.truncated_norm2 == edge.norm2(spec));
  CHECK(atomic_cuntz_check(spec, 5).pass());
}

TEST_CASE("monicity report") {
  const AtomicMonicity m = atomic_monicity_report(a1(), 3);
  CHECK(m.monic);
  CHECK(m.atom_count == 8);
  CHECK(m.span_rank == m.distinguishable);
  CHECK(m.partial_mass + m.tail_mass == Rational(1));

  Rational prev(0);
  for (int L = 0; L <= 8; ++L) {
    const AtomicMonicity r = atomic_monicity_report(a1(), L);
    REQUIRE(r.partial_mass > prev);
    REQUIRE(r.partial_mass + r.tail_mass == Rational(1));
    // kappa (s - q_c) s^L / (1 - s) with s = 2/3, q_c = 1/3, kappa = 1/2.
    Rational expected = Rational(1, 2);
    for (int k = 0; k < L; ++k) expected *= Rational(2, 3);
    REQUIRE(r.tail_mass == expected);
    prev = r.partial_mass;
  }
}

TEST_CASE("atomic versus Markov affinity decays") {
  const Measure atomic = Measure::atomic_tail(a1());
  const Measure markov = Measure::markov(
      MarkovSpec::create({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}}));
  double prev = 1.0;
  for (int d = 1; d <= 30; ++d) {
    const double v = affinity(atomic, markov, d);
    REQUIRE(v <= prev + 1e-12);
    prev = v;
  }
  CHECK(prev < 0.05);
  // Brute force agrees with the recursion where both apply.
  for (int d = 1; d <= 10; ++d) {
    CHECK(affinity(atomic, markov, d, AffinityMethod::kBruteForce) ==
          doctest::Approx(affinity(atomic, markov, d, AffinityMethod::kRecursion)).epsilon(1e-12));
  }
}

TEST_CASE("three-letter family") {
  const AtomicTailSpec spec = AtomicTailSpec::create(2, {Rational(1, 5), Rational(1, 4), Rational(1, 10)});
  const oracle::AtomicSum sum = oracle::atomic_weight_sum({0.2, 0.25, 0.1}, 2, 10);
  const double inv_kappa = 1.0 / spec.normalizer.to_double();
  CHECK(inv_kappa >= sum.partial);
  CHECK(inv_kappa <= sum.partial + sum.tail_bound);
  CHECK(atomic_cuntz_check(spec, 4).pass());
  const AtomicMonicity m = atomic_monicity_report(spec, 4);
  CHECK(m.monic);
  CHECK(m.atom_count == 81);
}
