#include "cuntz/monic_system.hpp"

#include <algorithm>
#include <cmath>

#include "cuntz/error.hpp"

namespace cuntz {

MonicSystem::MonicSystem(Measure measure, std::vector<StepFunction> functions)
    : measure_(std::move(measure)), functions_(std::move(functions)) {
  if (functions_.size() != static_cast<std::size_t>(measure_.alphabet().size())) {
    throw ValidationError("a monic system needs exactly N functions");
  }
  nonnegative_ = true;
  for (const StepFunction& fi : functions_) {
    if (!(fi.alphabet() == measure_.alphabet())) throw ValidationError("alphabet mismatch");
    for (const Scalar& v : fi.table()) {
      if (!v.is_nonnegative_real()) nonnegative_ = false;
    }
  }
}

bool MonicSystem::is_exact() const {
  return std::all_of(functions_.begin(), functions_.end(),
                     [](const StepFunction& fi) { return fi.is_exact(); });
}

MonicSystem MonicSystem::to_approx() const {
  std::vector<StepFunction> fs;
  for (const StepFunction& fi : functions_) fs.push_back(fi.to_approx());
  return MonicSystem(measure_, std::move(fs));
}

MonicSystem markov_monic_system(const MarkovSpec& spec) {
  return markov_monic_system(Measure::markov(spec));
}

MonicSystem markov_monic_system(const Measure& mu) {
  const MarkovSpec* spec = mu.markov_spec();
  if (!spec) throw ValidationError("markov monic system needs a Markov or product measure");
  const Alphabet& alphabet = spec->alphabet;
  std::vector<StepFunction> fs;
  for (int j = 0; j < alphabet.size(); ++j) {
    fs.push_back(StepFunction::tabulate(alphabet, 2, [&](const Word& w) -> Scalar {
      if (w[0] != j) return Scalar();
      const auto x2 = static_cast<std::size_t>(w[1]);
      const auto jj = static_cast<std::size_t>(j);
      return Scalar(sqrt_positive_rational(
          spec->stationary[x2] / (spec->stationary[jj] * spec->transition[jj][x2])));
    }));
  }
  return MonicSystem(mu, std::move(fs));
}

Rational rational_approximation(double x, std::int64_t max_den) {
  // Continued fraction convergents of |x|.
  double v = std::abs(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(v);
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0;
    std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = v - a;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) throw DomainError("no rational approximation");
  return Rational(x < 0 ? -p1 : p1, q1);
}

MonicSystem kakutani_monic_system(std::span<const Scalar> z, double tol) {
  Alphabet alphabet(static_cast<int>(z.size()));
  std::vector<Rational> p;
  Scalar norm;
  for (const Scalar& zi : z) {
    if (zi.is_zero()) throw ValidationError("Kakutani parameters must be nonzero");
    Scalar a = zi.abs2();
    norm += a;
    if (a.is_exact()) {
      const RadicalSum& r = a.real_radical();
      if (!r.is_rational()) throw ValidationError("|z_i|^2 must be rational, got " + r.str());
      p.push_back(r.as_rational());
    } else {
      double v = a.to_complex().real();
      Rational q = rational_approximation(v);
      if (std::abs(q.to_double() - v) > 1e-12) {
        throw ValidationError("|z_i|^2 = " + std::to_string(v) + " is not a small rational");
      }
      p.push_back(q);
    }
  }
  if (!equal(norm, Scalar(1), tol)) {
    throw ValidationError("sum |z_i|^2 must equal 1, got " + norm.str());
  }
  Measure mu = Measure::product(ProductSpec::create(std::move(p)));
  std::vector<StepFunction> fs;
  for (int i = 0; i < alphabet.size(); ++i) {
    fs.push_back(StepFunction::indicator(alphabet, Word{i}).scale(z[static_cast<std::size_t>(i)].reciprocal()));
  }
  return MonicSystem(std::move(mu), std::move(fs));
}

StepFunction shift_density(const MonicSystem& sys) {
  const Alphabet& alphabet = sys.alphabet();
  StepFunction sum = StepFunction::constant(alphabet, Scalar());
  for (int j = 0; j < alphabet.size(); ++j) {
    StepFunction term = sys.f(j).abs2().compose_section(j).map([](const Scalar& v) {
      return v.is_zero() ? Scalar() : v.reciprocal();
    });
    sum = sum + term;
  }
  return sum;
}

StepFunction shift_density_literal(const MonicSystem& sys) {
  const Alphabet& alphabet = sys.alphabet();
  StepFunction sum = StepFunction::constant(alphabet, Scalar());
  for (int j = 0; j < alphabet.size(); ++j) {
    // |f_j o sigma_j|^2 evaluated at x itself, masked by chi_{C(j)}.
    StepFunction denom = sys.f(j).compose_section(j).abs2();
    StepFunction inv = denom.map([](const Scalar& v) { return v.is_zero() ? Scalar() : v.reciprocal(); });
    sum = sum + StepFunction::indicator(alphabet, Word{j}) * inv;
  }
  return sum;
}

Report validate_monic_system(const MonicSystem& sys, int depth, double tol) {
  const Alphabet& alphabet = sys.alphabet();
  const Measure& mu = sys.measure();
  Report report;
  int max_fdepth = 0;
  for (const StepFunction& fi : sys.functions()) max_fdepth = std::max(max_fdepth, fi.depth());
  const int d = std::max({depth, max_fdepth, 1});

  for (int i = 0; i < alphabet.size(); ++i) {
    const std::string suffix = "_" + std::to_string(i);
    try {
      RnDerivative rn = rn_derivative(pushforward_section(mu, i), mu, d);
      StepFunction sq = sys.f(i).abs2();
      auto diff = first_difference(sq, rn.density, tol);
      if (!rn.exact) {
        report.add("rn_isometry" + suffix, false, "",
                   "cylinder ratios of mu o sigma_" + std::to_string(i) +
                       "^-1 are not resolved at depth " + std::to_string(d));
      } else if (diff) {
        report.add("rn_isometry" + suffix, false, diff->str(),
                   "|f|^2 = " + sq.evaluate(*diff).str() + ", density = " +
                       rn.density.evaluate(*diff).str());
      } else {
        report.add("rn_isometry" + suffix, true);
      }
    } catch (const NotAbsolutelyContinuous& e) {
      report.add("rn_isometry" + suffix, false, e.witness(), e.what());
    }

    const StepFunction fi = sys.f(i).refine(std::max(d, sys.f(i).depth()));
    std::string witness;
    std::string detail;
    for (std::int64_t idx = 0; idx < alphabet.power(fi.depth()) && witness.empty(); ++idx) {
      Word w = Word::from_index(idx, fi.depth(), alphabet);
      const Scalar& v = fi.at(idx);
      if (w[0] != i && !v.is_zero()) {
        witness = w.str();
        detail = "f is nonzero off C(" + std::to_string(i) + ")";
      } else if (w[0] == i && v.is_zero() && !mu.mass(w).is_zero()) {
        witness = w.str();
        detail = "f vanishes on a mu-positive cylinder";
      }
    }
    report.add("support" + suffix, witness.empty(), witness, detail);
  }

  try {
    RnDerivative rn = rn_derivative(pushforward_shift(mu), mu, d);
    StepFunction composed = shift_density(sys);
    auto diff = first_difference(composed, rn.density, tol);
    if (diff) {
      report.add("shift_density", false, diff->str(),
                 "sum_j (1/|f_j|^2) o sigma_j = " + composed.evaluate(*diff).str() +
                     ", density = " + rn.density.evaluate(*diff).str());
    } else {
      report.add("shift_density", rn.exact, "", rn.exact ? "" : "density not resolved at depth");
    }
    StepFunction literal = shift_density_literal(sys);
    if (auto lit = first_difference(literal, rn.density, tol)) {
      report.notes.push_back("literal reading sum_j chi_{C(j)}/|f_j o sigma_j|^2 differs from "
                             "d(mu o sigma^-1)/d(mu) at C(" + lit->str() + "): " +
                             literal.evaluate(*lit).str() + " vs " +
                             rn.density.evaluate(*lit).str());
    }
  } catch (const NotAbsolutelyContinuous& e) {
    report.add("shift_density", false, e.witness(), e.what());
  }
  return report;
}

StepFunction apply_isometry(const MonicSystem& sys, int i, const StepFunction& f) {
  if (!sys.alphabet().contains(i)) throw ValidationError("letter outside alphabet");
  return sys.f(i) * f.compose_shift();
}

StepFunction apply_adjoint(const MonicSystem& sys, int i, const StepFunction& f) {
  const Alphabet& alphabet = sys.alphabet();
  if (!alphabet.contains(i)) throw ValidationError("letter outside alphabet");
  if (!(f.alphabet() == alphabet)) throw ValidationError("alphabet mismatch");
  const StepFunction& fi = sys.f(i);
  const int d = std::max({fi.depth(), f.depth(), 1});
  const std::int64_t block = alphabet.power(d - 1);
  const std::int64_t fi_div = alphabet.power(d - fi.depth());
  const std::int64_t f_div = alphabet.power(d - f.depth());
  std::vector<Scalar> table;
  table.reserve(static_cast<std::size_t>(block));
  for (std::int64_t idx = 0; idx < block; ++idx) {
    const std::int64_t k = i * block + idx;  // the word i w
    const Scalar& fv = fi.at(k / fi_div);
    // conj(g_i) = conj(f_i)/|f_i|^2 = 1/f_i where f_i != 0
    table.push_back(fv.is_zero() ? Scalar() : fv.reciprocal() * f.at(k / f_div));
  }
  return StepFunction(alphabet, d - 1, std::move(table));
}

StepFunction apply_word_operator(const MonicSystem& sys, const Word& I, const Word& J,
                                 const StepFunction& f) {
  StepFunction g = f;
  for (int k = 0; k < J.size(); ++k) g = apply_adjoint(sys, J[k], g);
  for (int k = I.size() - 1; k >= 0; --k) g = apply_isometry(sys, I[k], g);
  return g;
}

StepFunction projection(const MonicSystem& sys, std::span<const Word> cylinders,
                        const StepFunction& x) {
  for (std::size_t a = 0; a < cylinders.size(); ++a) {
    for (std::size_t b = a + 1; b < cylinders.size(); ++b) {
      if (cylinder_relation(cylinders[a], cylinders[b]) != CylinderRelation::kDisjoint) {
        throw ValidationError("cylinders C(" + cylinders[a].str() + ") and C(" +
                              cylinders[b].str() + ") overlap");
      }
    }
  }
  StepFunction sum = StepFunction::constant(sys.alphabet(), Scalar());
  for (const Word& I : cylinders) sum = sum + apply_word_operator(sys, I, I, x);
  return sum;
}

Scalar vector_measure(const MonicSystem& sys, const StepFunction& x, const Word& I) {
  Word cyl[] = {I};
  return inner_product(x, projection(sys, cyl, x), sys.measure());
}

StepFunction random_step_function(const Alphabet& alphabet, int max_depth, std::mt19937_64& rng,
                                  bool complex_values) {
  std::uniform_int_distribution<int> depth_dist(0, max_depth);
  std::uniform_int_distribution<int> value_dist(-4, 4);
  int depth = depth_dist(rng);
  std::vector<Scalar> table;
  std::int64_t count = alphabet.power(depth);
  table.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    Rational re(value_dist(rng));
    if (complex_values) {
      table.emplace_back(RadicalSum(re), RadicalSum(Rational(value_dist(rng))));
    } else {
      table.emplace_back(re);
    }
  }
  return StepFunction(alphabet, depth, std::move(table));
}

Report cuntz_relations_check(const MonicSystem& sys, int depth, int trials, std::uint64_t seed,
                             double tol) {
  const Alphabet& alphabet = sys.alphabet();
  const int n = alphabet.size();
  std::mt19937_64 rng(seed);
  bool complex_values = !sys.nonnegative();
  Clause orthogonality{"adjoint_relations", true, "", ""};
  Clause completeness{"completeness", true, "", ""};
  Clause adjointness{"hilbert_adjoint", true, "", ""};
  for (int t = 0; t < trials; ++t) {
    StepFunction f = random_step_function(alphabet, depth, rng, complex_values);
    StepFunction g = random_step_function(alphabet, depth, rng, complex_values);
    if (!sys.is_exact()) {
      f = f.to_approx();
      g = g.to_approx();
    }
    // The formula for S_i^* must be the L^2(mu) adjoint of S_i, otherwise the
    // identities below hold for any nonvanishing f_i.
    for (int i = 0; i < n && adjointness.pass; ++i) {
      const Scalar lhs = inner_product(apply_isometry(sys, i, g), f, sys.measure());
      const Scalar rhs = inner_product(g, apply_adjoint(sys, i, f), sys.measure());
      if (!equal(lhs, rhs, tol)) {
        adjointness.pass = false;
        adjointness.witness = std::to_string(i);
        adjointness.detail = "<S_" + std::to_string(i) + " g, f> = " + lhs.str() +
                             " but <g, S_" + std::to_string(i) + "^* f> = " + rhs.str() +
                             " on trial " + std::to_string(t);
      }
    }
    std::vector<StepFunction> images;
    for (int j = 0; j < n; ++j) images.push_back(apply_isometry(sys, j, f));
    StepFunction zero = StepFunction::constant(alphabet, Scalar());
    StepFunction total = zero;
    for (int i = 0; i < n; ++i) {
      StepFunction adj = apply_adjoint(sys, i, f);
      total = total + apply_isometry(sys, i, adj);
      if (!orthogonality.pass) continue;
      for (int j = 0; j < n; ++j) {
        StepFunction lhs = apply_adjoint(sys, i, images[static_cast<std::size_t>(j)]);
        const StepFunction& expected = (i == j) ? f : zero;
        if (auto w = first_difference(lhs, expected, tol)) {
          orthogonality.pass = false;
          orthogonality.witness = w->str();
          orthogonality.detail = "S_" + std::to_string(i) + "^* S_" + std::to_string(j) +
                                 " f differs from the expected value on trial " +
                                 std::to_string(t);
          break;
        }
      }
    }
    if (completeness.pass) {
      if (auto w = first_difference(total, f, tol)) {
        completeness.pass = false;
        completeness.witness = w->str();
        completeness.detail = "sum_i S_i S_i^* f != f on trial " + std::to_string(t);
      }
    }
  }
  Report report;
  report.clauses.push_back(std::move(orthogonality));
  report.clauses.push_back(std::move(completeness));
  report.clauses.push_back(std::move(adjointness));
  return report;
}

}  // namespace cuntz
