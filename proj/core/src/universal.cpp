#include "cuntz/universal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cuntz/error.hpp"

namespace cuntz {

SigmaVector SigmaVector::one_term(StepFunction f, Measure mu, Scalar coeff) {
  return SigmaVector{{SigmaTerm{std::move(coeff), std::move(f), std::move(mu)}}};
}

int SigmaVector::max_depth() const {
  int d = 0;
  for (const SigmaTerm& t : terms) d = std::max(d, t.f.depth());
  return d;
}

bool SigmaVector::is_exact() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const SigmaTerm& t) { return t.coeff.is_exact() && t.f.is_exact(); });
}

SigmaVector SigmaVector::scale(const Scalar& c) const {
  SigmaVector out = *this;
  for (SigmaTerm& t : out.terms) t.coeff = c * t.coeff;
  return out;
}

SigmaVector operator+(const SigmaVector& x, const SigmaVector& y) {
  SigmaVector out = x;
  out.terms.insert(out.terms.end(), y.terms.begin(), y.terms.end());
  return out;
}

SigmaVector operator-(const SigmaVector& x, const SigmaVector& y) { return x + y.scale(Scalar(-1)); }

namespace {

void require_depth(const SigmaVector& x, int depth) {
  if (depth < x.max_depth()) {
    throw ResolutionError("depth " + std::to_string(depth) + " is below term depth " +
                          std::to_string(x.max_depth()));
  }
}

template <typename Visit>
void for_term_pairs(const SigmaVector& x, const SigmaVector& y, int depth, Visit&& visit) {
  require_depth(x, depth);
  require_depth(y, depth);
  for (const SigmaTerm& a : x.terms) {
    const StepFunction fa = a.f.refine(depth);
    for (const SigmaTerm& b : y.terms) {
      if (!(a.measure.alphabet() == b.measure.alphabet())) throw ValidationError("alphabet mismatch");
      visit(a, fa, b, b.f.refine(depth));
    }
  }
}

}  // namespace

std::complex<double> inner_product_depth(const SigmaVector& x, const SigmaVector& y, int depth) {
  std::complex<double> sum = 0.0;
  for_term_pairs(x, y, depth, [&](const SigmaTerm& a, const StepFunction& fa, const SigmaTerm& b,
                                  const StepFunction& fb) {
    const Alphabet& alphabet = a.measure.alphabet();
    std::complex<double> partial = 0.0;
    for (std::int64_t idx = 0; idx < alphabet.power(depth); ++idx) {
      const Scalar& u = fa.at(idx);
      const Scalar& v = fb.at(idx);
      if (u.is_zero() || v.is_zero()) continue;
      Word w = Word::from_index(idx, depth, alphabet);
      double m = a.measure.mass(w).to_double() * b.measure.mass(w).to_double();
      if (m == 0.0) continue;
      partial += std::conj(u.to_complex()) * v.to_complex() * std::sqrt(m);
    }
    sum += std::conj(a.coeff.to_complex()) * b.coeff.to_complex() * partial;
  });
  return sum;
}

Scalar inner_product_depth_exact(const SigmaVector& x, const SigmaVector& y, int depth) {
  if (!x.is_exact() || !y.is_exact()) throw DomainError("exact inner product needs exact terms");
  Scalar sum;
  for_term_pairs(x, y, depth, [&](const SigmaTerm& a, const StepFunction& fa, const SigmaTerm& b,
                                  const StepFunction& fb) {
    const Alphabet& alphabet = a.measure.alphabet();
    Scalar partial;
    for (std::int64_t idx = 0; idx < alphabet.power(depth); ++idx) {
      const Scalar& u = fa.at(idx);
      const Scalar& v = fb.at(idx);
      if (u.is_zero() || v.is_zero()) continue;
      Word w = Word::from_index(idx, depth, alphabet);
      Rational m = a.measure.mass(w) * b.measure.mass(w);
      if (m.is_zero()) continue;
      partial += u.conj() * v * Scalar(sqrt_positive_rational(m));
    }
    sum += a.coeff.conj() * b.coeff * partial;
  });
  return sum;
}

double distance2_depth(const SigmaVector& x, const SigmaVector& y, int depth) {
  SigmaVector diff = x - y;
  return inner_product_depth(diff, diff, depth).real();
}

SigmaVector universal_isometry(int i, const SigmaVector& x) {
  SigmaVector out;
  for (const SigmaTerm& t : x.terms) {
    out.terms.push_back({t.coeff, t.f.compose_shift(), pushforward_section(t.measure, i)});
  }
  return out;
}

SigmaVector universal_adjoint(int i, const SigmaVector& x) {
  SigmaVector out;
  for (const SigmaTerm& t : x.terms) {
    out.terms.push_back({t.coeff, t.f.compose_section(i), restrict_then_shift(t.measure, i)});
  }
  return out;
}

SigmaVector universal_projection(const Word& I, const SigmaVector& x) {
  SigmaVector out;
  for (const SigmaTerm& t : x.terms) {
    out.terms.push_back({t.coeff, t.f * StepFunction::indicator(t.f.alphabet(), I), t.measure});
  }
  return out;
}

SigmaVector embed(const MonicSystem& sys, const StepFunction& f) {
  if (!sys.nonnegative()) {
    throw ValidationError("embedding requires a nonnegative monic system");
  }
  return SigmaVector::one_term(f, sys.measure());
}

namespace {

void fail_once(Clause& clause, std::string witness, std::string detail) {
  if (!clause.pass) return;
  clause.pass = false;
  clause.witness = std::move(witness);
  clause.detail = std::move(detail);
}

}  // namespace

Report intertwine_check(const MonicSystem& sys, int depth, int trials, std::uint64_t seed,
                        double tol) {
  if (!sys.nonnegative()) {
    throw ValidationError("intertwining requires a nonnegative monic system");
  }
  const Alphabet& alphabet = sys.alphabet();
  const Measure& mu = sys.measure();
  Report report;

  for (int i = 0; i < alphabet.size(); ++i) {
    Clause clause{"entrywise_" + std::to_string(i), true, "", ""};
    const Measure pushed = pushforward_section(mu, i);
    const int d = std::max(depth, sys.f(i).depth());
    const StepFunction fi = sys.f(i).refine(d);
    for (std::int64_t idx = 0; idx < alphabet.power(d) && clause.pass; ++idx) {
      Word w = Word::from_index(idx, d, alphabet);
      const Scalar lhs = fi.at(idx).abs2() * Scalar(mu.mass(w));
      const Scalar rhs(pushed.mass(w));
      if (!equal(lhs, rhs, tol)) {
        fail_once(clause, w.str(),
                  "f_i(w)^2 mu(C(w)) = " + lhs.str() + ", pushforward mass = " + rhs.str());
      }
    }
    report.clauses.push_back(std::move(clause));
  }

  std::mt19937_64 rng(seed);
  Clause intertwining{"intertwining", true, "", ""};
  Clause isometry{"embedding_isometry", true, "", ""};
  const int fdepth = std::max(0, depth - 1);
  for (int t = 0; t < trials; ++t) {
    StepFunction f = random_step_function(alphabet, fdepth, rng);
    StepFunction g = random_step_function(alphabet, depth, rng);
    if (!sys.is_exact()) {
      f = f.to_approx();
      g = g.to_approx();
    }
    const SigmaVector wf = embed(sys, f);
    for (int i = 0; i < alphabet.size(); ++i) {
      const SigmaVector lhs = embed(sys, apply_isometry(sys, i, f));
      const SigmaVector rhs = universal_isometry(i, wf);
      const int d = std::max({depth, lhs.max_depth(), rhs.max_depth()});
      const double gap = distance2_depth(lhs, rhs, d);
      if (std::abs(gap) > tol) {
        fail_once(intertwining, "S_" + std::to_string(i),
                  "||W S_i f - S_i W f||^2 = " + std::to_string(gap) + " on trial " +
                      std::to_string(t));
      }
    }
    const SigmaVector wg = embed(sys, g);
    const Scalar expected = inner_product(f, g, mu);
    const Scalar got = (wf.is_exact() && wg.is_exact()) ? inner_product_depth_exact(wf, wg, depth)
                                                        : Scalar::approx(inner_product_depth(wf, wg, depth));
    if (!equal(got, expected, tol)) {
      fail_once(isometry, "trial " + std::to_string(t),
                "<Wf, Wg> = " + got.str() + ", <f, g> = " + expected.str());
    }
  }
  report.clauses.push_back(std::move(intertwining));
  report.clauses.push_back(std::move(isometry));
  return report;
}

Report pvm_covariance_check(const SigmaVector& x, int depth, double tol) {
  Report report;
  Clause clause{"pvm_covariance", true, "", ""};
  if (x.terms.empty()) {
    report.clauses.push_back(std::move(clause));
    return report;
  }
  const Alphabet alphabet = x.terms.front().measure.alphabet();
  for (int i = 0; i < alphabet.size() && clause.pass; ++i) {
    const SigmaVector adj = universal_adjoint(i, x);
    for (int len = 0; len + 1 <= depth && clause.pass; ++len) {
      for (const Word& I : all_words(alphabet, len)) {
        const SigmaVector lhs = universal_projection(I.prepend(i), x);
        const SigmaVector rhs = universal_isometry(i, universal_projection(I, adj));
        const int d = std::max({depth, lhs.max_depth(), rhs.max_depth()});
        const double gap = distance2_depth(lhs, rhs, d);
        if (std::abs(gap) > tol) {
          fail_once(clause, I.prepend(i).str(),
                    "||P(C(iI)) x - S_i P(C(I)) S_i^* x||^2 = " + std::to_string(gap));
          break;
        }
      }
    }
  }
  report.clauses.push_back(std::move(clause));
  return report;
}

Report universal_relations_check(const std::vector<Measure>& measures, int depth, int trials,
                                 std::uint64_t seed, double tol) {
  Report report;
  Clause shift{"depth_shift_isometry", true, "", ""};
  Clause orthogonal{"orthogonal_ranges", true, "", ""};
  Clause adjoint{"adjoint_relation", true, "", ""};
  Clause complete{"completeness", true, "", ""};
  Clause covariance{"pvm_covariance", true, "", ""};
  if (measures.empty()) throw ValidationError("no measures supplied");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, measures.size() - 1);
  for (int t = 0; t < trials; ++t) {
    const Measure& mu = measures[pick(rng)];
    const Measure& nu = measures[pick(rng)];
    const Alphabet& alphabet = mu.alphabet();
    const SigmaVector x = SigmaVector::one_term(random_step_function(alphabet, depth, rng, true), mu);
    const SigmaVector y = SigmaVector::one_term(random_step_function(alphabet, depth, rng, true), nu);
    const std::string trial = "trial " + std::to_string(t);
    const std::complex<double> base = inner_product_depth(x, y, depth);
    SigmaVector total;
    for (int i = 0; i < alphabet.size(); ++i) {
      const SigmaVector sx = universal_isometry(i, x);
      const std::complex<double> lifted = inner_product_depth(sx, universal_isometry(i, y), depth + 1);
      if (std::abs(lifted - base) > tol) {
        fail_once(shift, trial, "<S_i x, S_i y>_{d+1} differs from <x, y>_d for i = " + std::to_string(i));
      }
      const int j = (i + 1) % alphabet.size();
      if (std::abs(inner_product_depth(sx, universal_isometry(j, y), depth + 1)) > tol) {
        fail_once(orthogonal, trial, "<S_i x, S_j y> != 0 for i = " + std::to_string(i));
      }
      const double back = distance2_depth(universal_adjoint(i, sx), x, depth);
      if (std::abs(back) > tol) {
        fail_once(adjoint, trial, "||S_i^* S_i x - x||^2 = " + std::to_string(back));
      }
      total = total + universal_isometry(i, universal_adjoint(i, x));
    }
    const double gap = distance2_depth(total, x, depth);
    if (std::abs(gap) > tol) fail_once(complete, trial, "||sum S_i S_i^* x - x||^2 = " + std::to_string(gap));
    if (covariance.pass && depth <= 4) {
      Report cov = pvm_covariance_check(x, depth, tol);
      const Clause& c = cov.clauses.front();
      if (!c.pass) fail_once(covariance, c.witness, c.detail + " on " + trial);
    }
  }
  for (Clause* c : {&shift, &orthogonal, &adjoint, &complete, &covariance}) {
    report.clauses.push_back(std::move(*c));
  }
  return report;
}

bool same_measure(const Measure& mu, const Measure& nu, int depth) {
  if (!(mu.alphabet() == nu.alphabet())) return false;
  for (int len = 0; len <= depth; ++len) {
    for (const Word& w : all_words(mu.alphabet(), len)) {
      if (mu.mass(w) != nu.mass(w)) return false;
    }
  }
  return true;
}

namespace {

bool absolutely_continuous(const Measure& mu, const Measure& nu, int depth) {
  for (const Word& w : all_words(mu.alphabet(), depth)) {
    if (!mu.mass(w).is_zero() && nu.mass(w).is_zero()) return false;
  }
  return true;
}

std::optional<Word> differs_on_support(const StepFunction& f, const StepFunction& g,
                                       const Measure& mu, int depth, double tol) {
  const StepFunction fr = f.refine(depth);
  const StepFunction gr = g.refine(depth);
  for (std::int64_t idx = 0; idx < mu.alphabet().power(depth); ++idx) {
    if (equal(fr.at(idx), gr.at(idx), tol)) continue;
    Word w = Word::from_index(idx, depth, mu.alphabet());
    if (!mu.mass(w).is_zero()) return w;
  }
  return std::nullopt;
}

}  // namespace

Report commutant_family_check(const CommutantFamily& family, int depth, double tol) {
  if (family.members.empty()) throw ValidationError("empty commutant family");
  const auto& members = family.members;
  const Alphabet& alphabet = members.front().first.alphabet();
  const int d = std::max(depth, 1);

  // Index of the member whose measure is mu_a o sigma_i^-1, if any.
  auto locate = [&](std::size_t a, int i) -> std::optional<std::size_t> {
    const Measure pushed = pushforward_section(members[a].first, i);
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (same_measure(pushed, members[b].first, d + 1)) return b;
    }
    return std::nullopt;
  };
  for (int i = 0; i < alphabet.size(); ++i) {
    if (!locate(0, i)) {
      throw ValidationError("commutant family is not closed: the pushforward of the root measure "
                            "under sigma_" + std::to_string(i) + " is missing");
    }
  }

  Report report;
  double bound = 0.0;
  for (const auto& [mu, F] : members) {
    for (const Scalar& v : F.table()) bound = std::max(bound, std::abs(v.to_complex()));
  }
  report.add("uniform_bound", std::isfinite(bound), "",
             "sup |F| = " + std::to_string(bound));

  Clause compat{"compatibility", true, "", ""};
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (a == b) continue;
      const int dd = std::max({d, members[a].second.depth(), members[b].second.depth()});
      if (!absolutely_continuous(members[a].first, members[b].first, dd)) continue;
      if (auto w = differs_on_support(members[a].second, members[b].second, members[a].first, dd, tol)) {
        fail_once(compat, w->str(),
                  "F differs between members " + std::to_string(a) + " and " + std::to_string(b));
      }
    }
  }
  report.clauses.push_back(std::move(compat));

  Clause relation{"pushforward_relation", true, "", ""};
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (int i = 0; i < alphabet.size(); ++i) {
      auto b = locate(a, i);
      if (!b) continue;
      const StepFunction rhs = members[*b].second.compose_section(i);
      const int dd = std::max({d, members[a].second.depth(), rhs.depth()});
      if (auto w = differs_on_support(members[a].second, rhs, members[a].first, dd, tol)) {
        fail_once(relation, w->str(),
                  "F_mu != F_{mu o sigma_" + std::to_string(i) + "^-1} o sigma_" +
                      std::to_string(i) + " for member " + std::to_string(a));
      }
    }
  }
  report.clauses.push_back(std::move(relation));
  return report;
}

}  // namespace cuntz
