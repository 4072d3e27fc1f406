#include "cuntz/classify.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "cuntz/error.hpp"

namespace cuntz {

namespace {

std::vector<Eigen::VectorXd> kernel(const Eigen::MatrixXd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  std::vector<Eigen::VectorXd> out;
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    double s = k < sv.size() ? sv(k) : 0.0;
    if (s <= tol) out.push_back(svd.matrixV().col(k));
  }
  return out;
}

Eigen::MatrixXd to_eigen(const RadicalMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(r, c) = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].to_double();
    }
  }
  return out;
}

RealMatrix to_real(const Eigen::MatrixXd& m) {
  RealMatrix out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    }
  }
  return out;
}

void require_same_alphabet(const MarkovSpec& a, const MarkovSpec& b) {
  if (!(a.alphabet == b.alphabet)) throw ValidationError("specs have different alphabets");
}

}  // namespace

RadicalMatrix BoundaryOperators::resolution() const {
  const auto n = static_cast<std::size_t>(alphabet.size());
  RadicalMatrix sum(n, std::vector<RadicalSum>(n));
  for (const RadicalMatrix& adj : adjoints) {
    // (V V^*)_{k,l} = sum_j (V^*)_{j,k} (V^*)_{j,l} for real V^*.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j < n; ++j) sum[k][l] += adj[j][k] * adj[j][l];
      }
    }
  }
  return sum;
}

BoundaryOperators boundary_matrices(const MarkovSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.alphabet.size());
  BoundaryOperators ops{spec.alphabet, {}};
  for (std::size_t i = 0; i < n; ++i) {
    RadicalMatrix adj(n, std::vector<RadicalSum>(n));
    for (std::size_t k = 0; k < n; ++k) adj[k][i] = sqrt_positive_rational(spec.transition[i][k]);
    ops.adjoints.push_back(std::move(adj));
  }
  return ops;
}

std::vector<double> hellinger_row_sums(const MarkovSpec& a, const MarkovSpec& b) {
  require_same_alphabet(a, b);
  std::vector<double> sums;
  for (std::size_t i = 0; i < a.transition.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.transition.size(); ++j) {
      s += std::sqrt(a.transition[i][j].to_double() * b.transition[i][j].to_double());
    }
    sums.push_back(s);
  }
  return sums;
}

FixedSpaceResult fixed_point_space(const MarkovSpec& a, const MarkovSpec& b) {
  require_same_alphabet(a, b);
  const int n = a.alphabet.size();
  const BoundaryOperators va = boundary_matrices(a);
  const BoundaryOperators vb = boundary_matrices(b);

  // Dense route: vec(V'_i X V_i^*) = ((V_i^*)^T kron V'_i) vec(X), V'_i = (V'_i^*)^T.
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n * n, n * n);
  std::vector<Eigen::MatrixXd> adj_a, iso_b;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd aa = to_eigen(va.adjoints[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd bb = to_eigen(vb.adjoints[static_cast<std::size_t>(i)]).transpose();
    Eigen::MatrixXd left = aa.transpose();
    for (int r1 = 0; r1 < n; ++r1) {
      for (int c1 = 0; c1 < n; ++c1) {
        phi.block(r1 * n, c1 * n, n, n) += left(r1, c1) * bb;
      }
    }
    adj_a.push_back(std::move(aa));
    iso_b.push_back(std::move(bb));
  }
  Eigen::MatrixXd system = phi - Eigen::MatrixXd::Identity(n * n, n * n);

  FixedSpaceResult result;
  for (const Eigen::VectorXd& v : kernel(system, kRankTolerance)) {
    Eigen::MatrixXd x = Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
    Eigen::MatrixXd image = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      image += iso_b[static_cast<std::size_t>(i)] * x * adj_a[static_cast<std::size_t>(i)];
    }
    result.max_residual = std::max(result.max_residual, (image - x).cwiseAbs().maxCoeff());
    result.basis.push_back(to_real(x));
  }
  result.dimension = static_cast<int>(result.basis.size());

  // Structural route: X is diagonal and its diagonal is a fixed vector of
  // A_ij = sqrt(T_ij T'_ij).
  Eigen::MatrixXd hellinger(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      hellinger(i, j) = std::sqrt(a.transition[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double() *
                                  b.transition[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double());
    }
  }
  std::vector<Eigen::VectorXd> diag_basis =
      kernel(hellinger - Eigen::MatrixXd::Identity(n, n), kRankTolerance);
  result.structural_dimension = static_cast<int>(diag_basis.size());

  // Equality in every Cauchy-Schwarz step forces T = T'.
  result.predicted_dimension = (a.transition == b.transition) ? 1 : 0;

  bool agree = result.dimension == result.structural_dimension &&
               result.dimension == result.predicted_dimension &&
               result.max_residual <= kResidualTolerance;
  if (agree && !diag_basis.empty()) {
    Eigen::MatrixXd span(n, static_cast<Eigen::Index>(diag_basis.size()));
    for (std::size_t k = 0; k < diag_basis.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = diag_basis[k];
    for (const RealMatrix& xb : result.basis) {
      Eigen::VectorXd diag(n);
      double off = 0.0;
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          double v = xb[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          if (r == c) diag(r) = v; else off = std::max(off, std::abs(v));
        }
      }
      Eigen::VectorXd coeffs = span.colPivHouseholderQr().solve(diag);
      double miss = (span * coeffs - diag).cwiseAbs().maxCoeff();
      if (off > kResidualTolerance || miss > kResidualTolerance) agree = false;
    }
  }
  result.method_agreement = agree;
  return result;
}

IrreducibilityResult irreducibility_check(const MarkovSpec& spec) {
  IrreducibilityResult out;
  out.fixed_space = fixed_point_space(spec, spec);
  if (!out.fixed_space.method_agreement) {
    throw InternalConsistencyError("dense and structural fixed-point solutions disagree");
  }
  bool scalar = out.fixed_space.dimension == 1;
  if (scalar) {
    const RealMatrix& x = out.fixed_space.basis.front();
    const double c = x[0][0];
    for (std::size_t r = 0; r < x.size() && scalar; ++r) {
      for (std::size_t k = 0; k < x.size(); ++k) {
        double expected = (r == k) ? c : 0.0;
        if (std::abs(x[r][k] - expected) > kResidualTolerance) {
          scalar = false;
          break;
        }
      }
    }
  }
  out.irreducible = scalar;
  return out;
}

DisjointnessResult disjointness_check(const MarkovSpec& a, const MarkovSpec& b) {
  require_same_alphabet(a, b);
  DisjointnessResult out;
  out.disjoint = a.transition != b.transition;
  out.fixed_space = fixed_point_space(a, b);
  if (!out.fixed_space.method_agreement) {
    throw InternalConsistencyError("dense and structural fixed-point solutions disagree");
  }
  Measure mu = Measure::markov(a);
  Measure nu = Measure::markov(b);
  double prev = 1.0;
  for (int d = 1; d <= kAffinityMaxDepth; ++d) {
    double value = affinity(mu, nu, d, AffinityMethod::kRecursion);
    out.affinities.push_back(value);
    if (value > prev * (1.0 + 1e-12) + 1e-15) out.affinity_nonincreasing = false;
    prev = value;
    if (!out.singular_depth && value < kAffinityThreshold) out.singular_depth = d;
  }
  return out;
}

std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::kEquivalent: return "equivalent";
    case Equivalence::kNotEquivalentSingular: return "not equivalent (measures mutually singular)";
    case Equivalence::kNotEquivalentInequivalent: return "not equivalent (measures inequivalent)";
    case Equivalence::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

std::optional<Word> first_difference_on_support(const StepFunction& f, const StepFunction& g,
                                                const Measure& mu, double tol) {
  const Alphabet& alphabet = mu.alphabet();
  const int d = std::max(f.depth(), g.depth());
  const StepFunction fr = f.refine(d);
  const StepFunction gr = g.refine(d);
  for (std::int64_t idx = 0; idx < alphabet.power(d); ++idx) {
    if (equal(fr.at(idx), gr.at(idx), tol)) continue;
    Word w = Word::from_index(idx, d, alphabet);
    if (!mu.mass(w).is_zero()) return w;
  }
  return std::nullopt;
}

// Verifies both identities for a candidate h; throws for a degenerate h.
Report verify_certificate(const MonicSystem& a, const MonicSystem& b, const StepFunction& h,
                          int depth, double tol) {
  const Measure& mu = a.measure();
  const Measure& nu = b.measure();
  const Alphabet& alphabet = mu.alphabet();
  for (std::int64_t idx = 0; idx < alphabet.power(h.depth()); ++idx) {
    Word w = Word::from_index(idx, h.depth(), alphabet);
    if (h.at(idx).is_zero() && !mu.mass(w).is_zero()) {
      throw ValidationError("invalid certificate: h vanishes on mu-positive cylinder C(" +
                            w.str() + ")");
    }
  }
  Report report;
  const int d = std::max(depth, h.depth());
  (void)rn_derivative(mu, nu, d);  // mu << mu'
  RnDerivative rn = rn_derivative(nu, mu, d);
  StepFunction h2 = h.abs2();
  if (!rn.exact) {
    report.add("radon_nikodym", false, "", "d(mu')/d(mu) is not resolved at depth " + std::to_string(d));
  } else if (auto w = first_difference(h2, rn.density, tol)) {
    report.add("radon_nikodym", false, w->str(),
               "|h|^2 = " + h2.evaluate(*w).str() + ", density = " + rn.density.evaluate(*w).str());
  } else {
    report.add("radon_nikodym", true);
  }
  const StepFunction shifted = h.compose_shift();
  for (int i = 0; i < alphabet.size(); ++i) {
    StepFunction lhs = h * b.f(i);
    StepFunction rhs = shifted * a.f(i);
    auto w = first_difference_on_support(lhs, rhs, mu, tol);
    report.add("cocycle_" + std::to_string(i), !w, w ? w->str() : "",
               w ? "f'_i h != (h o sigma) f_i" : "");
  }
  return report;
}

constexpr std::int64_t kSearchMaxUnknowns = 256;

// Nonzero solutions h of h f'_i = (h o sigma) f_i at depth k, scaled so that
// |h|^2 matches the density; nullopt if none is found.
std::optional<StepFunction> search_depth(const MonicSystem& a, const MonicSystem& b, int k,
                                         const RnDerivative& rn) {
  const Alphabet& alphabet = a.alphabet();
  const Measure& mu = a.measure();
  const std::int64_t unknowns = alphabet.power(k);
  std::vector<std::vector<std::pair<std::int64_t, std::complex<double>>>> rows;
  for (int i = 0; i < alphabet.size(); ++i) {
    const int d = std::max({k + 1, a.f(i).depth(), b.f(i).depth()});
    const StepFunction fa = a.f(i).refine(d);
    const StepFunction fb = b.f(i).refine(d);
    const std::int64_t tail = alphabet.power(d - k);
    const std::int64_t tail_shift = alphabet.power(d - 1 - k);
    const std::int64_t block = alphabet.power(d - 1);
    for (std::int64_t idx = 0; idx < alphabet.power(d); ++idx) {
      if (fa.at(idx).is_zero() && fb.at(idx).is_zero()) continue;
      if (mu.mass(Word::from_index(idx, d, alphabet)).is_zero()) continue;
      std::int64_t self = idx / tail;
      std::int64_t shifted = (idx % block) / tail_shift;
      rows.push_back({{self, fb.at(idx).to_complex()}, {shifted, -fa.at(idx).to_complex()}});
    }
  }
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(unknowns, unknowns);
  for (const auto& row : rows) {
    for (const auto& [c1, v1] : row) {
      for (const auto& [c2, v2] : row) gram(c1, c2) += std::conj(v1) * v2;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  for (Eigen::Index col = 0; col < unknowns; ++col) {
    if (std::sqrt(std::max(0.0, eig.eigenvalues()(col))) > 1e-6) break;
    Eigen::VectorXcd v = eig.eigenvectors().col(col);
    // Match |h|^2 to the density on mu-positive cylinders.
    std::optional<double> scale;
    bool ok = true;
    for (std::int64_t idx = 0; idx < unknowns && ok; ++idx) {
      if (mu.mass(Word::from_index(idx, k, alphabet)).is_zero()) continue;
      double mod2 = std::norm(v(idx));
      double target = rn.density.at(idx).to_complex().real();
      if (mod2 < 1e-14) {
        ok = false;
        break;
      }
      double s = target / mod2;
      if (!scale) scale = s;
      else if (std::abs(*scale - s) > 1e-9 * std::max(1.0, *scale)) ok = false;
    }
    if (!ok || !scale) continue;
    std::vector<Scalar> table;
    for (std::int64_t idx = 0; idx < unknowns; ++idx) {
      table.push_back(Scalar::approx(v(idx) * std::sqrt(*scale)));
    }
    return StepFunction(alphabet, k, std::move(table));
  }
  return std::nullopt;
}

}  // namespace

EquivalenceVerdict equivalence_check(const MonicSystem& a, const MonicSystem& b,
                                     const std::optional<StepFunction>& h, int depth,
                                     double tol) {
  if (!(a.alphabet() == b.alphabet())) throw ValidationError("alphabet mismatch");
  const Measure& mu = a.measure();
  const Measure& nu = b.measure();
  EquivalenceVerdict out;

  // Mutually singular Markov measures are never equivalent.
  const MarkovSpec* ma = mu.markov_spec();
  const MarkovSpec* mb = nu.markov_spec();
  if (ma && mb && ma->transition != mb->transition) {
    out.verdict = Equivalence::kNotEquivalentSingular;
    out.detail = "transition matrices differ, so the Markov measures are mutually singular";
    return out;
  }

  if (h) {
    try {
      out.report = verify_certificate(a, b, *h, depth, tol);
    } catch (const NotAbsolutelyContinuous& e) {
      out.verdict = Equivalence::kNotEquivalentInequivalent;
      out.detail = e.what();
      return out;
    }
    if (out.report.pass()) {
      out.verdict = Equivalence::kEquivalent;
      out.certificate = h;
    } else {
      out.verdict = Equivalence::kInconclusive;
      out.detail = "supplied certificate rejected";
    }
    return out;
  }

  try {
    (void)rn_derivative(mu, nu, depth);
    (void)rn_derivative(nu, mu, depth);
  } catch (const NotAbsolutelyContinuous& e) {
    out.verdict = Equivalence::kNotEquivalentInequivalent;
    out.detail = e.what();
    return out;
  }

  const bool nonnegative = a.nonnegative() && b.nonnegative();
  for (int k = 0; k <= depth; ++k) {
    RnDerivative rn = rn_derivative(nu, mu, k);
    if (!rn.exact) continue;
    std::optional<StepFunction> candidate;
    if (nonnegative && rn.density.is_exact()) {
      // h = sqrt(d(mu')/d(mu)).
      candidate = rn.density.map([](const Scalar& v) {
        const Rational q = v.real_radical().as_rational();
        return q.is_zero() ? Scalar() : Scalar(sqrt_positive_rational(q));
      });
    } else if (a.alphabet().power(k) <= kSearchMaxUnknowns) {
      candidate = search_depth(a, b, k, rn);
    }
    if (!candidate) continue;
    Report report;
    try {
      report = verify_certificate(a, b, *candidate, depth, tol);
    } catch (const ValidationError&) {
      continue;
    }
    if (report.pass()) {
      out.verdict = Equivalence::kEquivalent;
      out.certificate = std::move(candidate);
      out.report = std::move(report);
      return out;
    }
    if (nonnegative) {
      // For nonnegative systems h = sqrt(d(mu')/d(mu)) is forced; keep the
      // failing clauses for the caller.
      out.report = std::move(report);
    }
  }
  out.verdict = Equivalence::kInconclusive;
  out.detail = "no certificate at depth <= " + std::to_string(depth);
  return out;
}

std::vector<StepFunction> commutant_basis(const MonicSystem& sys, int depth,
                                          bool enforce_invariance) {
  const Alphabet& alphabet = sys.alphabet();
  const Measure& mu = sys.measure();
  const std::int64_t count = alphabet.power(depth);
  std::vector<bool> positive(static_cast<std::size_t>(count));
  for (std::int64_t idx = 0; idx < count; ++idx) {
    positive[static_cast<std::size_t>(idx)] = !mu.mass(Word::from_index(idx, depth, alphabet)).is_zero();
  }
  // Every equation of h o sigma = h reads h(w_2..w_{d+1}) - h(w_1..w_d) = 0,
  // so the kernel is spanned by indicators of the connected components of
  // the graph joining the two unknowns of each equation.
  std::vector<std::int64_t> parent(static_cast<std::size_t>(count));
  std::iota(parent.begin(), parent.end(), std::int64_t{0});
  auto find = [&](std::int64_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  if (enforce_invariance && depth > 0) {
    const std::int64_t wide = alphabet.power(depth + 1);
    for (std::int64_t idx = 0; idx < wide; ++idx) {
      if (mu.mass(Word::from_index(idx, depth + 1, alphabet)).is_zero()) continue;
      std::int64_t head = idx / alphabet.size();  // w_1..w_d
      std::int64_t tail = idx % count;            // w_2..w_{d+1}
      parent[static_cast<std::size_t>(find(head))] = find(tail);
    }
  }
  std::vector<std::int64_t> roots;
  std::vector<std::int64_t> component(static_cast<std::size_t>(count), -1);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    if (!positive[static_cast<std::size_t>(idx)]) continue;
    std::int64_t r = find(idx);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      it = roots.end() - 1;
    }
    component[static_cast<std::size_t>(idx)] = it - roots.begin();
  }
  std::vector<StepFunction> basis;
  for (std::size_t c = 0; c < roots.size(); ++c) {
    std::vector<Scalar> table(static_cast<std::size_t>(count));
    for (std::int64_t idx = 0; idx < count; ++idx) {
      if (component[static_cast<std::size_t>(idx)] == static_cast<std::int64_t>(c)) {
        table[static_cast<std::size_t>(idx)] = Scalar(1);
      }
    }
    basis.emplace_back(alphabet, depth, std::move(table));
  }
  return basis;
}

}  // namespace cuntz
