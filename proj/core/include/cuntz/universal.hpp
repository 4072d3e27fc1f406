#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "cuntz/measure.hpp"
#include "cuntz/monic_system.hpp"
#include "cuntz/report.hpp"
#include "cuntz/scalar.hpp"
#include "cuntz/step_function.hpp"

namespace cuntz {

// c * f sqrt(d mu).
struct SigmaTerm {
  Scalar coeff;
  StepFunction f;
  Measure measure;
};

// A formal sum of sigma-functions. No reduction across measures is
// attempted; compare vectors through inner_product_depth.
struct SigmaVector {
  std::vector<SigmaTerm> terms;

  static SigmaVector one_term(StepFunction f, Measure mu, Scalar coeff = Scalar(1));

  int max_depth() const;
  bool is_exact() const;
  SigmaVector scale(const Scalar& c) const;

  friend SigmaVector operator+(const SigmaVector& x, const SigmaVector& y);
  friend SigmaVector operator-(const SigmaVector& x, const SigmaVector& y);
};

// sum_{|w|=d} conj(c f(w)) c' g(w) sqrt(mu(C(w)) nu(C(w))), summed over term pairs.
std::complex<double> inner_product_depth(const SigmaVector& x, const SigmaVector& y, int depth);
// Same sum in exact arithmetic; all coefficients and tables must be exact.
Scalar inner_product_depth_exact(const SigmaVector& x, const SigmaVector& y, int depth);
// ||x - y||^2 at depth d.
double distance2_depth(const SigmaVector& x, const SigmaVector& y, int depth);

// S_i(f sqrt(d mu)) = (f o sigma) sqrt(d(mu o sigma_i^-1)).
SigmaVector universal_isometry(int i, const SigmaVector& x);
// S_i^*(f sqrt(d mu)) = (f o sigma_i) sqrt(d(mu|C(i) o sigma^-1)).
SigmaVector universal_adjoint(int i, const SigmaVector& x);
// P(C(I))(f sqrt(d mu)) = chi_{C(I)} f sqrt(d mu).
SigmaVector universal_projection(const Word& I, const SigmaVector& x);

// W f = f sqrt(d mu); the system must be nonnegative.
SigmaVector embed(const MonicSystem& sys, const StepFunction& f);

// Clauses:
//   entrywise_i       f_i(w)^2 mu(C(w)) = (mu o sigma_i^-1)(C(w)), exact
//   intertwining      ||W S_i f - S_i W f||_d = 0 for random f of depth <= d-1
//   embedding_isometry <W f, W g>_d = <f, g>_{L^2(mu)}
Report intertwine_check(const MonicSystem& sys, int depth, int trials = 10,
                        std::uint64_t seed = 0, double tol = kDefaultTolerance);

// Clauses: depth_shift_isometry, orthogonal_ranges, adjoint_relation,
// completeness and pvm_covariance on random one-term vectors over `measures`.
Report universal_relations_check(const std::vector<Measure>& measures, int depth, int trials,
                                 std::uint64_t seed = 0, double tol = kDefaultTolerance);

// P(C(iI)) x = S_i P(C(I)) S_i^* x for every |I| <= depth - 1.
Report pvm_covariance_check(const SigmaVector& x, int depth, double tol = kDefaultTolerance);

struct CommutantFamily {
  std::vector<std::pair<Measure, StepFunction>> members;
};

// Same cylinder masses on all words of length <= depth.
bool same_measure(const Measure& mu, const Measure& nu, int depth);

// Clauses: uniform_bound, compatibility, pushforward_relation. The first
// member is the root; its N section pushforwards must be present, otherwise
// ValidationError.
Report commutant_family_check(const CommutantFamily& family, int depth,
                              double tol = kDefaultTolerance);

}  // namespace cuntz
