#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cuntz/measure.hpp"
#include "cuntz/report.hpp"
#include "cuntz/step_function.hpp"

namespace cuntz {

// A measure mu together with finite-depth functions f_0 ... f_{N-1}; it
// carries the representation S_i f = f_i (f o sigma) on L^2(mu).
class MonicSystem {
 public:
  MonicSystem(Measure measure, std::vector<StepFunction> functions);

  const Measure& measure() const { return measure_; }
  const Alphabet& alphabet() const { return measure_.alphabet(); }
  const std::vector<StepFunction>& functions() const { return functions_; }
  const StepFunction& f(int i) const { return functions_[static_cast<std::size_t>(i)]; }

  // Every f_i value is a non-negative real.
  bool nonnegative() const { return nonnegative_; }
  bool is_exact() const;
  MonicSystem to_approx() const;

 private:
  Measure measure_;
  std::vector<StepFunction> functions_;
  bool nonnegative_;
};

// f_j(x_1 x_2 ...) = delta_{j,x_1} sqrt(lambda_{x_2} / (lambda_j T_{j,x_2})),
// depth 2, exact.
MonicSystem markov_monic_system(const MarkovSpec& spec);
// Same, keeping the product tag when `mu` is a product measure.
MonicSystem markov_monic_system(const Measure& mu);

// mu = product(|z_i|^2), f_i = (1/z_i) chi_{C(i)}. Requires sum |z_i|^2 = 1
// (exactly for exact z, within `tol` otherwise) and rational |z_i|^2.
MonicSystem kakutani_monic_system(std::span<const Scalar> z, double tol = kDefaultTolerance);

// Clauses:
//   rn_isometry_i  |f_i|^2 = d(mu o sigma_i^-1)/d(mu), with an exact density
//   support_i      f_i != 0 on mu-positive C(i w), f_i = 0 off C(i)
//   shift_density  sum_j (1/|f_j|^2) o sigma_j = d(mu o sigma^-1)/d(mu)
Report validate_monic_system(const MonicSystem& sys, int depth, double tol = kDefaultTolerance);

// sum_j (1/|f_j|^2) o sigma_j, terms with f_j(j x) = 0 dropped.
StepFunction shift_density(const MonicSystem& sys);
// sum_j chi_{C(j)} / |f_j o sigma_j|^2 read literally, terms with a zero
// denominator dropped. Differs from shift_density in general.
StepFunction shift_density_literal(const MonicSystem& sys);

// S_i f = f_i (f o sigma).
StepFunction apply_isometry(const MonicSystem& sys, int i, const StepFunction& f);
// S_i^* f = (conj(g_i) o sigma_i)(f o sigma_i), g_i = f_i/|f_i|^2 where f_i != 0.
StepFunction apply_adjoint(const MonicSystem& sys, int i, const StepFunction& f);
// S_I S_J^* f.
StepFunction apply_word_operator(const MonicSystem& sys, const Word& I, const Word& J,
                                 const StepFunction& f);

// P(A) x for A a disjoint union of cylinders, computed as sum_I S_I S_I^* x.
StepFunction projection(const MonicSystem& sys, std::span<const Word> cylinders,
                        const StepFunction& x);
// m_x(C(I)) = <x, P(C(I)) x>.
Scalar vector_measure(const MonicSystem& sys, const StepFunction& x, const Word& I);

// Random step function of depth in [0, max_depth] with small integer
// entries (Gaussian integers when `complex_values`).
StepFunction random_step_function(const Alphabet& alphabet, int max_depth, std::mt19937_64& rng,
                                  bool complex_values = false);

// S_i^* S_j f = delta_ij f and sum_i S_i S_i^* f = f on `trials` random step
// functions of depth <= depth.
Report cuntz_relations_check(const MonicSystem& sys, int depth, int trials,
                             std::uint64_t seed = 0, double tol = kDefaultTolerance);

// Best rational approximation with denominator <= max_den.
Rational rational_approximation(double x, std::int64_t max_den = 1'000'000);

}  // namespace cuntz
