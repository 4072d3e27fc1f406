#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cuntz/scalar.hpp"
#include "cuntz/symbol_space.hpp"

namespace cuntz {

// A function on K_N that depends only on the first `depth` coordinates,
// stored as a dense table of N^depth values indexed by Word::index.
class StepFunction {
 public:
  StepFunction(Alphabet alphabet, int depth, std::vector<Scalar> table);

  static StepFunction constant(Alphabet alphabet, const Scalar& value);
  // chi_{C(I)}, depth |I|.
  static StepFunction indicator(Alphabet alphabet, const Word& I);
  // chi of a finite union of cylinders, depth = longest word.
  static StepFunction indicator(Alphabet alphabet, std::span<const Word> cylinders);
  static StepFunction tabulate(Alphabet alphabet, int depth,
                               const std::function<Scalar(const Word&)>& value);

  const Alphabet& alphabet() const { return alphabet_; }
  int depth() const { return depth_; }
  const std::vector<Scalar>& table() const { return table_; }
  const Scalar& at(std::int64_t index) const { return table_[static_cast<std::size_t>(index)]; }

  // f(w) for |w| >= depth; throws ResolutionError otherwise.
  const Scalar& evaluate(const Word& w) const;

  StepFunction refine(int depth) const;
  // f o sigma.
  StepFunction compose_shift() const;
  // f o sigma_i.
  StepFunction compose_section(int letter) const;

  StepFunction conj() const;
  StepFunction abs2() const;
  StepFunction scale(const Scalar& c) const;
  StepFunction map(const std::function<Scalar(const Scalar&)>& fn) const;
  StepFunction to_approx() const;

  bool is_exact() const;
  bool is_zero() const;

  friend StepFunction operator+(const StepFunction& f, const StepFunction& g);
  friend StepFunction operator-(const StepFunction& f, const StepFunction& g);
  friend StepFunction operator*(const StepFunction& f, const StepFunction& g);

  // Pointwise equality after refining to a common depth; exact values are
  // compared exactly.
  friend bool operator==(const StepFunction& f, const StepFunction& g);

 private:
  Alphabet alphabet_;
  int depth_;
  std::vector<Scalar> table_;
};

// Tolerance-aware pointwise comparison (exact where both sides are exact).
bool equal(const StepFunction& f, const StepFunction& g, double tol = kDefaultTolerance);

// First word (at the common depth) where f and g differ beyond tol.
std::optional<Word> first_difference(const StepFunction& f, const StepFunction& g,
                                     double tol = kDefaultTolerance);

enum class PointwiseOp { kAdd, kMul, kConj, kAbs2, kScale };

// Generic entry point; `g` is ignored for unary ops, `c` is used by kScale.
StepFunction pointwise(const StepFunction& f, const StepFunction& g, PointwiseOp op,
                       const Scalar& c = Scalar(1));

// Apply a binary function entrywise after refining both to a common depth.
StepFunction combine(const StepFunction& f, const StepFunction& g,
                     const std::function<Scalar(const Scalar&, const Scalar&)>& fn);

}  // namespace cuntz
