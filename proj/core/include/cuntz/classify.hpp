#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuntz/measure.hpp"
#include "cuntz/monic_system.hpp"
#include "cuntz/radical.hpp"
#include "cuntz/report.hpp"

namespace cuntz {

using RadicalMatrix = std::vector<std::vector<RadicalSum>>;
using RealMatrix = std::vector<std::vector<double>>;

inline constexpr double kRankTolerance = 1e-9;
inline constexpr double kResidualTolerance = 1e-8;

// Compressions V_i^* = S_i^* P_M of a Markov representation to the space M of
// functions of the first coordinate, in the basis e_j = chi_{C(j)}/sqrt(lambda_j).
// (V_i^*)_{k,j} = delta_{j,i} sqrt(T_{i,k}).
struct BoundaryOperators {
  Alphabet alphabet;
  std::vector<RadicalMatrix> adjoints;

  // sum_i V_i V_i^*, exact.
  RadicalMatrix resolution() const;
};

BoundaryOperators boundary_matrices(const MarkovSpec& spec);

struct FixedSpaceResult {
  // Dimension of {X : sum_i V'_i X V_i^* = X} from the dense N^2 x N^2 solve.
  int dimension = 0;
  std::vector<RealMatrix> basis;
  // Dimension from the diagonal reduction (fixed vectors of sqrt(T_ij T'_ij)).
  int structural_dimension = 0;
  // 1 if T == T' exactly, else 0.
  int predicted_dimension = 0;
  double max_residual = 0.0;
  bool method_agreement = false;
};

// Solutions X of sum_i V'_i X V_i^* = X, with V from `a` and V' from `b`.
FixedSpaceResult fixed_point_space(const MarkovSpec& a, const MarkovSpec& b);

// Row sums of sqrt(T_ij T'_ij); each is <= 1 with equality iff the rows agree.
std::vector<double> hellinger_row_sums(const MarkovSpec& a, const MarkovSpec& b);

struct IrreducibilityResult {
  bool irreducible = false;
  FixedSpaceResult fixed_space;
};

IrreducibilityResult irreducibility_check(const MarkovSpec& spec);

struct DisjointnessResult {
  // Decided exactly: T != T'.
  bool disjoint = false;
  FixedSpaceResult fixed_space;
  // First depth <= 200 at which the affinity drops below 0.01.
  std::optional<int> singular_depth;
  bool affinity_nonincreasing = true;
  std::vector<double> affinities;
};

inline constexpr int kAffinityMaxDepth = 200;
inline constexpr double kAffinityThreshold = 0.01;

DisjointnessResult disjointness_check(const MarkovSpec& a, const MarkovSpec& b);

enum class Equivalence {
  kEquivalent,
  kNotEquivalentSingular,     // mutually singular measures
  kNotEquivalentInequivalent, // absolute continuity fails in one direction
  kInconclusive,              // no certificate of depth <= d
};

std::string to_string(Equivalence e);

struct EquivalenceVerdict {
  Equivalence verdict = Equivalence::kInconclusive;
  std::optional<StepFunction> certificate;
  Report report;
  std::string detail;
};

// Checks d(mu')/d(mu) = |h|^2 and f'_i h = (h o sigma) f_i for a supplied h,
// or searches for h of depth <= depth when none is given.
EquivalenceVerdict equivalence_check(const MonicSystem& a, const MonicSystem& b,
                                     const std::optional<StepFunction>& h, int depth,
                                     double tol = kDefaultTolerance);

// Basis of {h : depth(h) <= depth, h o sigma = h mu-a.e.}. With
// `enforce_invariance` false the invariance equations are dropped.
std::vector<StepFunction> commutant_basis(const MonicSystem& sys, int depth,
                                          bool enforce_invariance = true);

}  // namespace cuntz
