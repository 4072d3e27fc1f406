#pragma once

#include <map>
#include <vector>

#include "cuntz/measure.hpp"
#include "cuntz/report.hpp"
#include "cuntz/scalar.hpp"
#include "cuntz/symbol_space.hpp"

namespace cuntz {

// Finitely supported vector in L^2 of an atomic-tail measure. Entries with
// prefix longer than `bound` are implicitly zero.
struct AtomVector {
  int tail_letter = 0;
  int bound = 8;
  std::map<TailPoint, Scalar> entries;

  static AtomVector delta(const TailPoint& p, int bound);

  // sum |v(p)|^2 mu({p}).
  Scalar norm2(const AtomicTailSpec& spec) const;
};

Rational atom_mass(const AtomicTailSpec& spec, const TailPoint& p);

// mu({sigma p}) / mu({p}) for p in C(i), 0 otherwise.
Rational atomic_rn_value(const AtomicTailSpec& spec, int i, const TailPoint& p);

// f_i(p) = sqrt(atomic_rn_value), exact.
Scalar atomic_monic_function(const AtomicTailSpec& spec, int i, const TailPoint& p);

enum class AtomicOp { kIsometry, kAdjoint };

struct AtomicApplyResult {
  AtomVector vector;
  // Norm mass of entries pushed past the bound, and the atoms they sat on.
  Scalar truncated_norm2;
  std::vector<TailPoint> truncated;
};

// (S_i v)(p) = f_i(p) v(sigma p); (S_i^* v)(p) = v(sigma_i p) / f_i(sigma_i p).
AtomicApplyResult atomic_apply(const AtomicTailSpec& spec, AtomicOp op, int i, const AtomVector& v);

// Canonical prefixes of length <= L, shortest first.
std::vector<TailPoint> enumerate_atoms(const AtomicTailSpec& spec, int L);

struct AtomicMonicity {
  bool monic = true;
  std::int64_t atom_count = 0;
  std::int64_t distinguishable = 0;
  std::int64_t span_rank = 0;
  Rational partial_mass;
  Rational tail_mass;
  Report report;
};

// Each atom carries a one-dimensional eigenspace of the projection-valued
// measure. With phi = sum_n 2^-n e_n over the atoms of prefix <= L, checks
// that span{P(C(I)) phi : |I| <= L} has the dimension of the number of
// atoms distinguishable at depth L, and that the truncated mass plus the
// tail mass is exactly 1.
AtomicMonicity atomic_monicity_report(const AtomicTailSpec& spec, int L);

// Clauses adjoint_relations and completeness on the deltas of all atoms of
// prefix length <= bound - 1, exact.
Report atomic_cuntz_check(const AtomicTailSpec& spec, int bound);

}  // namespace cuntz
