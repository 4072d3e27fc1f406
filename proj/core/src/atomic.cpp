#include "cuntz/atomic.hpp"

#include <algorithm>
#include <set>

#include "cuntz/error.hpp"

namespace cuntz {

AtomVector AtomVector::delta(const TailPoint& p, int bound) {
  AtomVector v;
  v.tail_letter = p.tail_letter();
  v.bound = bound;
  v.entries.emplace(p, Scalar(1));
  return v;
}

Scalar AtomVector::norm2(const AtomicTailSpec& spec) const {
  Scalar sum;
  for (const auto& [p, value] : entries) sum += value.abs2() * Scalar(spec.atom_mass(p));
  return sum;
}

Rational atom_mass(const AtomicTailSpec& spec, const TailPoint& p) { return spec.atom_mass(p); }

Rational atomic_rn_value(const AtomicTailSpec& spec, int i, const TailPoint& p) {
  if (p.tail_letter() != spec.tail_letter) throw ValidationError("atom has the wrong tail letter");
  if (p.first_letter() != i) return Rational(0);
  return spec.atom_mass(tail_point_shift(p)) / spec.atom_mass(p);
}

Scalar atomic_monic_function(const AtomicTailSpec& spec, int i, const TailPoint& p) {
  Rational rn = atomic_rn_value(spec, i, p);
  if (rn.is_zero()) return Scalar();
  return Scalar(sqrt_positive_rational(rn));
}

AtomicApplyResult atomic_apply(const AtomicTailSpec& spec, AtomicOp op, int i, const AtomVector& v) {
  if (!spec.alphabet.contains(i)) throw ValidationError("letter outside alphabet");
  AtomicApplyResult out{AtomVector{v.tail_letter, v.bound, {}}, Scalar(), {}};
  for (const auto& [p, value] : v.entries) {
    if (value.is_zero()) continue;
    if (op == AtomicOp::kIsometry) {
      TailPoint image = tail_point_prepend(i, p);
      Scalar entry = atomic_monic_function(spec, i, image) * value;
      if (image.prefix().size() > v.bound) {
        out.truncated_norm2 += entry.abs2() * Scalar(spec.atom_mass(image));
        out.truncated.push_back(image);
        continue;
      }
      out.vector.entries[image] += entry;
    } else {
      if (p.first_letter() != i) continue;
      Scalar entry = value * atomic_monic_function(spec, i, p).reciprocal();
      out.vector.entries[tail_point_shift(p)] += entry;
    }
  }
  return out;
}

std::vector<TailPoint> enumerate_atoms(const AtomicTailSpec& spec, int L) {
  std::vector<TailPoint> atoms{TailPoint(Word(), spec.tail_letter)};
  std::vector<Word> frontier{Word()};
  for (int len = 1; len <= L; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int a = 0; a < spec.alphabet.size(); ++a) next.push_back(w.append(a));
    }
    for (const Word& w : next) {
      if (w.back() != spec.tail_letter) atoms.emplace_back(w, spec.tail_letter);
    }
    frontier = std::move(next);
  }
  return atoms;
}

namespace {

// Rank of a 0/1 row family over Q by incremental sparse elimination,
// stopping once the rank reaches the column count.
std::int64_t sparse_rank(const std::vector<std::vector<std::int64_t>>& rows, std::int64_t columns) {
  std::map<std::int64_t, std::map<std::int64_t, Rational>> pivots;  // pivot column -> reduced row
  for (const auto& support : rows) {
    if (static_cast<std::int64_t>(pivots.size()) == columns) break;
    std::map<std::int64_t, Rational> row;
    for (std::int64_t c : support) row[c] = Rational(1);
    while (!row.empty()) {
      auto lead = row.begin();
      auto hit = pivots.find(lead->first);
      if (hit == pivots.end()) break;
      const Rational factor = lead->second;
      for (const auto& [c, v] : hit->second) {
        Rational updated = row[c] - factor * v;
        if (updated.is_zero()) row.erase(c); else row[c] = updated;
      }
    }
    if (row.empty()) continue;
    const Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v = v / lead;
    pivots.emplace(row.begin()->first, std::move(row));
  }
  return static_cast<std::int64_t>(pivots.size());
}

}  // namespace

AtomicMonicity atomic_monicity_report(const AtomicTailSpec& spec, int L) {
  spec.validate();
  if (L < 0) throw ValidationError("truncation bound must be nonnegative");
  AtomicMonicity out;
  const std::vector<TailPoint> atoms = enumerate_atoms(spec, L);
  out.atom_count = static_cast<std::int64_t>(atoms.size());

  std::set<Word> shadows;
  for (const TailPoint& p : atoms) shadows.insert(p.truncate(L));
  out.distinguishable = static_cast<std::int64_t>(shadows.size());

  // P(C(I)) phi has coefficient 2^-n on e_n for the atoms in C(I); scaling
  // columns leaves the rank unchanged, so the indicator pattern suffices.
  std::vector<std::vector<std::int64_t>> rows;
  for (int len = L; len >= 0; --len) {
    for (const Word& I : all_words(spec.alphabet, len)) {
      std::vector<std::int64_t> support;
      for (std::size_t n = 0; n < atoms.size(); ++n) {
        if (atoms[n].in_cylinder(I)) support.push_back(static_cast<std::int64_t>(n));
      }
      rows.push_back(std::move(support));
    }
  }
  out.span_rank = sparse_rank(rows, out.atom_count);

  for (const TailPoint& p : atoms) out.partial_mass += spec.atom_mass(p);
  out.tail_mass = spec.tail_mass_beyond(L);

  out.report.add("one_dimensional_eigenspaces", true, "",
                 "each atom p spans P({p})H = C delta_p");
  out.report.add("cyclic_span", out.span_rank == out.distinguishable, "",
                 "rank " + std::to_string(out.span_rank) + ", distinguishable atoms " +
                     std::to_string(out.distinguishable));
  const bool exact_total = out.partial_mass + out.tail_mass == Rational(1);
  out.report.add("mass_accounting", exact_total, exact_total ? "" : "L=" + std::to_string(L),
                 "partial " + out.partial_mass.str() + " + tail " + out.tail_mass.str());
  out.monic = out.report.pass();
  return out;
}

Report atomic_cuntz_check(const AtomicTailSpec& spec, int bound) {
  spec.validate();
  const int n = spec.alphabet.size();
  Report report;
  Clause relations{"adjoint_relations", true, "", ""};
  Clause completeness{"completeness", true, "", ""};
  auto same = [](const AtomVector& a, const AtomVector& b) {
    auto nonzero = [](const AtomVector& v) {
      std::map<TailPoint, Scalar> out;
      for (const auto& [p, s] : v.entries) {
        if (!s.is_zero()) out.emplace(p, s);
      }
      return out;
    };
    return nonzero(a) == nonzero(b);
  };
  for (const TailPoint& p : enumerate_atoms(spec, bound - 1)) {
    const AtomVector v = AtomVector::delta(p, bound);
    AtomVector total{v.tail_letter, bound, {}};
    for (int i = 0; i < n; ++i) {
      const AtomicApplyResult si = atomic_apply(spec, AtomicOp::kIsometry, i, v);
      if (!si.truncated.empty()) {
        throw InternalConsistencyError("isometry left the truncation bound at " + p.str());
      }
      for (int j = 0; j < n && relations.pass; ++j) {
        const AtomVector back = atomic_apply(spec, AtomicOp::kAdjoint, j, si.vector).vector;
        const AtomVector expected = (i == j) ? v : AtomVector{v.tail_letter, bound, {}};
        if (!same(back, expected)) {
          relations.pass = false;
          relations.witness = p.str();
          relations.detail = "S_" + std::to_string(j) + "^* S_" + std::to_string(i) +
                             " delta differs from the expected value";
        }
      }
      const AtomVector adj = atomic_apply(spec, AtomicOp::kAdjoint, i, v).vector;
      for (const auto& [q, s] : atomic_apply(spec, AtomicOp::kIsometry, i, adj).vector.entries) {
        total.entries[q] += s;
      }
    }
    if (completeness.pass && !same(total, v)) {
      completeness.pass = false;
      completeness.witness = p.str();
      completeness.detail = "sum_i S_i S_i^* delta != delta";
    }
  }
  report.clauses.push_back(std::move(relations));
  report.clauses.push_back(std::move(completeness));
  return report;
}

}  // namespace cuntz
