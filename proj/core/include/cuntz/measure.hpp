#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/rational.hpp"
#include "cuntz/scalar.hpp"
#include "cuntz/step_function.hpp"
#include "cuntz/symbol_space.hpp"

namespace cuntz {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Stationary pair (lambda, T): T strictly positive and row-stochastic,
// lambda T = lambda, sum lambda = 1.
struct MarkovSpec {
  Alphabet alphabet;
  RationalMatrix transition;
  std::vector<Rational> stationary;

  // Validates T and solves for lambda when it is not supplied.
  static MarkovSpec create(RationalMatrix transition,
                           std::optional<std::vector<Rational>> stationary = std::nullopt);
  void validate() const;
  // Rows all equal, i.e. a product (Bernoulli) measure.
  bool has_constant_rows() const;
};

// i.i.d. measure mu(C(i_1...i_n)) = p_{i_1} ... p_{i_n}.
struct ProductSpec {
  std::vector<Rational> weights;

  static ProductSpec create(std::vector<Rational> weights);
  void validate() const;
  Alphabet alphabet() const { return Alphabet(static_cast<int>(weights.size())); }
  // Constant-row transition matrix with lambda = p.
  MarkovSpec to_markov() const;
};

// Atomic probability measure on the points alpha . c^infinity. The canonical
// prefix alpha (not ending in c) carries mass kappa * prod_j q_{alpha_j}.
struct AtomicTailSpec {
  Alphabet alphabet;
  int tail_letter;
  std::vector<Rational> weights;  // q
  Rational normalizer;            // kappa = (1 - s) / (1 - q_c), s = sum q
  int truncation = 8;             // default prefix bound L for atom vectors

  static AtomicTailSpec create(int tail_letter, std::vector<Rational> weights, int truncation = 8);
  void validate() const;

  Rational weight_sum() const;
  // Mass of the single atom p.
  Rational atom_mass(const TailPoint& p) const;
  // Mass of the cylinder C(I), closed form.
  Rational cylinder_mass(const Word& I) const;
  // Exact mass of all atoms whose canonical prefix is longer than `length`.
  Rational tail_mass_beyond(int length) const;
};

enum class MeasureKind {
  kMarkov,
  kProduct,
  kAtomicTail,
  kTable,
  kSectionPushforward,  // mu o sigma_i^{-1}
  kShiftPushforward,    // mu o sigma^{-1}
  kRestrictShift,       // (mu restricted to C(i)) o sigma^{-1}
};

std::string to_string(MeasureKind kind);

// A finite measure on K_N given by its cylinder masses. Values are immutable
// and cheap to copy; pushforwards wrap their argument instead of refitting.
class Measure {
 public:
  static Measure markov(MarkovSpec spec);
  static Measure product(ProductSpec spec);
  static Measure atomic_tail(AtomicTailSpec spec);
  // Explicit finite table of cylinder masses; querying a word absent from the
  // table throws ValidationError.
  static Measure table(Alphabet alphabet, std::map<Word, Rational> masses);

  MeasureKind kind() const;
  const Alphabet& alphabet() const;

  Rational mass(const Word& I) const;
  Rational total_mass() const { return mass(Word()); }

  // For kMarkov and kProduct (the latter as its constant-row Markov form).
  const MarkovSpec* markov_spec() const;
  const ProductSpec* product_spec() const;
  const AtomicTailSpec* atomic_spec() const;
  // Wrapped measure and letter of a pushforward.
  const Measure* base() const;
  int letter() const;

  std::string describe() const;

  friend Measure pushforward_section(const Measure& mu, int letter);
  friend Measure pushforward_shift(const Measure& mu);
  friend Measure restrict_then_shift(const Measure& mu, int letter);

 private:
  struct Node;
  explicit Measure(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Measure pushforward_section(const Measure& mu, int letter);
Measure pushforward_shift(const Measure& mu);
Measure restrict_then_shift(const Measure& mu, int letter);

inline Rational cylinder_mass(const Measure& mu, const Word& I) { return mu.mass(I); }

// The unique probability vector with lambda T = lambda for strictly positive
// row-stochastic T, by exact elimination.
std::vector<Rational> stationary_vector(const RationalMatrix& transition);

struct RnDerivative {
  StepFunction density;
  // Ratios are constant across every one-letter refinement.
  bool exact;
};

// Cylinder-ratio density d(nu)/d(mu) at the given depth.
RnDerivative rn_derivative(const Measure& nu, const Measure& mu, int depth);

Scalar integrate(const StepFunction& f, const Measure& mu);
// <f, g> = integral of conj(f) g.
Scalar inner_product(const StepFunction& f, const StepFunction& g, const Measure& mu);

enum class AffinityMethod { kAuto, kBruteForce, kRecursion };

// Depth-d Hellinger affinity sum_{|w| = d} sqrt(mu(C(w)) nu(C(w))).
// kAuto enumerates for d <= 12 and uses the transfer recursion above that.
double affinity(const Measure& mu, const Measure& nu, int depth,
                AffinityMethod method = AffinityMethod::kAuto, int jobs = 1);

// Affinities at depths 1..max_depth.
std::vector<double> affinity_sequence(const Measure& mu, const Measure& nu, int max_depth,
                                      int jobs = 1);

struct ConsistencyReport {
  bool pass = true;
  std::optional<Word> witness;
  std::string detail;
};

// mass(C(I)) == sum_j mass(C(Ij)) for every |I| < depth.
ConsistencyReport consistency_check(const Measure& mu, int depth);

}  // namespace cuntz
