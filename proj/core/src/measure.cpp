#include "cuntz/measure.hpp"

#include <variant>

#include "cuntz/error.hpp"
#include "cuntz/exact_linalg.hpp"

namespace cuntz {

namespace {

void check_probability_vector(const std::vector<Rational>& v, const char* what) {
  Rational sum;
  for (const Rational& x : v) {
    if (x.sign() <= 0) throw ValidationError(std::string(what) + " entries must be positive");
    sum += x;
  }
  if (sum != Rational(1)) {
    throw ValidationError(std::string(what) + " must sum to 1, sums to " + sum.str());
  }
}

Rational product_weight(const std::vector<Rational>& q, const Word& w) {
  Rational p(1);
  for (int k = 0; k < w.size(); ++k) p *= q[static_cast<std::size_t>(w[k])];
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Specs

MarkovSpec MarkovSpec::create(RationalMatrix transition,
                              std::optional<std::vector<Rational>> stationary) {
  Alphabet alphabet(static_cast<int>(transition.size()));
  std::vector<Rational> lambda =
      stationary ? std::move(*stationary) : stationary_vector(transition);
  MarkovSpec spec{alphabet, std::move(transition), std::move(lambda)};
  spec.validate();
  return spec;
}

void MarkovSpec::validate() const {
  const auto n = static_cast<std::size_t>(alphabet.size());
  if (transition.size() != n || stationary.size() != n) {
    throw ValidationError("Markov spec dimensions do not match N");
  }
  for (const auto& row : transition) {
    if (row.size() != n) throw ValidationError("transition matrix must be N x N");
    check_probability_vector(row, "transition rows");
  }
  check_probability_vector(stationary, "stationary vector");
  for (std::size_t j = 0; j < n; ++j) {
    Rational col;
    for (std::size_t i = 0; i < n; ++i) col += stationary[i] * transition[i][j];
    if (col != stationary[j]) throw ValidationError("lambda T != lambda");
  }
}

bool MarkovSpec::has_constant_rows() const {
  for (const auto& row : transition) {
    if (row != transition.front()) return false;
  }
  return true;
}

ProductSpec ProductSpec::create(std::vector<Rational> weights) {
  ProductSpec spec{std::move(weights)};
  spec.validate();
  return spec;
}

void ProductSpec::validate() const {
  (void)alphabet();
  check_probability_vector(weights, "product weights");
}

MarkovSpec ProductSpec::to_markov() const {
  RationalMatrix t(weights.size(), weights);
  return MarkovSpec{alphabet(), std::move(t), weights};
}

AtomicTailSpec AtomicTailSpec::create(int tail_letter, std::vector<Rational> weights,
                                      int truncation) {
  Alphabet alphabet(static_cast<int>(weights.size()));
  AtomicTailSpec spec{alphabet, tail_letter, std::move(weights), Rational(), truncation};
  // Canonical prefixes: the empty word plus words ending in a letter != c.
  // sum = 1 + (s - q_c)/(1 - s) = (1 - q_c)/(1 - s).
  Rational s;
  for (const Rational& q : spec.weights) s += q;
  if (s >= Rational(1)) throw ValidationError("atomic weights must sum to less than 1");
  if (!alphabet.contains(tail_letter)) throw ValidationError("tail letter outside alphabet");
  spec.normalizer = (Rational(1) - s) / (Rational(1) - spec.weights[static_cast<std::size_t>(tail_letter)]);
  spec.validate();
  return spec;
}

void AtomicTailSpec::validate() const {
  if (weights.size() != static_cast<std::size_t>(alphabet.size())) {
    throw ValidationError("atomic weights must have N entries");
  }
  if (!alphabet.contains(tail_letter)) throw ValidationError("tail letter outside alphabet");
  for (const Rational& q : weights) {
    if (q.sign() <= 0) throw ValidationError("atomic weights must be positive");
  }
  if (weight_sum() >= Rational(1)) throw ValidationError("atomic weights must sum to less than 1");
  if (truncation < 1) throw ValidationError("truncation bound must be at least 1");
}

Rational AtomicTailSpec::weight_sum() const {
  Rational s;
  for (const Rational& q : weights) s += q;
  return s;
}

Rational AtomicTailSpec::atom_mass(const TailPoint& p) const {
  if (p.tail_letter() != tail_letter) throw ValidationError("atom has the wrong tail letter");
  if (!p.prefix().empty() && p.prefix().back() == tail_letter) {
    throw ValidationError("atom " + p.str() + " is not canonical");
  }
  return normalizer * product_weight(weights, p.prefix());
}

Rational AtomicTailSpec::cylinder_mass(const Word& I) const {
  if (I.empty()) return Rational(1);
  Rational prod = product_weight(weights, I);
  if (I.back() != tail_letter) {
    // Atoms I beta with beta empty or ending off the tail letter:
    // kappa prod (1 - q_c)/(1 - s) = prod.
    return prod;
  }
  // Atoms I beta with beta nonempty ending off c, plus the single atom alpha c^inf
  // where alpha is I with its trailing c's removed.
  Rational s = weight_sum();
  Rational ratio = (s - weights[static_cast<std::size_t>(tail_letter)]) / (Rational(1) - s);
  TailPoint stripped(I, tail_letter);
  return normalizer * prod * ratio + atom_mass(stripped);
}

Rational AtomicTailSpec::tail_mass_beyond(int length) const {
  // Canonical prefixes of length n >= 1 carry kappa s^(n-1) (s - q_c).
  Rational s = weight_sum();
  Rational qc = weights[static_cast<std::size_t>(tail_letter)];
  Rational s_pow(1);
  for (int k = 0; k < length; ++k) s_pow *= s;
  return normalizer * (s - qc) * s_pow / (Rational(1) - s);
}

// ---------------------------------------------------------------------------
// Measure

struct Measure::Node {
  struct Markov {
    MarkovSpec spec;
    std::optional<ProductSpec> product;
  };
  struct Atomic {
    AtomicTailSpec spec;
  };
  struct Table {
    Alphabet alphabet;
    std::map<Word, Rational> masses;
  };
  struct Wrapper {
    MeasureKind kind;
    int letter;
    Measure base;
  };
  std::variant<Markov, Atomic, Table, Wrapper> data;
};

Measure Measure::markov(MarkovSpec spec) {
  spec.validate();
  return Measure(std::make_shared<const Node>(Node{Node::Markov{std::move(spec), std::nullopt}}));
}

Measure Measure::product(ProductSpec spec) {
  spec.validate();
  MarkovSpec markov = spec.to_markov();
  return Measure(std::make_shared<const Node>(Node{Node::Markov{std::move(markov), std::move(spec)}}));
}

Measure Measure::atomic_tail(AtomicTailSpec spec) {
  spec.validate();
  return Measure(std::make_shared<const Node>(Node{Node::Atomic{std::move(spec)}}));
}

Measure Measure::table(Alphabet alphabet, std::map<Word, Rational> masses) {
  for (const auto& [w, m] : masses) {
    for (int k = 0; k < w.size(); ++k) {
      if (!alphabet.contains(w[k])) throw ValidationError("table word outside alphabet");
    }
    if (m.sign() < 0) throw ValidationError("negative cylinder mass");
  }
  return Measure(std::make_shared<const Node>(Node{Node::Table{alphabet, std::move(masses)}}));
}

MeasureKind Measure::kind() const {
  return std::visit(
      [](const auto& d) -> MeasureKind {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Node::Markov>) {
          return d.product ? MeasureKind::kProduct : MeasureKind::kMarkov;
        } else if constexpr (std::is_same_v<T, Node::Atomic>) {
          return MeasureKind::kAtomicTail;
        } else if constexpr (std::is_same_v<T, Node::Table>) {
          return MeasureKind::kTable;
        } else {
          return d.kind;
        }
      },
      node_->data);
}

const Alphabet& Measure::alphabet() const {
  return std::visit(
      [](const auto& d) -> const Alphabet& {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Node::Wrapper>) {
          return d.base.alphabet();
        } else if constexpr (std::is_same_v<T, Node::Table>) {
          return d.alphabet;
        } else {
          return d.spec.alphabet;
        }
      },
      node_->data);
}

Rational Measure::mass(const Word& I) const {
  return std::visit(
      [&I](const auto& d) -> Rational {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Node::Markov>) {
          if (I.empty()) return Rational(1);
          const MarkovSpec& s = d.spec;
          Rational m = s.stationary[static_cast<std::size_t>(I[0])];
          for (int k = 1; k < I.size(); ++k) {
            m *= s.transition[static_cast<std::size_t>(I[k - 1])][static_cast<std::size_t>(I[k])];
          }
          return m;
        } else if constexpr (std::is_same_v<T, Node::Atomic>) {
          return d.spec.cylinder_mass(I);
        } else if constexpr (std::is_same_v<T, Node::Table>) {
          auto it = d.masses.find(I);
          if (it == d.masses.end()) {
            throw ValidationError("table measure has no mass for C(" + I.str() + ")");
          }
          return it->second;
        } else {
          switch (d.kind) {
            case MeasureKind::kSectionPushforward:
              if (I.empty()) return d.base.total_mass();
              return I[0] == d.letter ? d.base.mass(I.drop_first()) : Rational(0);
            case MeasureKind::kShiftPushforward: {
              Rational m;
              for (int j = 0; j < d.base.alphabet().size(); ++j) m += d.base.mass(I.prepend(j));
              return m;
            }
            case MeasureKind::kRestrictShift:
              return d.base.mass(I.prepend(d.letter));
            default:
              throw InternalConsistencyError("bad wrapper kind");
          }
        }
      },
      node_->data);
}

const MarkovSpec* Measure::markov_spec() const {
  const auto* m = std::get_if<Node::Markov>(&node_->data);
  return m ? &m->spec : nullptr;
}

const ProductSpec* Measure::product_spec() const {
  const auto* m = std::get_if<Node::Markov>(&node_->data);
  return (m && m->product) ? &*m->product : nullptr;
}

const AtomicTailSpec* Measure::atomic_spec() const {
  const auto* a = std::get_if<Node::Atomic>(&node_->data);
  return a ? &a->spec : nullptr;
}

const Measure* Measure::base() const {
  const auto* w = std::get_if<Node::Wrapper>(&node_->data);
  return w ? &w->base : nullptr;
}

int Measure::letter() const {
  const auto* w = std::get_if<Node::Wrapper>(&node_->data);
  return w ? w->letter : -1;
}

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kMarkov: return "markov";
    case MeasureKind::kProduct: return "product";
    case MeasureKind::kAtomicTail: return "atomic_tail";
    case MeasureKind::kTable: return "table";
    case MeasureKind::kSectionPushforward: return "pushforward_section";
    case MeasureKind::kShiftPushforward: return "pushforward_shift";
    case MeasureKind::kRestrictShift: return "restrict_then_shift";
  }
  return "unknown";
}

std::string Measure::describe() const {
  std::string out = to_string(kind());
  if (const Measure* b = base()) {
    out += "(";
    if (kind() != MeasureKind::kShiftPushforward) out += std::to_string(letter()) + ", ";
    out += b->describe() + ")";
  }
  return out;
}

Measure pushforward_section(const Measure& mu, int letter) {
  if (!mu.alphabet().contains(letter)) throw ValidationError("letter outside alphabet");
  return Measure(std::make_shared<const Measure::Node>(
      Measure::Node{Measure::Node::Wrapper{MeasureKind::kSectionPushforward, letter, mu}}));
}

Measure pushforward_shift(const Measure& mu) {
  return Measure(std::make_shared<const Measure::Node>(
      Measure::Node{Measure::Node::Wrapper{MeasureKind::kShiftPushforward, -1, mu}}));
}

Measure restrict_then_shift(const Measure& mu, int letter) {
  if (!mu.alphabet().contains(letter)) throw ValidationError("letter outside alphabet");
  return Measure(std::make_shared<const Measure::Node>(
      Measure::Node{Measure::Node::Wrapper{MeasureKind::kRestrictShift, letter, mu}}));
}

// ---------------------------------------------------------------------------
// Operations

std::vector<Rational> stationary_vector(const RationalMatrix& transition) {
  const std::size_t n = transition.size();
  Alphabet alphabet(static_cast<int>(n));
  (void)alphabet;
  for (const auto& row : transition) {
    if (row.size() != n) throw ValidationError("transition matrix must be square");
    check_probability_vector(row, "transition rows");
  }
  // Columns 0..n-2 of lambda (T - I) = 0, plus sum lambda = 1.
  RationalMatrix a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      a[j][i] = transition[i][j] - (i == j ? Rational(1) : Rational(0));
    }
  }
  for (std::size_t i = 0; i < n; ++i) a[n - 1][i] = 1;
  b[n - 1] = 1;
  return solve(std::move(a), std::move(b));
}

RnDerivative rn_derivative(const Measure& nu, const Measure& mu, int depth) {
  if (!(nu.alphabet() == mu.alphabet())) throw ValidationError("alphabet mismatch");
  const Alphabet& alphabet = mu.alphabet();
  std::int64_t count = alphabet.power(depth);
  std::vector<Scalar> table;
  table.reserve(static_cast<std::size_t>(count));
  bool exact = true;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    Word w = Word::from_index(idx, depth, alphabet);
    Rational m = mu.mass(w);
    Rational n = nu.mass(w);
    Rational ratio;
    if (m.is_zero()) {
      if (!n.is_zero()) throw NotAbsolutelyContinuous(w.str());
    } else {
      ratio = n / m;
    }
    table.emplace_back(ratio);
    if (!exact) continue;
    for (int j = 0; j < alphabet.size(); ++j) {
      Word child = w.append(j);
      Rational mc = mu.mass(child);
      Rational nc = nu.mass(child);
      bool same = mc.is_zero() ? nc.is_zero() : (nc / mc == ratio);
      if (!same) {
        exact = false;
        break;
      }
    }
  }
  return {StepFunction(alphabet, depth, std::move(table)), exact};
}

Scalar integrate(const StepFunction& f, const Measure& mu) {
  if (!(f.alphabet() == mu.alphabet())) throw ValidationError("alphabet mismatch");
  Scalar sum;
  std::int64_t count = f.alphabet().power(f.depth());
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const Scalar& v = f.at(idx);
    if (v.is_zero()) continue;
    Rational m = mu.mass(Word::from_index(idx, f.depth(), f.alphabet()));
    if (!m.is_zero()) sum += v * Scalar(m);
  }
  return sum;
}

Scalar inner_product(const StepFunction& f, const StepFunction& g, const Measure& mu) {
  return integrate(f.conj() * g, mu);
}

ConsistencyReport consistency_check(const Measure& mu, int depth) {
  const Alphabet& alphabet = mu.alphabet();
  ConsistencyReport report;
  try {
    for (int len = 0; len < depth; ++len) {
      for (const Word& I : all_words(alphabet, len)) {
        Rational parent = mu.mass(I);
        Rational children;
        for (int j = 0; j < alphabet.size(); ++j) children += mu.mass(I.append(j));
        if (parent != children) {
          report.pass = false;
          report.witness = I;
          report.detail = "mass(C(" + I.str() + ")) = " + parent.str() +
                          " but children sum to " + children.str();
          return report;
        }
      }
    }
  } catch (const ValidationError& e) {
    report.pass = false;
    report.detail = e.what();
  }
  return report;
}

}  // namespace cuntz
