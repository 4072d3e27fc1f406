#include "cuntz/step_function.hpp"

#include <algorithm>

#include "cuntz/error.hpp"

namespace cuntz {

StepFunction::StepFunction(Alphabet alphabet, int depth, std::vector<Scalar> table)
    : alphabet_(alphabet), depth_(depth), table_(std::move(table)) {
  if (depth < 0) throw ValidationError("negative step function depth");
  if (static_cast<std::int64_t>(table_.size()) != alphabet_.power(depth)) {
    throw ValidationError("step function table must have N^depth entries");
  }
}

StepFunction StepFunction::constant(Alphabet alphabet, const Scalar& value) {
  return StepFunction(alphabet, 0, {value});
}

StepFunction StepFunction::indicator(Alphabet alphabet, const Word& I) {
  std::vector<Scalar> table(static_cast<std::size_t>(alphabet.power(I.size())));
  table[static_cast<std::size_t>(I.index(alphabet))] = Scalar(1);
  return StepFunction(alphabet, I.size(), std::move(table));
}

StepFunction StepFunction::indicator(Alphabet alphabet, std::span<const Word> cylinders) {
  int depth = 0;
  for (const Word& w : cylinders) depth = std::max(depth, w.size());
  std::vector<Scalar> table(static_cast<std::size_t>(alphabet.power(depth)));
  for (const Word& w : cylinders) {
    // C(w) covers N^(depth-|w|) consecutive indices.
    std::int64_t span = alphabet.power(depth - w.size());
    std::int64_t first = w.index(alphabet) * span;
    for (std::int64_t k = first; k < first + span; ++k) table[static_cast<std::size_t>(k)] = Scalar(1);
  }
  return StepFunction(alphabet, depth, std::move(table));
}

StepFunction StepFunction::tabulate(Alphabet alphabet, int depth,
                                    const std::function<Scalar(const Word&)>& value) {
  std::int64_t count = alphabet.power(depth);
  std::vector<Scalar> table;
  table.reserve(static_cast<std::size_t>(count));
  for (std::int64_t idx = 0; idx < count; ++idx) {
    table.push_back(value(Word::from_index(idx, depth, alphabet)));
  }
  return StepFunction(alphabet, depth, std::move(table));
}

const Scalar& StepFunction::evaluate(const Word& w) const {
  if (w.size() < depth_) {
    throw ResolutionError("word \"" + w.str() + "\" is shorter than step function depth " +
                          std::to_string(depth_));
  }
  return at(w.prefix(depth_).index(alphabet_));
}

StepFunction StepFunction::refine(int depth) const {
  if (depth < depth_) throw ResolutionError("cannot refine to a smaller depth");
  if (depth == depth_) return *this;
  std::int64_t factor = alphabet_.power(depth - depth_);
  std::vector<Scalar> table;
  table.reserve(table_.size() * static_cast<std::size_t>(factor));
  for (const Scalar& v : table_) table.insert(table.end(), static_cast<std::size_t>(factor), v);
  return StepFunction(alphabet_, depth, std::move(table));
}

StepFunction StepFunction::compose_shift() const {
  // (f o sigma)(i w) = f(w): the new table is N copies of the old one.
  std::vector<Scalar> table;
  table.reserve(table_.size() * static_cast<std::size_t>(alphabet_.size()));
  for (int i = 0; i < alphabet_.size(); ++i) table.insert(table.end(), table_.begin(), table_.end());
  return StepFunction(alphabet_, depth_ + 1, std::move(table));
}

StepFunction StepFunction::compose_section(int letter) const {
  if (!alphabet_.contains(letter)) throw ValidationError("letter outside alphabet");
  if (depth_ == 0) return *this;
  // (f o sigma_i)(w) = f(i w): the block of the table starting with letter i.
  std::int64_t block = alphabet_.power(depth_ - 1);
  auto first = table_.begin() + static_cast<std::ptrdiff_t>(letter * block);
  return StepFunction(alphabet_, depth_ - 1,
                      std::vector<Scalar>(first, first + static_cast<std::ptrdiff_t>(block)));
}

StepFunction StepFunction::map(const std::function<Scalar(const Scalar&)>& fn) const {
  std::vector<Scalar> table;
  table.reserve(table_.size());
  for (const Scalar& v : table_) table.push_back(fn(v));
  return StepFunction(alphabet_, depth_, std::move(table));
}

StepFunction StepFunction::conj() const {
  return map([](const Scalar& v) { return v.conj(); });
}

StepFunction StepFunction::abs2() const {
  return map([](const Scalar& v) { return v.abs2(); });
}

StepFunction StepFunction::scale(const Scalar& c) const {
  return map([&c](const Scalar& v) { return c * v; });
}

StepFunction StepFunction::to_approx() const {
  return map([](const Scalar& v) { return v.to_approx(); });
}

bool StepFunction::is_exact() const {
  return std::all_of(table_.begin(), table_.end(), [](const Scalar& v) { return v.is_exact(); });
}

bool StepFunction::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const Scalar& v) { return v.is_zero(); });
}

StepFunction combine(const StepFunction& f, const StepFunction& g,
                     const std::function<Scalar(const Scalar&, const Scalar&)>& fn) {
  if (!(f.alphabet() == g.alphabet())) throw ValidationError("alphabet mismatch");
  int depth = std::max(f.depth(), g.depth());
  const Alphabet& a = f.alphabet();
  std::int64_t count = a.power(depth);
  std::int64_t fdiv = a.power(depth - f.depth());
  std::int64_t gdiv = a.power(depth - g.depth());
  std::vector<Scalar> table;
  table.reserve(static_cast<std::size_t>(count));
  for (std::int64_t idx = 0; idx < count; ++idx) {
    table.push_back(fn(f.at(idx / fdiv), g.at(idx / gdiv)));
  }
  return StepFunction(a, depth, std::move(table));
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Scalar& a, const Scalar& b) { return a + b; });
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Scalar& a, const Scalar& b) { return a - b; });
}

StepFunction operator*(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](const Scalar& a, const Scalar& b) { return a * b; });
}

bool operator==(const StepFunction& f, const StepFunction& g) {
  return equal(f, g, 0.0) && f.is_exact() == g.is_exact();
}

bool equal(const StepFunction& f, const StepFunction& g, double tol) {
  if (!(f.alphabet() == g.alphabet())) return false;
  return !first_difference(f, g, tol).has_value();
}

std::optional<Word> first_difference(const StepFunction& f, const StepFunction& g,
                                     double tol) {
  if (!(f.alphabet() == g.alphabet())) throw ValidationError("alphabet mismatch");
  int depth = std::max(f.depth(), g.depth());
  const Alphabet& a = f.alphabet();
  std::int64_t count = a.power(depth);
  std::int64_t fdiv = a.power(depth - f.depth());
  std::int64_t gdiv = a.power(depth - g.depth());
  for (std::int64_t idx = 0; idx < count; ++idx) {
    if (!equal(f.at(idx / fdiv), g.at(idx / gdiv), tol)) return Word::from_index(idx, depth, a);
  }
  return std::nullopt;
}

StepFunction pointwise(const StepFunction& f, const StepFunction& g, PointwiseOp op,
                       const Scalar& c) {
  switch (op) {
    case PointwiseOp::kAdd: return f + g;
    case PointwiseOp::kMul: return f * g;
    case PointwiseOp::kConj: return f.conj();
    case PointwiseOp::kAbs2: return f.abs2();
    case PointwiseOp::kScale: return f.scale(c);
  }
  throw ValidationError("unknown pointwise op");
}

}  // namespace cuntz
