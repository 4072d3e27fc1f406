#include "cuntz/symbol_space.hpp"

#include <algorithm>
#include <ostream>

#include "cuntz/error.hpp"

namespace cuntz {

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 2 || size > kMaxSize) {
    throw ValidationError("alphabet size must be in [2, " + std::to_string(kMaxSize) +
                          "], got " + std::to_string(size));
  }
}

std::int64_t Alphabet::power(int k) const {
  if (k < 0) throw DomainError("negative word length");
  std::int64_t p = 1;
  for (int j = 0; j < k; ++j) {
    if (p > (std::int64_t{1} << 62) / size_) throw OverflowError("N^k overflows");
    p *= size_;
  }
  return p;
}

Word::Word(std::initializer_list<int> letters) {
  letters_.reserve(letters.size());
  for (int l : letters) {
    if (l < 0 || l >= Alphabet::kMaxSize) throw ValidationError("letter out of range");
    letters_.push_back(static_cast<std::uint8_t>(l));
  }
}

Word Word::parse(std::string_view digits, const Alphabet& alphabet) {
  std::vector<std::uint8_t> letters;
  letters.reserve(digits.size());
  for (char c : digits) {
    int l = c - '0';
    if (c < '0' || c > '9' || !alphabet.contains(l)) {
      throw ParseError("invalid word \"" + std::string(digits) + "\" for N=" +
                       std::to_string(alphabet.size()));
    }
    letters.push_back(static_cast<std::uint8_t>(l));
  }
  return Word(std::move(letters));
}

Word Word::from_index(std::int64_t index, int length, const Alphabet& alphabet) {
  std::vector<std::uint8_t> letters(static_cast<std::size_t>(length));
  for (int k = length - 1; k >= 0; --k) {
    letters[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(index % alphabet.size());
    index /= alphabet.size();
  }
  return Word(std::move(letters));
}

std::int64_t Word::index(const Alphabet& alphabet) const {
  std::int64_t idx = 0;
  for (auto l : letters_) idx = idx * alphabet.size() + l;
  return idx;
}

Word Word::prefix(int k) const {
  if (k > size()) throw ResolutionError("prefix longer than word");
  return Word(std::vector<std::uint8_t>(letters_.begin(), letters_.begin() + k));
}

Word Word::drop_first() const {
  if (letters_.empty()) return *this;
  return Word(std::vector<std::uint8_t>(letters_.begin() + 1, letters_.end()));
}

Word Word::prepend(int letter) const {
  std::vector<std::uint8_t> letters;
  letters.reserve(letters_.size() + 1);
  letters.push_back(static_cast<std::uint8_t>(letter));
  letters.insert(letters.end(), letters_.begin(), letters_.end());
  return Word(std::move(letters));
}

Word Word::append(int letter) const {
  auto letters = letters_;
  letters.push_back(static_cast<std::uint8_t>(letter));
  return Word(std::move(letters));
}

Word Word::concat(const Word& tail) const {
  auto letters = letters_;
  letters.insert(letters.end(), tail.letters_.begin(), tail.letters_.end());
  return Word(std::move(letters));
}

bool Word::is_prefix_of(const Word& other) const {
  return size() <= other.size() &&
         std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (auto l : letters_) s.push_back(static_cast<char>('0' + l));
  return s;
}

CylinderRelation cylinder_relation(const Word& I, const Word& J) {
  if (I == J) return CylinderRelation::kEqual;
  if (I.is_prefix_of(J)) return CylinderRelation::kContains;
  if (J.is_prefix_of(I)) return CylinderRelation::kContainedIn;
  return CylinderRelation::kDisjoint;
}

std::string to_string(CylinderRelation r) {
  switch (r) {
    case CylinderRelation::kDisjoint: return "disjoint";
    case CylinderRelation::kContains: return "contains";
    case CylinderRelation::kContainedIn: return "contained_in";
    case CylinderRelation::kEqual: return "equal";
  }
  return "unknown";
}

Word section_image(const Word& I, int letter) { return I.prepend(letter); }

std::vector<Word> shift_preimage(const Word& I, const Alphabet& alphabet) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(alphabet.size()));
  for (int j = 0; j < alphabet.size(); ++j) out.push_back(I.prepend(j));
  return out;
}

std::vector<Word> all_words(const Alphabet& alphabet, int length) {
  std::int64_t count = alphabet.power(length);
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t idx = 0; idx < count; ++idx) {
    out.push_back(Word::from_index(idx, length, alphabet));
  }
  return out;
}

TailPoint::TailPoint(Word prefix, int tail_letter) : tail_(tail_letter) {
  auto letters = prefix.letters();
  while (!letters.empty() && letters.back() == tail_letter) letters.pop_back();
  prefix_ = Word(std::move(letters));
}

Word TailPoint::truncate(int length) const {
  if (length <= prefix_.size()) return prefix_.prefix(length);
  Word w = prefix_;
  while (w.size() < length) w = w.append(tail_);
  return w;
}

bool TailPoint::in_cylinder(const Word& I) const { return truncate(I.size()) == I; }

std::string TailPoint::str() const {
  return prefix_.str() + "." + std::to_string(tail_) + "^inf";
}

TailPoint tail_point_shift(const TailPoint& p) {
  if (p.prefix().empty()) return p;
  return TailPoint(p.prefix().drop_first(), p.tail_letter());
}

TailPoint tail_point_prepend(int letter, const TailPoint& p) {
  return TailPoint(p.prefix().prepend(letter), p.tail_letter());
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << '"' << w.str() << '"'; }
std::ostream& operator<<(std::ostream& os, const TailPoint& p) { return os << p.str(); }

}  // namespace cuntz
