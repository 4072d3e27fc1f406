#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cuntz {

// The alphabet Z_N. Words serialize as digit strings, so N is capped at 10.
class Alphabet {
 public:
  static constexpr int kMaxSize = 10;

  explicit Alphabet(int size);

  int size() const { return size_; }
  bool contains(int letter) const { return letter >= 0 && letter < size_; }
  // N^k, throws on overflow past 2^62.
  std::int64_t power(int k) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int size_;
};

// A finite word i_1 ... i_n, naming the cylinder C(I). The empty word names
// the full space.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {}

  // Digit string; every digit must be a letter of `alphabet`.
  static Word parse(std::string_view digits, const Alphabet& alphabet);
  // The word of length `length` whose base-N value is `index`, most
  // significant letter first.
  static Word from_index(std::int64_t index, int length, const Alphabet& alphabet);

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  int operator[](int k) const { return letters_[static_cast<std::size_t>(k)]; }
  int front() const { return letters_.front(); }
  int back() const { return letters_.back(); }
  const std::vector<std::uint8_t>& letters() const { return letters_; }

  // Base-N value of the word (inverse of from_index).
  std::int64_t index(const Alphabet& alphabet) const;

  Word prefix(int k) const;
  Word drop_first() const;
  Word prepend(int letter) const;
  Word append(int letter) const;
  Word concat(const Word& tail) const;
  bool is_prefix_of(const Word& other) const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<std::uint8_t> letters_;
};

enum class CylinderRelation { kDisjoint, kContains, kContainedIn, kEqual };

// Set relation between C(I) and C(J): kContains means C(J) is a subset of C(I).
CylinderRelation cylinder_relation(const Word& I, const Word& J);

std::string to_string(CylinderRelation r);

// sigma_i(C(I)) = C(iI).
Word section_image(const Word& I, int letter);

// sigma^{-1}(C(I)) as the disjoint union of C(jI), j in Z_N.
std::vector<Word> shift_preimage(const Word& I, const Alphabet& alphabet);

// All words of the given length in lexicographic (= index) order.
std::vector<Word> all_words(const Alphabet& alphabet, int length);

// The eventually constant infinite word prefix . tail^infinity, kept in
// canonical form: the prefix never ends in the tail letter.
class TailPoint {
 public:
  TailPoint(Word prefix, int tail_letter);

  const Word& prefix() const { return prefix_; }
  int tail_letter() const { return tail_; }

  // First letter of the infinite word.
  int first_letter() const { return prefix_.empty() ? tail_ : prefix_.front(); }
  // The first `length` letters.
  Word truncate(int length) const;
  bool in_cylinder(const Word& I) const;
  std::string str() const;

  friend bool operator==(const TailPoint&, const TailPoint&) = default;
  friend auto operator<=>(const TailPoint&, const TailPoint&) = default;

 private:
  Word prefix_;
  int tail_;
};

// sigma(p); the constant word tail^infinity is fixed.
TailPoint tail_point_shift(const TailPoint& p);
// sigma_i(p), canonicalized.
TailPoint tail_point_prepend(int letter, const TailPoint& p);

std::ostream& operator<<(std::ostream& os, const Word& w);
std::ostream& operator<<(std::ostream& os, const TailPoint& p);

}  // namespace cuntz
