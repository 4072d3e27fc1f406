#include <doctest.h>

#include <random>
#include <set>

#include "cuntz/error.hpp"
#include "cuntz/symbol_space.hpp"

using namespace cuntz;

TEST_CASE("alphabet bounds") {
  CHECK_THROWS_AS(Alphabet(1), ValidationError);
  CHECK_THROWS_AS(Alphabet(11), ValidationError);
  CHECK(Alphabet(3).power(4) == 81);
}

TEST_CASE("word parsing and indexing") {
  const Alphabet two(2);
  const Word w = Word::parse("011", two);
  CHECK(w.size() == 3);
  CHECK(w.index(two) == 3);
  CHECK(Word::from_index(3, 3, two) == w);
  CHECK(w.str() == "011");
  CHECK(Word::parse("", two).empty());
  CHECK_THROWS_AS(Word::parse("012", two), Error);
  CHECK(w.drop_first() == Word({1, 1}));
  CHECK(w.prepend(1) == Word({1, 0, 1, 1}));
  CHECK(w.prefix(1) == Word({0}));
}

TEST_CASE("cylinder relations") {
  CHECK(cylinder_relation(Word({0, 1}), Word({0, 1})) == CylinderRelation::kEqual);
  CHECK(cylinder_relation(Word({0}), Word({0, 1})) == CylinderRelation::kContains);
  CHECK(cylinder_relation(Word({0, 1}), Word({0})) == CylinderRelation::kContainedIn);
  CHECK(cylinder_relation(Word({0, 1}), Word({1, 0})) == CylinderRelation::kDisjoint);
}

TEST_CASE("section and shift maps on cylinders") {
  const Alphabet two(2);
  CHECK(section_image(Word({1, 1}), 0) == Word({0, 1, 1}));
  CHECK(section_image(Word(), 1) == Word({1}));
  CHECK(shift_preimage(Word({1}), two) == std::vector<Word>{Word({0, 1}), Word({1, 1})});
}

TEST_CASE("tail points") {
  const TailPoint p(Word({0, 1}), 0);
  CHECK(tail_point_shift(p) == TailPoint(Word({1}), 0));
  const TailPoint fixed(Word(), 0);
  CHECK(tail_point_shift(fixed) == fixed);
  CHECK(tail_point_prepend(0, fixed) == fixed);
  CHECK(TailPoint(Word({1, 0, 0}), 0) == TailPoint(Word({1}), 0));
  CHECK(p.truncate(4) == Word({0, 1, 0, 0}));
  CHECK(p.in_cylinder(Word({0, 1, 0})));
  CHECK_FALSE(p.in_cylinder(Word({0, 1, 1})));
  CHECK(fixed.first_letter() == 0);
}

TEST_CASE("property: shift undoes prepend on tail points") {
  std::mt19937_64 rng(21);
  for (int n : {2, 3}) {
    const Alphabet alphabet(n);
    std::uniform_int_distribution<int> len(0, 6), letter(0, n - 1);
    for (int t = 0; t < 200; ++t) {
      std::vector<std::uint8_t> raw(static_cast<std::size_t>(len(rng)));
      for (auto& x : raw) x = static_cast<std::uint8_t>(letter(rng));
      const int c = letter(rng);
      const TailPoint p(Word(raw), c);
      for (int i = 0; i < n; ++i) REQUIRE(tail_point_shift(tail_point_prepend(i, p)) == p);
      // Canonical form is unique: appending tail letters changes nothing.
      REQUIRE(TailPoint(Word(raw).append(c), c) == p);
    }
  }
}

TEST_CASE("property: one-letter extensions partition each cylinder") {
  for (int n : {2, 3}) {
    const Alphabet alphabet(n);
    for (int len = 0; len <= 5; ++len) {
      for (const Word& w : all_words(alphabet, len)) {
        std::set<Word> children;
        for (const Word& v : all_words(alphabet, len + 1)) {
          const CylinderRelation r = cylinder_relation(w, v);
          if (r == CylinderRelation::kContains) children.insert(v);
          else REQUIRE(r == CylinderRelation::kDisjoint);
        }
        REQUIRE(children.size() == static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) REQUIRE(children.count(w.append(j)) == 1);
        // The sigma-preimage of C(w) is the union of the C(jw).
        REQUIRE(shift_preimage(w, alphabet).size() == static_cast<std::size_t>(n));
      }
    }
  }
}
