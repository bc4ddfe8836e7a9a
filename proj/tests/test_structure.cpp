#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "fopkit/errors.hpp"
#include "fopkit/problems.hpp"
#include "fopkit/structure.hpp"

using namespace fopkit;

namespace {

Structure triangle_like() {
  return Structure(graph_vocab(), 3, {{"E", {{0, 1}, {1, 0}}}}, {{"k", 2}});
}

}  // namespace

TEST_CASE("relation tables rank tuples lexicographically") {
  RelationTable t(2, 3);
  CHECK(t.cells() == 9);
  CHECK(t.rank({0, 0}) == 0);
  CHECK(t.rank({0, 1}) == 1);
  CHECK(t.rank({1, 0}) == 3);
  CHECK(t.rank({2, 2}) == 8);
  CHECK(t.unrank(5) == std::vector<int>{1, 2});
  t.set({1, 2}, true);
  CHECK(t.test({1, 2}));
  CHECK(t.cardinality() == 1);
  CHECK(t.tuples() == std::vector<std::vector<int>>{{1, 2}});
}

TEST_CASE("relation table increment is a binary counter with cell 0 as LSB") {
  RelationTable t(1, 2);
  CHECK(t.cardinality() == 0);
  CHECK(t.increment());  // 00 -> 10: {0}
  CHECK(t.test({0}));
  CHECK(!t.test({1}));
  CHECK(t.increment());  // -> 01: {1}
  CHECK(!t.test({0}));
  CHECK(t.test({1}));
  CHECK(t.increment());  // -> 11
  CHECK(t.cardinality() == 2);
  CHECK(!t.increment());  // wraps to empty
  CHECK(t.cardinality() == 0);
}

TEST_CASE("structures interpret every symbol and validate their data") {
  Structure s = triangle_like();
  CHECK(s.size() == 3);
  CHECK(s.rel(0).test({0, 1}));
  CHECK(!s.rel(0).test({1, 1}));
  CHECK(s.constant(0) == 2);

  CHECK_THROWS_WITH_AS(Structure(graph_vocab(), 0, {}, {}), "EmptyUniverse: universe size must be >= 1",
                       Error);
  CHECK_THROWS_AS(Structure(graph_vocab(), 2, {{"E", {{0, 2}}}}, {{"k", 0}}), Error);
  CHECK_THROWS_AS(Structure(graph_vocab(), 2, {{"E", {{0}}}}, {{"k", 0}}), Error);
  CHECK_THROWS_AS(Structure(graph_vocab(), 2, {{"F", {}}}, {{"k", 0}}), Error);
  CHECK_THROWS_AS(Structure(graph_vocab(), 2, {{"E", {}}}, {{"k", 2}}), Error);
  // Interpretations are total: leaving k out is an error.
  try {
    Structure(graph_vocab(), 2, {{"E", {}}}, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingInterpretation);
  }
}

TEST_CASE("structure equality is componentwise over matching signatures") {
  Structure a = triangle_like();
  Structure b = triangle_like();
  CHECK(a == b);
  b.set_constant(0, 1);
  CHECK(a != b);
  Structure c = Structure::empty(graph_vocab(), 3);
  CHECK(a != c);
}

TEST_CASE("structure space counts match the closed forms") {
  CHECK(StructureSpace(graph_vocab(), 1).count() == 2);     // 2^1 * 1
  CHECK(StructureSpace(graph_vocab(), 2).count() == 32);    // 2^4 * 2
  CHECK(StructureSpace(graph_vocab(), 3).count() == 1536);  // 2^9 * 3
  CHECK(StructureSpace(string_vocab(), 3).count() == 8);    // 2^3
  CHECK(StructureSpace(sgi_vocab(), 3).count() == 786432);  // 2^9 * 2^9 * 3

  uint64_t total = 0;
  for (int n = 1; n <= 4; ++n) total += StructureSpace(graph_vocab(), n).count();
  CHECK(total == 263714);
}

TEST_CASE("counts saturate instead of overflowing on huge spaces") {
  auto big = std::make_shared<const Vocabulary>(
      "big", std::vector<RelationSymbol>{{"R", 8}}, std::vector<std::string>{});
  StructureSpace space(big, 8);  // 2^(8^8) tables
  CHECK(!space.count_exact());
  CHECK(space.count() == UINT64_MAX);
}

TEST_CASE("enumeration treats constants as the low digits") {
  StructureSpace space(graph_vocab(), 2);
  // Index 0 is the all-empty structure; index 1 bumps the constant only.
  CHECK(space.at(0) == Structure::empty(graph_vocab(), 2));
  Structure s1 = space.at(1);
  CHECK(s1.constant(0) == 1);
  CHECK(s1.rel(0).cardinality() == 0);
  // Once constants wrap, the relation table advances as a binary counter
  // whose least significant cell is the lexicographically first tuple.
  Structure s2 = space.at(2);
  CHECK(s2.constant(0) == 0);
  CHECK(s2.rel(0).tuples() == std::vector<std::vector<int>>{{0, 0}});
  Structure s5 = space.at(5);
  CHECK(s5.constant(0) == 1);
  CHECK(s5.rel(0).tuples() == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("advance agrees with random access and stops after the last index") {
  StructureSpace space(sgi_vocab(), 2);
  Structure s = space.at(0);
  for (uint64_t i = 1; i < space.count(); ++i) {
    CHECK(StructureSpace::advance(s));
    if (i % 97 == 0) CHECK(s == space.at(i));
  }
  CHECK(!StructureSpace::advance(s));
}

TEST_CASE("for_each_structure visits the whole space in order and can stop early") {
  int seen = 0;
  for_each_structure(graph_vocab(), 2, [&](const Structure&) {
    ++seen;
    return true;
  });
  CHECK(seen == 32);
  seen = 0;
  for_each_structure(graph_vocab(), 2, [&](const Structure&) { return ++seen < 5; });
  CHECK(seen == 5);
}

TEST_CASE("encode lays out relation vectors then constants MSB-first") {
  Structure q1(string_vocab(), 2, {{"Q", {{1}}}}, {});
  CHECK(encode(q1) == "01");

  Structure s = triangle_like();
  // Nine E-cells in lexicographic order, then k = 2 in two bits.
  CHECK(encode(s) == "010100000" "10");
  CHECK(decode(graph_vocab(), 3, encode(s)) == s);

  // Size one needs zero bits per constant.
  Structure one = Structure::empty(graph_vocab(), 1);
  CHECK(encode(one) == "0");
  CHECK(decode(graph_vocab(), 1, "0") == one);

  CHECK_THROWS_AS(decode(graph_vocab(), 3, "000"), Error);
}

TEST_CASE("encode and decode are inverse over a whole space") {
  StructureSpace space(graph_vocab(), 2);
  for (uint64_t i = 0; i < space.count(); ++i) {
    Structure s = space.at(i);
    CHECK(decode(graph_vocab(), 2, encode(s)) == s);
  }
}

TEST_CASE("binary words become structures with position 0 leftmost") {
  Structure s = string_to_structure("10");
  CHECK(s.size() == 2);
  CHECK(s.rel(0).test({0}));
  CHECK(!s.rel(0).test({1}));
  CHECK(structure_to_string(s) == "10");

  for (int len = 1; len <= 8; ++len) {
    for (uint64_t bits = 0; bits < (uint64_t{1} << len); ++bits) {
      std::string word;
      for (int i = 0; i < len; ++i) word += ((bits >> i) & 1) ? '1' : '0';
      CHECK(structure_to_string(string_to_structure(word)) == word);
    }
  }

  CHECK_THROWS_AS(string_to_structure(""), Error);
  CHECK_THROWS_AS(string_to_structure("012"), Error);
  CHECK_THROWS_AS(structure_to_string(triangle_like()), Error);
}

TEST_CASE("vocabulary names are labels, signatures are what match") {
  auto renamed = std::make_shared<const Vocabulary>(
      "other", graph_vocab()->relations(), graph_vocab()->constants());
  CHECK(renamed->same_signature(*graph_vocab()));
  CHECK(!graph_vocab()->same_signature(*string_vocab()));
  CHECK(graph_vocab()->relation_index("E") == 0);
  CHECK(graph_vocab()->relation_index("Q") == -1);
  CHECK(graph_vocab()->constant_index("k") == 0);

  // The numeric apparatus may not be redeclared.
  CHECK(is_reserved_symbol("suc"));
  CHECK(is_reserved_symbol("BIT"));
  CHECK(is_reserved_symbol("max"));
  CHECK_THROWS_AS(Vocabulary("v", {{"suc", 2}}, {}), Error);
  CHECK_THROWS_AS(Vocabulary("v", {{"R", 0}}, {}), Error);
  CHECK_THROWS_AS(Vocabulary("v", {{"R", 2}, {"R", 1}}, {}), Error);
}
