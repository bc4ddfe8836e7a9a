#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "fopkit/errors.hpp"
#include "fopkit/eval.hpp"
#include "fopkit/formula_ops.hpp"
#include "fopkit/problems.hpp"
#include "fopkit/structure.hpp"
#include "fopkit/verify.hpp"

using namespace fopkit;

namespace {

// Exhaustively compares the sentence against the oracle on every structure
// up to the bound.
void certify(const Problem& p, int max_size) {
  Formula sentence = elaborate(p.sentence);
  for (int n = 1; n <= max_size; ++n) {
    uint64_t mismatches = 0;
    for_each_structure(p.vocab, n, [&](const Structure& s) {
      if (eval_so(s, sentence) != p.oracle(s)) ++mismatches;
      return true;
    });
    CAPTURE(p.name);
    CAPTURE(n);
    CHECK(mismatches == 0);
  }
}

Structure graph2(std::vector<std::vector<int>> edges, int k) {
  return Structure(graph_vocab(), 2, {{"E", std::move(edges)}}, {{"k", k}});
}

}  // namespace

TEST_CASE("shipped problems expose their vocabularies and names") {
  auto names = builtin_problem_names();
  CHECK(names == std::vector<std::string>{"IS", "CLIQUE", "SUBGRAPHISO", "PARITY",
                                          "PARITY_PADDED"});
  for (const auto& name : names) {
    Problem p = builtin_problem(name);
    CHECK(p.name == name);
    CHECK(p.certified_size >= 3);
    CHECK(is_sentence(p.sentence));
  }
  CHECK(builtin_problem("IS").vocab->same_signature(*graph_vocab()));
  CHECK(builtin_problem("SUBGRAPHISO").vocab->same_signature(*sgi_vocab()));
  CHECK(builtin_problem("PARITY").vocab->same_signature(*string_vocab()));
  CHECK_THROWS_AS(builtin_problem("NOPE"), Error);

  auto queries = builtin_query_names();
  CHECK(std::find(queries.begin(), queries.end(), "fop_complement") != queries.end());
  CHECK_THROWS_AS(builtin_query("NOPE"), Error);
  CHECK_THROWS_AS(builtin_characteristic("fop_padding"), Error);
}

TEST_CASE("sentences match oracles everywhere below the certified size") {
  certify(builtin_problem("IS"), 3);
  certify(builtin_problem("CLIQUE"), 3);
  certify(builtin_problem("IS", Convention::Strict), 3);
  certify(builtin_problem("CLIQUE", Convention::Strict), 3);
  certify(builtin_problem("PARITY"), 8);
  certify(builtin_problem("PARITY_PADDED"), 8);
}

TEST_CASE("pattern containment sentences match their oracle on small hosts") {
  certify(builtin_problem("SUBGRAPHISO"), 3);
  certify(builtin_problem("SUBGRAPHISO", Convention::Strict), 3);
}

TEST_CASE("the two threshold conventions differ exactly at the boundary") {
  // Two vertices, no edges, threshold constant 1.
  Structure g = graph2({}, 1);
  // Reading the constant inclusively asks for a 2-element independent set,
  // which exists here; the strict reading asks for 1 element.
  CHECK(builtin_problem("IS", Convention::Verbatim).member(g));
  CHECK(builtin_problem("IS", Convention::Strict).member(g));
  Structure full = graph2({{0, 1}, {1, 0}}, 1);
  CHECK(!builtin_problem("IS", Convention::Verbatim).member(full));
  CHECK(builtin_problem("IS", Convention::Strict).member(full));
  CHECK(!builtin_problem("CLIQUE", Convention::Verbatim).member(graph2({}, 1)));
  CHECK(builtin_problem("CLIQUE", Convention::Strict).member(graph2({}, 1)));

  // The pattern-containment problem reads its threshold strictly in both
  // conventions, so the two agree everywhere.
  Problem v = builtin_problem("SUBGRAPHISO", Convention::Verbatim);
  Problem s = builtin_problem("SUBGRAPHISO", Convention::Strict);
  for_each_structure(sgi_vocab(), 2, [&](const Structure& a) {
    CHECK(v.member(a) == s.member(a));
    return true;
  });
}

TEST_CASE("membership uses the oracle and falls back to the sentence") {
  Problem p = builtin_problem("IS");
  for_each_structure(graph_vocab(), 3, [&](const Structure& s) {
    CHECK(p.member(s) == p.oracle(s));
    return true;
  });
  // A problem without an oracle still answers through its sentence.
  Problem bare = p;
  bare.oracle = nullptr;
  Structure g = graph2({}, 1);
  CHECK(bare.member(g) == p.oracle(g));
}

TEST_CASE("parity counts ones and ignores padding zeros") {
  Problem parity = builtin_problem("PARITY");
  CHECK(parity.member(string_to_structure("1")));
  CHECK(!parity.member(string_to_structure("0")));
  CHECK(parity.member(string_to_structure("100")));
  CHECK(!parity.member(string_to_structure("110")));
  CHECK(parity.member(string_to_structure("111")));

  Problem padded = builtin_problem("PARITY_PADDED");
  CHECK(padded.member(string_to_structure("11")));   // "1" padded once
  CHECK(!padded.member(string_to_structure("01")));  // "0" padded once
  // Appending the pad letter preserves classification: the padded problem
  // asks about the prefix before the final one.
  for (const char* w : {"10", "11", "101", "110"}) {
    std::string padded_word = std::string(w) + "1";
    CHECK(parity.member(string_to_structure(w)) ==
          padded.member(string_to_structure(padded_word)));
  }
}

TEST_CASE("classification agreement is an equivalence on structures") {
  Problem is = builtin_problem("IS");
  std::vector<Structure> pool;
  for_each_structure(graph_vocab(), 2, [&](const Structure& s) {
    pool.push_back(s);
    return true;
  });
  for (const Structure& a : pool) {
    CHECK(cong(is, a, a));
    for (const Structure& b : pool) {
      CHECK(cong(is, a, b) == cong(is, b, a));
      // Related structures are exactly those on the same side of the problem.
      CHECK(cong(is, a, b) == (is.member(a) == is.member(b)));
    }
  }
}

TEST_CASE("a correct reduction is verified across every small structure") {
  Query comp = builtin_query("fop_complement");
  ReductionReport rep =
      verify_reduction(comp, builtin_problem("IS"), builtin_problem("CLIQUE"), 1, 3);
  CHECK(rep.verified);
  CHECK(!rep.counterexample.has_value());
  CHECK(rep.min_size == 1);
  CHECK(rep.max_size == 3);
  CHECK(rep.structures_checked == 1570);
  CHECK(rep.seconds >= 0.0);
}

TEST_CASE("a wrong reduction is refuted by the first disagreeing structure") {
  Query id = builtin_query("id_query");
  ReductionReport rep =
      verify_reduction(id, builtin_problem("IS"), builtin_problem("CLIQUE"), 1, 2);
  CHECK(!rep.verified);
  REQUIRE(rep.counterexample.has_value());
  // The empty two-vertex graph with threshold one: an independent pair
  // exists, a two-clique does not.
  CHECK(rep.counterexample->size() == 2);
  CHECK(encode(*rep.counterexample) == "00001");
  CHECK(rep.structures_checked == 4);
  CHECK(!rep.note.empty());
}

TEST_CASE("sweep results do not depend on the worker count") {
  Query id = builtin_query("id_query");
  SweepOptions three;
  three.jobs = 3;
  ReductionReport a =
      verify_reduction(id, builtin_problem("IS"), builtin_problem("CLIQUE"), 1, 2);
  ReductionReport b =
      verify_reduction(id, builtin_problem("IS"), builtin_problem("CLIQUE"), 1, 2, three);
  CHECK(a.verified == b.verified);
  CHECK(a.structures_checked == b.structures_checked);
  REQUIRE(b.counterexample.has_value());
  CHECK(*a.counterexample == *b.counterexample);
  CHECK(a.note == b.note);

  ReductionReport ok1 = verify_reduction(builtin_query("fop_complement"),
                                         builtin_problem("IS"),
                                         builtin_problem("CLIQUE"), 1, 3);
  ReductionReport ok3 = verify_reduction(builtin_query("fop_complement"),
                                         builtin_problem("IS"),
                                         builtin_problem("CLIQUE"), 1, 3, three);
  CHECK(ok1.verified == ok3.verified);
  CHECK(ok1.structures_checked == ok3.structures_checked);
}

TEST_CASE("size ranges are validated before sweeping") {
  Query comp = builtin_query("fop_complement");
  Problem is = builtin_problem("IS");
  Problem cl = builtin_problem("CLIQUE");
  CHECK_THROWS_AS(verify_reduction(comp, is, cl, 0, 2), Error);
  CHECK_THROWS_AS(verify_reduction(comp, is, cl, 3, 2), Error);
}

TEST_CASE("round trips through a back query keep the membership class") {
  Query fwd = builtin_query("fop_clique_to_sgi");
  Query back = builtin_query("query_sgi_back");
  ReductionReport rep =
      verify_condition_c(back, fwd, builtin_problem("CLIQUE", Convention::Strict), 1, 3);
  CHECK(rep.verified);
  CHECK(rep.structures_checked == 1570);
}

TEST_CASE("a decomposition assembles and verifies on small structures") {
  Query comp = builtin_query("fop_complement");
  Decomposition d = build_decomposition(comp, comp, builtin_problem("IS").sentence,
                                        f_false(), f_true());
  CHECK(is_sentence(d.assembled));
  CHECK(contains_so(d.assembled));
  ReductionReport rep = verify_decomposition(d, builtin_problem("CLIQUE"), 1, 3);
  CHECK(rep.verified);
  CHECK(rep.structures_checked == 1570);
}

TEST_CASE("a decomposition with a wrong characteristic is refuted") {
  Query fwd = builtin_query("fop_clique_to_sgi");
  Query back = builtin_query("query_sgi_back");
  Problem target = builtin_problem("SUBGRAPHISO", Convention::Strict);
  Formula psi = builtin_problem("CLIQUE", Convention::Strict).sentence;
  Formula beta = builtin_characteristic("fop_clique_to_sgi");

  // The closure sentence admits structures outside the image; with the
  // trivial residue the assembly misclassifies them.  Disagreements start
  // at size 3: below that the strict thresholds make both sides vacuous.
  Decomposition broken = build_decomposition(fwd, back, psi, f_false(), beta);
  ReductionReport bad = verify_decomposition(broken, target, 3, 3);
  CHECK(!bad.verified);
  REQUIRE(bad.counterexample.has_value());
  CHECK(bad.counterexample->size() == 3);
}
