#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "fopkit/errors.hpp"
#include "fopkit/formula.hpp"
#include "fopkit/problems.hpp"
#include "fopkit/query.hpp"
#include "fopkit/structure.hpp"
#include "fopkit/textio.hpp"

using namespace fopkit;

TEST_CASE("structure blocks parse with comments and loose spacing") {
  Structure s = parse_structure_text(
      "# a triangle-ish graph\n"
      "struct A : graph {\n"
      "  size = 3;    # three vertices\n"
      "  E = { (0,1) , (1,0) };\n"
      "  k = 2;\n"
      "}\n");
  CHECK(s.size() == 3);
  CHECK(s.rel(0).test({0, 1}));
  CHECK(s.rel(0).test({1, 0}));
  CHECK(!s.rel(0).test({0, 0}));
  CHECK(s.constant(0) == 2);
  CHECK(write_structure("A", s) ==
        "struct A : graph {\n  size = 3;\n  E = {(0,1),(1,0)};\n  k = 2;\n}\n");
  CHECK(parse_structure_text(write_structure("A", s)) == s);
}

TEST_CASE("file-local vocabularies support the arity-one element shorthand") {
  TextFile f = parse_text(
      "vocab colored { rel C/1; rel E/2; const root; }\n"
      "struct G : colored { size = 2; C = {1}; E = {}; root = 0; }\n");
  REQUIRE(f.vocabularies.size() == 1);
  REQUIRE(f.structures.size() == 1);
  const Structure& g = f.structures[0].second;
  CHECK(!g.rel(0).test({0}));
  CHECK(g.rel(0).test({1}));
  CHECK(g.rel(1).cardinality() == 0);
  std::string v = write_vocabulary(f.vocabularies[0]);
  CHECK(v == "vocab colored {\n  rel C/1;\n  rel E/2;\n  const root;\n}\n");
  CHECK(parse_vocabulary_text(v)->same_signature(*f.vocabularies[0]));
}

TEST_CASE("query blocks parse and have a canonical written form") {
  Query q = parse_query_text(
      "query comp : graph -> graph arity 1 {\n"
      "  universe: true;\n"
      "  E(x1,y1): !E(x1,y1);\n"
      "  k: x1 = k;\n"
      "}\n");
  CHECK(q.arity() == 1);
  CHECK(equal(q.relation_formula(0),
              builtin_query("fop_complement").relation_formula(0)));
  std::string w = write_query("comp", q);
  Query back = parse_query_text(w);
  CHECK(write_query("comp", back) == w);  // canonical form is a fixed point
  CHECK(equal(back.universe(), q.universe()));
}

TEST_CASE("head parameters may permute the canonical names") {
  Query q = parse_query_text(
      "query flip : graph -> graph arity 1 {\n"
      "  universe: true;\n"
      "  E(x2,x1): E(x1,x2);\n"  // reversed-edge query via swapped heads
      "  k: x1 = k;\n"
      "}\n");
  // flip's output has an edge (a,b) exactly when the input has (b,a).
  CHECK(print_formula(q.relation_formula(0)) == "E(x2,x1)");
  Structure a(graph_vocab(), 2, {{"E", {{0, 1}}}}, {{"k", 0}});
  CHECK(apply_query(q, a).rel(0).tuples() == std::vector<std::vector<int>>{{1, 0}});
}

TEST_CASE("a file can carry vocabulary, structure and query together") {
  TextFile f = parse_text(
      "vocab pair { rel R/2; }\n"
      "struct S : pair { size = 2; R = {(0,1)}; }\n"
      "query to_string : pair -> string arity 1 {\n"
      "  universe: true;\n"
      "  Q(u): ex w. R(u,w);\n"
      "}\n");
  REQUIRE(f.queries.size() == 1);
  REQUIRE(f.structures.size() == 1);
  Structure img = apply_query(f.queries[0].second, f.structures[0].second);
  CHECK(structure_to_string(img) == "10");
}

TEST_CASE("single-block parsers reject files of the wrong shape") {
  CHECK_THROWS_AS(parse_structure_text("vocab v { rel R/1; }"), Error);
  CHECK_THROWS_AS(parse_query_text(""), Error);
  CHECK_THROWS_AS(
      parse_structure_text("struct A : graph { size = 1; E = {}; k = 0; }\n"
                           "struct B : graph { size = 1; E = {}; k = 0; }"),
      Error);
  // Helper vocabularies are allowed alongside the requested block.
  Structure s = parse_structure_text(
      "vocab v { const c; }\nstruct A : v { size = 2; c = 1; }");
  CHECK(s.constant(0) == 1);
}

TEST_CASE("malformed blocks fail with a specific error code") {
  struct Case {
    const char* text;
    Errc code;
  };
  const Case cases[] = {
      {"struct A : nosuch { size = 1; }", Errc::UnknownName},
      {"struct A : graph { E = {}; size = 1; k = 0; }", Errc::SyntaxError},
      {"struct A : graph { size = 2; E = {}; E = {}; k = 0; }", Errc::SyntaxError},
      {"struct A : graph { size = 2; E = {}; }", Errc::MissingInterpretation},
      {"struct A : graph { size = 2; E = {(0,1,2)}; k = 0; }", Errc::SyntaxError},
      {"struct A : graph { size = 2; E = {}; k = 5; }", Errc::OutOfRange},
      {"struct A : graph { size = 0; E = {}; k = 0; }", Errc::EmptyUniverse},
      {"vocab v { rel R/2; } vocab v { rel R/2; }", Errc::SyntaxError},
      {"query q : graph -> graph arity 1 { universe: true; E(x1): !E(x1,x2); k: x1 = k; }",
       Errc::SyntaxError},
      {"query q : graph -> graph arity 1 { universe: true; E(k,y): !E(k,y); k: x1 = k; }",
       Errc::SyntaxError},
      {"query q : graph -> graph arity 1 { universe: true; E(a,b): E(a,c); k: x1 = k; }",
       Errc::SyntaxError},
      {"query q : graph -> graph arity 1 { universe: true; E(a,a): E(a,a); k: x1 = k; }",
       Errc::SyntaxError},
      {"query q : graph -> graph arity 1 { universe: tru; E(x1,x2): !E(x1,x2); k: x1 = k; }",
       Errc::SyntaxError},
      {"query q : graph -> graph arity 1 { E(x1,x2): !E(x1,x2); k: x1 = k; universe: true; }",
       Errc::SyntaxError},
      {"struct _A : graph { size = 1; E = {}; k = 0; }", Errc::SyntaxError},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    bool right_code = false;
    try {
      parse_text(c.text);
    } catch (const Error& e) {
      right_code = e.code() == c.code;
      if (!right_code) MESSAGE("wrong code: " << e.what());
    }
    CHECK(right_code);
  }
}

TEST_CASE("messages carry positions and block context") {
  try {
    parse_text("struct A : graph {\n  size = 2;\n  E = {(0,)};\n  k = 0;\n}\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_text("query q : graph -> string arity 1 { universe: true; Q(u): E(u u); }");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("query q, relation Q") != std::string::npos);
  }
}

TEST_CASE("builtin queries survive the writer and parser unchanged") {
  for (const auto& name : builtin_query_names()) {
    Query q = builtin_query(name);
    std::string w = write_query(name, q);
    Query back = parse_query_text(w);
    CHECK(write_query(name, back) == w);
    CHECK(equal(back.universe(), q.universe()));
    for (size_t i = 0; i < q.target()->relations().size(); ++i)
      CHECK(equal(back.relation_formula(static_cast<int>(i)),
                  q.relation_formula(static_cast<int>(i))));
    for (size_t j = 0; j < q.target()->constants().size(); ++j)
      CHECK(equal(back.constant_formula(static_cast<int>(j)),
                  q.constant_formula(static_cast<int>(j))));
  }
}

TEST_CASE("structures written for every builtin vocabulary read back equal") {
  for (const auto& v : {graph_vocab(), sgi_vocab(), string_vocab()}) {
    for_each_structure(v, 2, [&](const Structure& s) {
      CHECK(parse_structure_text(write_structure("X", s)) == s);
      return true;
    });
  }
}
