#include "fopkit/problems.hpp"

#include <algorithm>

#include "fopkit/errors.hpp"
#include "fopkit/eval.hpp"
#include "fopkit/formula_ops.hpp"
#include "fopkit/parse.hpp"

namespace fopkit {

bool Problem::member(const Structure& s) const {
  if (!s.vocab().same_signature(*vocab))
    fail(Errc::VocabularyMismatch, "structure is not over " + name + "'s vocabulary");
  if (oracle) return oracle(s);
  if (!sentence) fail(Errc::InvalidQuery, name + " has neither oracle nor sentence");
  return eval_so(s, elaborate(sentence));
}

VocabularyPtr graph_vocab() {
  static const VocabularyPtr v = std::make_shared<const Vocabulary>(
      "graph", std::vector<RelationSymbol>{{"E", 2}}, std::vector<std::string>{"k"});
  return v;
}

VocabularyPtr sgi_vocab() {
  static const VocabularyPtr v = std::make_shared<const Vocabulary>(
      "sgi", std::vector<RelationSymbol>{{"F", 2}, {"H", 2}},
      std::vector<std::string>{"k"});
  return v;
}

namespace {

// Subsets of {0..n-1} with the requested cardinality, as bitmasks.  Callers
// keep n small; the graph oracles are only certified to size 4.
template <typename Fn>
bool any_subset(int n, int cardinality, Fn&& accept) {
  if (cardinality < 0 || cardinality > n) return false;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != cardinality) continue;
    if (accept(mask)) return true;
  }
  return false;
}

bool independent_set(const Structure& s, int size) {
  const RelationTable& e = s.rel(0);
  return any_subset(s.size(), size, [&](unsigned mask) {
    for (int u = 0; u < s.size(); ++u) {
      if (!(mask & (1u << u))) continue;
      for (int v = 0; v < s.size(); ++v) {
        if (u == v || !(mask & (1u << v))) continue;
        if (e.test({u, v})) return false;
      }
    }
    return true;
  });
}

bool clique(const Structure& s, int size) {
  const RelationTable& e = s.rel(0);
  return any_subset(s.size(), size, [&](unsigned mask) {
    for (int u = 0; u < s.size(); ++u) {
      if (!(mask & (1u << u))) continue;
      for (int v = 0; v < s.size(); ++v) {
        if (u == v || !(mask & (1u << v))) continue;
        if (!e.test({u, v})) return false;
      }
    }
    return true;
  });
}

// Injective placements h of the k pattern positions into the universe with
// every pattern edge H(a,b), a != b, carried to a host edge F(h(a),h(b)).
// Pattern loops never constrain the placement.
bool embeds(const Structure& s, int k) {
  int n = s.size();
  if (k > n) return false;
  if (k == 0) return true;
  const RelationTable& f = s.rel(0);
  const RelationTable& h = s.rel(1);
  std::vector<int> map(k, 0);
  do {
    bool distinct = true;
    for (int a = 0; a < k && distinct; ++a)
      for (int b = a + 1; b < k && distinct; ++b)
        if (map[a] == map[b]) distinct = false;
    if (!distinct) continue;
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      for (int b = 0; b < k && ok; ++b)
        if (a != b && h.test({a, b}) && !f.test({map[a], map[b]})) ok = false;
    if (ok) return true;
  } while (next_tuple(map, n));
  return false;
}

int padded_prefix_ones(const Structure& s) {
  int ones = 0;
  for (int i = 0; i + 1 < s.size(); ++i)
    if (s.rel(0).test({i})) ++ones;
  return ones;
}

// Two implications spell the biconditional "T(y) holds exactly when the
// parity flips across Q(y)"; the grammar has no <-> connective.
const char* kParityStep =
    "((T(y) -> ((T(x) & !Q(y)) | (!T(x) & Q(y)))) & "
    "(((T(x) & !Q(y)) | (!T(x) & Q(y))) -> T(y)))";

std::string parity_sentence_text() {
  return std::string("EX2 T/1. (((T(0) -> Q(0)) & (Q(0) -> T(0))) & "
                     "((all x. all y. (suc(x,y) -> ") +
         kParityStep + ")) & T(max)))";
}

std::string parity_padded_sentence_text() {
  return std::string("EX2 T/1. (((T(0) -> Q(0)) & (Q(0) -> T(0))) & "
                     "((all x. all y. ((suc(x,y) & !(y = max)) -> ") +
         kParityStep + ")) & (ex z. (suc(z,max) & T(z)))))";
}

std::string threshold_sentence(const std::string& literal, Convention c) {
  std::string cmp = c == Convention::Verbatim ? "<=" : "<";
  return "EXINJ f. all x. all y. (!(x = y) & f(x) " + cmp + " k & f(y) " + cmp +
         " k -> " + literal + ")";
}

}  // namespace

Problem builtin_problem(const std::string& name, Convention convention) {
  Problem p;
  p.name = name;
  // Verbatim reads the bound f(x) <= k, so the selected set has k+1 members.
  int extra = convention == Convention::Verbatim ? 1 : 0;
  if (name == "IS") {
    p.vocab = graph_vocab();
    p.sentence = parse_formula(threshold_sentence("!E(x,y)", convention), *p.vocab, true);
    p.oracle = [extra](const Structure& s) {
      return independent_set(s, s.constant(0) + extra);
    };
    p.certified_size = 4;
  } else if (name == "CLIQUE") {
    p.vocab = graph_vocab();
    p.sentence = parse_formula(threshold_sentence("E(x,y)", convention), *p.vocab, true);
    p.oracle = [extra](const Structure& s) { return clique(s, s.constant(0) + extra); };
    p.certified_size = 4;
  } else if (name == "SUBGRAPHISO") {
    p.vocab = sgi_vocab();
    p.sentence = parse_formula(
        "EXINJ f. all x. all y. (!(x = y) & f(x) < k & f(y) < k -> "
        "(H(f(x),f(y)) -> F(x,y)))",
        *p.vocab, true);
    p.oracle = [](const Structure& s) { return embeds(s, s.constant(0)); };
    p.certified_size = 3;
  } else if (name == "PARITY") {
    p.vocab = string_vocab();
    p.sentence = parse_formula(parity_sentence_text(), *p.vocab, true);
    p.oracle = [](const Structure& s) { return s.rel(0).cardinality() % 2 == 1; };
    p.certified_size = 8;
  } else if (name == "PARITY_PADDED") {
    p.vocab = string_vocab();
    p.sentence = parse_formula(parity_padded_sentence_text(), *p.vocab, true);
    p.oracle = [](const Structure& s) {
      return s.size() >= 2 && padded_prefix_ones(s) % 2 == 1;
    };
    p.certified_size = 8;
  } else {
    fail(Errc::UnknownName, "no built-in problem named " + name);
  }
  return p;
}

Query builtin_query(const std::string& name) {
  if (name == "fop_complement") {
    return Query(graph_vocab(), graph_vocab(), 1, f_true(),
                 {parse_formula("!E(x1,x2)", *graph_vocab())},
                 {parse_formula("x1 = k", *graph_vocab())});
  }
  if (name == "fop_clique_to_sgi") {
    return Query(graph_vocab(), sgi_vocab(), 1, f_true(),
                 {parse_formula("E(x1,x2)", *graph_vocab()),
                  parse_formula("x1 < k & x2 < k", *graph_vocab())},
                 {parse_formula("x1 = k", *graph_vocab())});
  }
  if (name == "fop_padding") {
    const Vocabulary& s = *string_vocab();
    return Query(string_vocab(), string_vocab(), 2,
                 parse_formula("x1 = 0 | ((ex z. (suc(0,z) & x1 = z)) & x2 = 0)", s),
                 {parse_formula(
                     "(x1 = 0 & Q(x2)) | ((ex z. (suc(0,z) & x1 = z)) & x2 = 0)", s)},
                 {});
  }
  if (name == "query_sgi_back") {
    return Query(sgi_vocab(), graph_vocab(), 1, f_true(),
                 {parse_formula("F(x1,x2)", *sgi_vocab())},
                 {parse_formula("x1 = k", *sgi_vocab())});
  }
  if (name == "id_query") return identity_query(graph_vocab());
  fail(Errc::UnknownName, "no built-in query named " + name);
}

Formula builtin_characteristic(const std::string& query_name) {
  if (query_name == "fop_complement") return f_true();
  if (query_name == "fop_clique_to_sgi")
    return parse_formula("all x. all y. (x < k & y < k -> F(x,y))", *sgi_vocab(), true);
  fail(Errc::UnknownName, "no characteristic sentence shipped for " + query_name);
}

std::vector<std::string> builtin_problem_names() {
  return {"IS", "CLIQUE", "SUBGRAPHISO", "PARITY", "PARITY_PADDED"};
}

std::vector<std::string> builtin_query_names() {
  return {"fop_complement", "fop_clique_to_sgi", "fop_padding", "query_sgi_back",
          "id_query"};
}

}  // namespace fopkit
