#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Acceptance battery: one test case per shipped guarantee, each printing a
// single [criterion N] PASS/FAIL line.  Time limits are asserted in code so
// a regression in the enumeration fast paths fails loudly.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fopkit/dual.hpp"
#include "fopkit/errors.hpp"
#include "fopkit/eval.hpp"
#include "fopkit/formula_ops.hpp"
#include "fopkit/parse.hpp"
#include "fopkit/problems.hpp"
#include "fopkit/query.hpp"
#include "fopkit/structure.hpp"
#include "fopkit/textio.hpp"
#include "fopkit/verify.hpp"
#include "random_formulas.hpp"

using namespace fopkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Prints the verdict line and fails the test case afterwards if needed, so
// the line is always emitted exactly once per criterion.
void conclude(int criterion, bool ok, double secs, const std::string& note = "") {
  std::printf("[criterion %d] %s (%.2fs)%s%s\n", criterion, ok ? "PASS" : "FAIL", secs,
              note.empty() ? "" : " ", note.c_str());
  std::fflush(stdout);
  REQUIRE_MESSAGE(ok, note);
}

uint64_t mismatch_sweep(const Problem& p, int max_size) {
  Formula sentence = elaborate(p.sentence);
  uint64_t bad = 0;
  for (int n = 1; n <= max_size; ++n) {
    for_each_structure(p.vocab, n, [&](const Structure& s) {
      if (eval_so(s, sentence) != p.oracle(s)) ++bad;
      return true;
    });
  }
  return bad;
}

// The shared formula battery for the dual law: sentences over the graph
// vocabulary, which is the target of all three audited queries.
std::vector<Formula> graph_battery() {
  std::vector<Formula> out = {builtin_problem("IS").sentence,
                              builtin_problem("CLIQUE").sentence};
  for (const char* text : {
           "ex x. E(x,x)",
           "all x. all y. E(x,y) -> E(y,x)",
           "E(k,k)",
           "ex x. E(x,k) & x < k",
           "all x. x <= k -> E(x,x)",
           "ex x. ex y. !(x = y) & E(x,y) & E(y,x)",
           "EX2 S/1. (ex x. S(x)) & all x. all y. S(x) & S(y) -> !E(x,y)",
           "all x. (ex y. E(x,y)) -> E(x,x) | ex z. E(z,x)",
           "k = 0 | ex x. 0 < x & E(0,x)",
           "ex x. x = max & (E(x,x) -> E(max,max))",
       }) {
    out.push_back(parse_formula(text, *graph_vocab(), true));
  }
  return out;
}

// Number of (structure, formula) pairs where the syntactic rewrite and the
// image-side evaluation disagree.
uint64_t dual_law_mismatches(const Query& q, const std::vector<Formula>& battery,
                             int max_size) {
  uint64_t bad = 0;
  std::vector<Formula> thetas, duals;
  for (const Formula& theta : battery) {
    Formula te = elaborate(theta);
    thetas.push_back(te);
    duals.push_back(elaborate(syntactic_dual(q, te).formula));
  }
  for (int n = 1; n <= max_size; ++n) {
    for_each_structure(q.source(), n, [&](const Structure& a) {
      for (size_t i = 0; i < thetas.size(); ++i) {
        bool via_rewrite = eval_so(a, duals[i]);
        bool via_image = semantic_dual_eval(q, thetas[i], a);
        if (via_rewrite != via_image) ++bad;
      }
      return true;
    });
  }
  return bad;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(FOPKIT_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("criterion 1: sentences match the combinatorial oracles everywhere") {
  auto start = Clock::now();
  uint64_t bad_is = mismatch_sweep(builtin_problem("IS"), 4);
  uint64_t bad_cl = mismatch_sweep(builtin_problem("CLIQUE"), 4);
  double secs = seconds_since(start);
  bool ok = bad_is == 0 && bad_cl == 0 && secs < 120.0;
  std::string note;
  if (bad_is || bad_cl)
    note = std::to_string(bad_is) + "+" + std::to_string(bad_cl) + " mismatches";
  else if (secs >= 120.0)
    note = "over the 120s budget";
  conclude(1, ok, secs, note);
}

TEST_CASE("criterion 2: the rewrite and the image evaluation always agree") {
  auto start = Clock::now();
  std::vector<Formula> battery = graph_battery();
  REQUIRE(battery.size() >= 10);
  uint64_t bad = 0;
  bad += dual_law_mismatches(builtin_query("fop_complement"), battery, 3);
  bad += dual_law_mismatches(builtin_query("id_query"), battery, 3);
  bad += dual_law_mismatches(builtin_query("query_sgi_back"), battery, 3);
  double secs = seconds_since(start);
  conclude(2, bad == 0, secs,
           bad ? std::to_string(bad) + " disagreements" : "");
}

TEST_CASE("criterion 3: complementing independent sets lands exactly on cliques") {
  auto start = Clock::now();
  Query comp = builtin_query("fop_complement");
  Formula psi_is = elaborate(builtin_problem("IS").sentence);
  Formula psi_cl = elaborate(builtin_problem("CLIQUE").sentence);
  bool structural = equal(simplify(syntactic_dual(comp, psi_is).formula), psi_cl);

  Decomposition d = build_decomposition(comp, comp, builtin_problem("IS").sentence,
                                        f_false(), builtin_characteristic("fop_complement"));
  ReductionReport rep = verify_decomposition(d, builtin_problem("CLIQUE"), 1, 4);
  double secs = seconds_since(start);
  bool ok = structural && rep.verified && rep.structures_checked == 263714;
  std::string note;
  if (!structural) note = "rewritten sentence is not the clique sentence";
  else if (!rep.verified) note = "decomposition refuted";
  conclude(3, ok, secs, note);
}

TEST_CASE("criterion 4: the pattern-containment chain verifies under strict thresholds") {
  auto start = Clock::now();
  Query fwd = builtin_query("fop_clique_to_sgi");
  Query back = builtin_query("query_sgi_back");
  Problem clique = builtin_problem("CLIQUE", Convention::Strict);
  Problem sgi = builtin_problem("SUBGRAPHISO", Convention::Strict);

  ReductionReport red = verify_reduction(fwd, clique, sgi, 1, 3);
  ReductionReport cond = verify_condition_c(back, fwd, clique, 1, 3);
  Decomposition d = build_decomposition(fwd, back, clique.sentence, sgi.sentence,
                                        builtin_characteristic("fop_clique_to_sgi"));
  ReductionReport dec = verify_decomposition(d, sgi, 1, 3);
  double secs = seconds_since(start);

  auto fast_start = Clock::now();
  RunResult fast = run_cli("--json verify decomposition --case subgraphiso --fast");
  double fast_secs = seconds_since(fast_start);

  bool ok = red.verified && cond.verified && dec.verified &&
            dec.structures_checked == 786948 && secs < 600.0 &&
            fast.exit_code == 0 && fast_secs < 10.0;
  std::string note;
  if (!red.verified) note = "reduction refuted";
  else if (!cond.verified) note = "round trip broke a membership class";
  else if (!dec.verified) note = "decomposition refuted";
  else if (secs >= 600.0) note = "over the 600s budget";
  else if (fast.exit_code != 0) note = "fast profile failed";
  else if (fast_secs >= 10.0) note = "fast profile over the 10s budget";
  conclude(4, ok, secs + fast_secs, note);
}

TEST_CASE("criterion 5: complementing twice reproduces every graph") {
  auto start = Clock::now();
  Query comp = builtin_query("fop_complement");
  uint64_t bad = 0;
  for (int n = 1; n <= 4; ++n) {
    for_each_structure(graph_vocab(), n, [&](const Structure& a) {
      if (!(apply_query(comp, apply_query(comp, a)) == a)) ++bad;
      return true;
    });
  }
  double secs = seconds_since(start);
  conclude(5, bad == 0, secs, bad ? std::to_string(bad) + " fixed-point failures" : "");
}

TEST_CASE("criterion 6: padding appends one symbol and splits the target words") {
  auto start = Clock::now();
  Query pad = builtin_query("fop_padding");
  bool ok = true;
  std::string note;

  // Every word of length 2..8 maps to itself with a one appended; collect
  // the image words while at it.
  std::set<std::string> image;
  for (int len = 2; len <= 8 && ok; ++len) {
    for (uint64_t bits = 0; bits < (uint64_t{1} << len); ++bits) {
      std::string w;
      for (int i = 0; i < len; ++i) w += ((bits >> i) & 1) ? '1' : '0';
      std::string img = structure_to_string(apply_query(pad, string_to_structure(w)));
      if (img != w + "1") {
        ok = false;
        note = "padding mapped " + w + " to " + img;
        break;
      }
      image.insert(img);
    }
  }

  if (ok) {
    InjectivityReport inj = check_injective(pad, 2, 8);
    if (!inj.injective || inj.inputs_checked != 508) {
      ok = false;
      note = "padding is not injective on lengths 2..8";
    }
  }

  if (ok) {
    ReductionReport red =
        verify_reduction(pad, builtin_problem("PARITY"), builtin_problem("PARITY_PADDED"), 2, 8);
    if (!red.verified) {
      ok = false;
      note = "the padded problem disagreed on " + encode(*red.counterexample);
    }
  }

  // Exactly one of the two one-letter extensions of any word is reachable.
  if (ok) {
    for (int len = 2; len <= 8 && ok; ++len) {
      for (uint64_t bits = 0; bits < (uint64_t{1} << len); ++bits) {
        std::string w;
        for (int i = 0; i < len; ++i) w += ((bits >> i) & 1) ? '1' : '0';
        bool one = image.count(w + "1") > 0;
        bool zero = image.count(w + "0") > 0;
        if (!(one && !zero)) {
          ok = false;
          note = "extension split failed at " + w;
          break;
        }
      }
    }
  }

  // Spot-check the set-based bookkeeping against the brute-force search.
  if (ok) {
    auto pre = image_membership(pad, string_to_structure("1011"));
    ok = pre.has_value() && structure_to_string(*pre) == "101" &&
         !image_membership(pad, string_to_structure("1010")).has_value();
    if (!ok) note = "preimage search disagreed with the image set";
  }

  double secs = seconds_since(start);
  if (ok && secs >= 5.0) {
    ok = false;
    note = "over the 5s budget";
  }
  conclude(6, ok, secs, note);
}

TEST_CASE("criterion 7: image characterizations get a definitive verdict") {
  auto start = Clock::now();
  Query comp = builtin_query("fop_complement");
  CharacteristicReport comp_rep =
      verify_characteristic(builtin_characteristic("fop_complement"), comp, 3);

  Query fwd = builtin_query("fop_clique_to_sgi");
  CharacteristicReport sgi_rep =
      verify_characteristic(builtin_characteristic("fop_clique_to_sgi"), fwd, 3);
  double secs = seconds_since(start);

  bool definitive = sgi_rep.verified != sgi_rep.counterexample.has_value();
  // The closure sentence overshoots the image: the reflexive one-element
  // host satisfies it but is reachable from no graph.  This refutation is
  // the expected, recorded outcome.
  bool refuted_as_recorded = !sgi_rep.verified && sgi_rep.counterexample.has_value() &&
                             encode(*sgi_rep.counterexample) == "01" &&
                             sgi_rep.counterexample_satisfies_sentence &&
                             !sgi_rep.counterexample_in_image;
  bool ok = comp_rep.verified && definitive && refuted_as_recorded;
  std::string note = ok ? "complement verified; containment closure refuted at size 1"
                        : "unexpected characterization verdict";
  conclude(7, ok, secs, note);
}

TEST_CASE("criterion 8: printing and reparsing is the identity on formulas") {
  auto start = Clock::now();
  uint64_t bad = 0;

  std::mt19937 rng(1729);
  const Vocabulary& mixed = *testgen::mixed_vocab();
  for (int i = 0; i < 1000; ++i) {
    Formula f = testgen::random_formula(rng, 1 + i % 6);
    if (!equal(parse_formula(print_formula(f), mixed), f)) ++bad;
  }

  for (const std::string& name : builtin_problem_names()) {
    for (Convention conv : {Convention::Verbatim, Convention::Strict}) {
      Problem p = builtin_problem(name, conv);
      if (!equal(parse_formula(print_formula(p.sentence), *p.vocab), p.sentence)) ++bad;
    }
  }
  for (const std::string& name : builtin_query_names()) {
    Query q = builtin_query(name);
    const Vocabulary& v = *q.source();
    if (!equal(parse_formula(print_formula(q.universe()), v), q.universe())) ++bad;
    for (size_t i = 0; i < q.target()->relations().size(); ++i) {
      Formula f = q.relation_formula(static_cast<int>(i));
      if (!equal(parse_formula(print_formula(f), v), f)) ++bad;
    }
    for (size_t j = 0; j < q.target()->constants().size(); ++j) {
      Formula f = q.constant_formula(static_cast<int>(j));
      if (!equal(parse_formula(print_formula(f), v), f)) ++bad;
    }
  }
  for (const char* name : {"fop_complement", "fop_clique_to_sgi"}) {
    Formula beta = builtin_characteristic(name);
    const Vocabulary& v = *builtin_query(name).target();
    if (!equal(parse_formula(print_formula(beta), v), beta)) ++bad;
  }

  double secs = seconds_since(start);
  conclude(8, bad == 0, secs, bad ? std::to_string(bad) + " round-trip failures" : "");
}

TEST_CASE("criterion 9: numeric sentences depend on nothing but the size") {
  auto start = Clock::now();

  // Hand-rolled numeric sentences plus the numeric universe formulas of the
  // shipped queries, universally closed.
  std::vector<std::string> corpus = {
      "all x. x <= max",
      "ex x. all y. x <= y",
      "all x. all y. suc(x,y) -> x < y & !(ex z. x < z & z < y)",
      "ex x. BIT(x,0)",
      "all x. all y. x < y -> ex z. suc(x,z)",
      "ex x. x = max & !BIT(x,0)",
      "all x. all y. BIT(x,y) -> !(x = 0)",
  };

  // The corpus vocabularies are the two whose structure spaces stay
  // enumerable through size 4; each query universe is attached to the
  // corpus vocabulary its source matches.
  std::vector<VocabularyPtr> vocabs = {graph_vocab(), string_vocab()};
  std::vector<std::vector<Formula>> per_vocab(vocabs.size());
  for (size_t i = 0; i < vocabs.size(); ++i) {
    for (const std::string& text : corpus)
      per_vocab[i].push_back(parse_formula(text, *vocabs[i], true));
  }
  int closed_universes = 0;
  for (const std::string& name : builtin_query_names()) {
    Query q = builtin_query(name);
    Formula uni = q.universe();
    if (!is_numerical(uni)) continue;
    for (const std::string& var : free_vars(uni).fo) uni = f_forall(var, uni);
    for (size_t i = 0; i < vocabs.size(); ++i) {
      if (!vocabs[i]->same_signature(*q.source())) continue;
      per_vocab[i].push_back(uni);
      ++closed_universes;
      break;
    }
  }

  uint64_t bad = 0;
  for (size_t i = 0; i < vocabs.size(); ++i) {
    for (int n = 1; n <= 4; ++n) {
      Structure empty = Structure::empty(vocabs[i], n);
      std::vector<bool> reference;
      for (const Formula& f : per_vocab[i]) reference.push_back(eval_so(empty, f));
      for_each_structure(vocabs[i], n, [&](const Structure& s) {
        for (size_t j = 0; j < per_vocab[i].size(); ++j)
          if (eval_so(s, per_vocab[i][j]) != reference[j]) ++bad;
        return true;
      });
    }
  }
  double secs = seconds_since(start);
  bool ok = bad == 0 && closed_universes >= 2;
  conclude(9, ok, secs,
           bad ? std::to_string(bad) + " size-dependence violations" : "");
}
