// Command-line front end: evaluate sentences on structures, apply queries,
// rewrite sentences through queries, and run the exhaustive verifiers.
//
// Exit codes: 0 verified / true, 1 counterexample / false, 2 error.  The
// --json flag switches stdout to a single machine-readable report object.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fopkit/dual.hpp"
#include "fopkit/errors.hpp"
#include "fopkit/eval.hpp"
#include "fopkit/formula.hpp"
#include "fopkit/formula_ops.hpp"
#include "fopkit/parse.hpp"
#include "fopkit/problems.hpp"
#include "fopkit/query.hpp"
#include "fopkit/structure.hpp"
#include "fopkit/textio.hpp"
#include "fopkit/verify.hpp"

using nlohmann::json;
using namespace fopkit;

namespace {

constexpr const char* kSchema = "fopkit-report/1";

struct Global {
  bool json = false;
  int jobs = 1;
  std::string convention = "verbatim";
  EvalOptions eval;
};

Convention convention_of(const Global& g) {
  return g.convention == "strict" ? Convention::Strict : Convention::Verbatim;
}

SweepOptions sweep_options(const Global& g) {
  SweepOptions opt;
  opt.jobs = g.jobs;
  opt.eval = g.eval;
  return opt;
}

std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::pair<std::string, Structure> load_structure_file(const std::string& path) {
  TextFile f = parse_text(load_file(path));
  if (f.structures.size() != 1 || !f.queries.empty())
    fail(Errc::SyntaxError, path + ": expected exactly one struct block");
  return f.structures[0];
}

// --struct FILE or --string BITS; the returned name labels written output.
std::pair<std::string, Structure> input_structure(const std::string& struct_file,
                                                  const std::string& word) {
  if (!struct_file.empty()) return load_structure_file(struct_file);
  return {"image", string_to_structure(word)};
}

// Accepts a built-in query name or a file path.
Query load_query(const std::string& name_or_path) {
  for (const auto& n : builtin_query_names())
    if (n == name_or_path) return builtin_query(n);
  return parse_query_text(load_file(name_or_path));
}

bool is_builtin_problem(const std::string& name) {
  for (const auto& n : builtin_problem_names())
    if (n == name) return true;
  return false;
}

bool is_string_signature(const Structure& s) {
  return s.vocab().same_signature(*string_vocab());
}

// Structures print as canonical blocks; words additionally in bit form.
void describe_structure(json& obj, const std::string& name, const Structure& s) {
  obj["structure"] = write_structure(name, s);
  if (is_string_signature(s)) obj["word"] = structure_to_string(s);
}

void print_structure(std::ostream& out, const std::string& name, const Structure& s) {
  out << write_structure(name, s);
  if (is_string_signature(s)) out << "word: " << structure_to_string(s) << "\n";
}

std::string format_table(const RelationTable& table) {
  std::string out = "{";
  bool first = true;
  for (const auto& tuple : table.tuples()) {
    if (!first) out += ",";
    first = false;
    if (tuple.size() == 1) {
      out += std::to_string(tuple[0]);
    } else {
      out += "(";
      for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(tuple[i]);
      }
      out += ")";
    }
  }
  return out + "}";
}

// Default sweep ceiling: strings stay cheap much longer than graphs.
int default_max_size(const VocabularyPtr& vocab) {
  return vocab->same_signature(*string_vocab()) ? 6 : 3;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void emit(const Global& g, const json& report, const std::string& text) {
  if (g.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

json base_report(const std::string& command, const std::string& verdict) {
  return json{{"schema", kSchema}, {"command", command}, {"verdict", verdict}};
}

void fill_sweep(json& report, const ReductionReport& r) {
  report["min_size"] = r.min_size;
  report["max_size"] = r.max_size;
  report["structures_checked"] = r.structures_checked;
  report["seconds"] = r.seconds;
}

// Shared tail for the verify subcommands: honest verdict, payload, exit code.
int finish_verify(const Global& g, const std::string& command, const ReductionReport& r,
                  const std::string& counterexample_name = "counterexample") {
  json report = base_report(command, r.verified ? "ok" : "counterexample");
  fill_sweep(report, r);
  std::ostringstream text;
  if (r.verified) {
    text << "verified: sizes " << r.min_size << ".." << r.max_size << ", "
         << r.structures_checked << " structures, " << std::fixed << r.seconds << "s\n";
  } else {
    report["note"] = r.note;
    json cx;
    describe_structure(cx, counterexample_name, *r.counterexample);
    report["counterexample"] = cx;
    text << "counterexample (after " << r.structures_checked << " structures):\n";
    print_structure(text, counterexample_name, *r.counterexample);
    text << r.note << "\n";
  }
  emit(g, report, text.str());
  return r.verified ? 0 : 1;
}

int cmd_eval(const Global& g, const std::string& struct_file, const std::string& word,
             const std::string& formula_file, const std::string& builtin, bool witness) {
  auto [name, a] = input_structure(struct_file, word);
  Formula sentence;
  if (!builtin.empty()) {
    Problem p = builtin_problem(builtin, convention_of(g));
    if (!a.vocab().same_signature(*p.vocab))
      fail(Errc::VocabularyMismatch,
           "structure signature does not match problem " + p.name);
    sentence = p.sentence;
  } else {
    sentence = parse_formula(load_file(formula_file), a.vocab(), true);
  }
  sentence = elaborate(sentence);

  auto start = std::chrono::steady_clock::now();
  bool value = eval_so(a, sentence, g.eval);
  json report = base_report("eval", value ? "ok" : "counterexample");
  report["value"] = value;
  std::ostringstream text;
  text << (value ? "true" : "false") << "\n";
  if (witness && value) {
    if (auto w = find_witness(a, sentence, g.eval)) {
      json sets = json::object();
      for (const auto& [nm, table] : w->sets) {
        sets[nm] = format_table(table);
        text << nm << " = " << format_table(table) << "\n";
      }
      report["witness"] = sets;
    }
  }
  report["seconds"] = seconds_since(start);
  emit(g, report, text.str());
  return value ? 0 : 1;
}

int cmd_apply(const Global& g, const std::string& query_name, const std::string& struct_file,
              const std::string& word, const std::string& out_file) {
  Query q = load_query(query_name);
  auto [name, a] = input_structure(struct_file, word);
  if (!a.vocab().same_signature(*q.source()))
    fail(Errc::VocabularyMismatch, "structure signature does not match the query source");
  auto start = std::chrono::steady_clock::now();
  Structure image = apply_query(q, a, g.eval);

  json report = base_report("apply", "ok");
  describe_structure(report, name, image);
  report["seconds"] = seconds_since(start);
  std::string block = write_structure(name, image);
  if (!out_file.empty()) {
    std::ofstream out(out_file, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot write " + out_file);
    out << block;
    report["out"] = out_file;
  }
  // Words print in bit form; anything else as a struct block.
  std::string text = is_string_signature(image)
                         ? structure_to_string(image) + "\n"
                         : block;
  emit(g, report, text);
  return 0;
}

int cmd_dual(const Global& g, const std::string& query_name, const std::string& formula_file,
             const std::string& builtin, bool do_simplify, int semantic_check,
             const std::string& out_file) {
  Query q = load_query(query_name);
  Formula theta;
  if (!builtin.empty()) {
    Problem p = builtin_problem(builtin, convention_of(g));
    if (!p.vocab->same_signature(*q.target()))
      fail(Errc::VocabularyMismatch,
           "problem " + p.name + " is not over the query's target vocabulary");
    theta = p.sentence;
  } else {
    theta = parse_formula(load_file(formula_file), *q.target(), false);
  }
  Formula theta_elab = elaborate(theta);
  DualResult dual = syntactic_dual(q, theta_elab);
  Formula result = do_simplify ? simplify(dual.formula) : dual.formula;
  std::string rendered = print_formula(result);

  json report = base_report("dual", "ok");
  report["formula"] = rendered;
  report["notes"] = dual.notes;
  std::ostringstream text;
  text << rendered << "\n";

  int exit_code = 0;
  if (semantic_check > 0) {
    if (!is_sentence(theta_elab))
      fail(Errc::FreeVariableInSentence, "--semantic-check needs a sentence");
    json check{{"max_size", semantic_check}, {"ok", true}};
    for (int n = 1; n <= semantic_check && exit_code == 0; ++n) {
      for_each_structure(q.source(), n, [&](const Structure& a) {
        bool direct = eval_so(a, result, g.eval);
        bool via_image = semantic_dual_eval(q, theta_elab, a, g.eval);
        if (direct != via_image) {
          check["ok"] = false;
          json cx;
          describe_structure(cx, "counterexample", a);
          cx["rewritten"] = direct;
          cx["via_image"] = via_image;
          check["counterexample"] = cx;
          text << "semantic check failed:\n";
          print_structure(text, "counterexample", a);
          text << "rewritten sentence: " << (direct ? "true" : "false")
               << ", on the image: " << (via_image ? "true" : "false") << "\n";
          exit_code = 1;
          return false;
        }
        return true;
      });
    }
    if (exit_code == 0) text << "semantic check passed (sizes 1.." << semantic_check << ")\n";
    report["semantic_check"] = check;
    if (exit_code != 0) report["verdict"] = "counterexample";
  }

  if (!out_file.empty()) {
    std::ofstream out(out_file, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot write " + out_file);
    out << rendered << "\n";
    report["out"] = out_file;
  }
  emit(g, report, text.str());
  return exit_code;
}

int cmd_image(const Global& g, const std::string& query_name, const std::string& struct_file,
              const std::string& word, int max_preimage) {
  Query q = load_query(query_name);
  auto [name, b] = input_structure(struct_file, word);
  if (!b.vocab().same_signature(*q.target()))
    fail(Errc::VocabularyMismatch, "structure signature does not match the query target");
  auto start = std::chrono::steady_clock::now();
  std::optional<Structure> preimage = image_membership(q, b, max_preimage, g.eval);

  json report = base_report("image", preimage ? "ok" : "counterexample");
  report["in_image"] = preimage.has_value();
  report["seconds"] = seconds_since(start);
  std::ostringstream text;
  if (preimage) {
    json pre;
    describe_structure(pre, "preimage", *preimage);
    report["preimage"] = pre;
    print_structure(text, "preimage", *preimage);
  } else {
    int bound = max_preimage > 0 ? max_preimage : b.size();
    text << "no preimage of size <= " << bound << "\n";
  }
  emit(g, report, text.str());
  return preimage ? 0 : 1;
}

int cmd_verify_reduction(const Global& g, const std::string& fop, const std::string& source,
                         const std::string& target, int min_size, int max_size) {
  Query p = load_query(fop);
  Problem src = builtin_problem(source, convention_of(g));
  Problem tgt = builtin_problem(target, convention_of(g));
  if (max_size == 0) max_size = default_max_size(p.source());
  ReductionReport r = verify_reduction(p, src, tgt, min_size, max_size, sweep_options(g));
  return finish_verify(g, "verify reduction", r);
}

int cmd_verify_condition_c(const Global& g, const std::string& fop, const std::string& back,
                           const std::string& problem, int min_size, int max_size) {
  Query p = load_query(fop);
  Query back_q = load_query(back);
  Problem pi = builtin_problem(problem, convention_of(g));
  if (max_size == 0) max_size = default_max_size(p.source());
  ReductionReport r = verify_condition_c(back_q, p, pi, min_size, max_size, sweep_options(g));
  return finish_verify(g, "verify condition-c", r);
}

int cmd_verify_characteristic(const Global& g, const std::string& fop,
                              const std::string& beta_file, int max_size) {
  Query q = load_query(fop);
  Formula beta = beta_file.empty() ? builtin_characteristic(fop)
                                   : parse_formula(load_file(beta_file), *q.target(), true);
  auto start = std::chrono::steady_clock::now();
  CharacteristicReport r = verify_characteristic(beta, q, max_size, g.eval);
  double secs = seconds_since(start);

  json report = base_report("verify characteristic", r.verified ? "ok" : "counterexample");
  report["max_size"] = r.max_size;
  report["seconds"] = secs;
  std::ostringstream text;
  if (r.verified) {
    text << "verified: the sentence matches image membership up to size " << r.max_size
         << "\n";
  } else {
    json cx;
    describe_structure(cx, "counterexample", *r.counterexample);
    cx["satisfies_sentence"] = r.counterexample_satisfies_sentence;
    cx["in_image"] = r.counterexample_in_image;
    report["counterexample"] = cx;
    text << "refuted:\n";
    print_structure(text, "counterexample", *r.counterexample);
    text << "sentence: " << (r.counterexample_satisfies_sentence ? "true" : "false")
         << ", image membership: " << (r.counterexample_in_image ? "yes" : "no") << "\n";
  }
  emit(g, report, text.str());
  return r.verified ? 0 : 1;
}

int cmd_verify_decomposition(const Global& g, const std::string& preset, const std::string& fop,
                             const std::string& back, const std::string& psi_file,
                             const std::string& lambda_file, const std::string& beta_file,
                             const std::string& target, int min_size, int max_size, bool fast) {
  std::optional<Query> p, back_q;
  Formula psi, lambda, beta;
  Problem tgt;
  if (preset == "clique") {
    // Image is everything, so the residue branch never fires.
    p = builtin_query("fop_complement");
    back_q = p;
    psi = builtin_problem("IS", convention_of(g)).sentence;
    lambda = f_false();
    beta = builtin_characteristic("fop_complement");
    tgt = builtin_problem("CLIQUE", convention_of(g));
    if (max_size == 0) max_size = 4;
  } else if (preset == "subgraphiso") {
    // The clique problem only matches the containment problem when all
    // thresholds are read strictly, so this preset pins the convention.
    p = builtin_query("fop_clique_to_sgi");
    back_q = builtin_query("query_sgi_back");
    psi = builtin_problem("CLIQUE", Convention::Strict).sentence;
    lambda = builtin_problem("SUBGRAPHISO", Convention::Strict).sentence;
    beta = builtin_characteristic("fop_clique_to_sgi");
    tgt = builtin_problem("SUBGRAPHISO", Convention::Strict);
    if (max_size == 0) max_size = 3;
  } else {
    p = load_query(fop);
    back_q = load_query(back);
    psi = parse_formula(load_file(psi_file), *p->source(), true);
    lambda = parse_formula(load_file(lambda_file), *p->target(), true);
    beta = parse_formula(load_file(beta_file), *p->target(), true);
    tgt = builtin_problem(target, convention_of(g));
    if (max_size == 0) max_size = default_max_size(p->target());
  }
  if (fast && max_size > 2) max_size = 2;

  Decomposition d = build_decomposition(*p, *back_q, psi, lambda, beta);
  ReductionReport r = verify_decomposition(d, tgt, min_size, max_size, sweep_options(g));
  return finish_verify(g, "verify decomposition", r);
}

int cmd_verify_injective(const Global& g, const std::string& fop, int min_size, int max_size) {
  Query q = load_query(fop);
  if (max_size == 0) max_size = default_max_size(q.source());
  auto start = std::chrono::steady_clock::now();
  InjectivityReport r = check_injective(q, min_size, max_size, g.eval);
  double secs = seconds_since(start);

  json report = base_report("verify injective", r.injective ? "ok" : "counterexample");
  report["min_size"] = r.min_size;
  report["max_size"] = r.max_size;
  report["inputs_checked"] = r.inputs_checked;
  report["seconds"] = secs;
  std::ostringstream text;
  if (r.injective) {
    text << "injective on sizes " << r.min_size << ".." << r.max_size << " ("
         << r.inputs_checked << " inputs)\n";
  } else {
    json first, second;
    describe_structure(first, "first", r.counterexample->first);
    describe_structure(second, "second", r.counterexample->second);
    report["counterexample"] = json{{"first", first}, {"second", second}};
    text << "two inputs share an image:\n";
    print_structure(text, "first", r.counterexample->first);
    print_structure(text, "second", r.counterexample->second);
  }
  emit(g, report, text.str());
  return r.injective ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  if (const char* env = std::getenv("FOPKIT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      std::cerr << "error: FOPKIT_BUDGET must be a positive integer\n";
      return 2;
    }
    g.eval.budget = v;
  }

  CLI::App app{"Finite-model toolkit: evaluate, project, rewrite, verify"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "emit one machine-readable report object");
  app.add_option("--jobs", g.jobs, "worker threads for exhaustive sweeps (results identical)")
      ->check(CLI::Range(1, 64));
  app.add_option("--convention", g.convention,
                 "threshold reading for the built-in graph problems")
      ->check(CLI::IsMember({"verbatim", "strict"}));

  std::string struct_file, word, formula_file, builtin_name, query_name, out_file;
  bool witness = false;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a sentence on a structure");
  {
    auto* in = eval_cmd->add_option_group("structure");
    in->add_option("--struct", struct_file, "structure file");
    in->add_option("--string", word, "binary word as a structure over <Q/1>");
    in->require_option(1);
    auto* fm = eval_cmd->add_option_group("sentence");
    fm->add_option("--formula", formula_file, "sentence file over the structure's vocabulary");
    fm->add_option("--builtin", builtin_name, "built-in problem name");
    fm->require_option(1);
    eval_cmd->add_flag("--witness", witness, "print the second-order sets when true");
  }

  auto* apply_cmd = app.add_subcommand("apply", "apply a query to a structure");
  {
    apply_cmd->add_option("--query,--builtin", query_name, "query file or built-in query name")
        ->required();
    auto* in = apply_cmd->add_option_group("structure");
    in->add_option("--struct", struct_file, "structure file");
    in->add_option("--string", word, "binary word");
    in->require_option(1);
    apply_cmd->add_option("--out", out_file, "also write the image as a struct file");
  }

  bool do_simplify = false;
  int semantic_check = 0;
  auto* dual_cmd =
      app.add_subcommand("dual", "rewrite a target-vocabulary sentence through a query");
  {
    dual_cmd->add_option("--query", query_name, "query file or built-in query name")
        ->required();
    auto* fm = dual_cmd->add_option_group("sentence");
    fm->add_option("--formula", formula_file, "formula file over the query's target");
    fm->add_option("--builtin", builtin_name, "built-in problem name");
    fm->require_option(1);
    dual_cmd->add_flag("--simplify", do_simplify, "fold constants and push negations");
    dual_cmd->add_option("--semantic-check", semantic_check,
                         "cross-check against image evaluation on all sizes <= N");
    dual_cmd->add_option("--out", out_file, "write the rewritten formula to a file");
  }

  int max_preimage = 0;
  auto* image_cmd = app.add_subcommand("image", "search for a preimage under a query");
  {
    image_cmd->add_option("--query,--builtin", query_name, "query file or built-in query name")
        ->required();
    auto* in = image_cmd->add_option_group("structure");
    in->add_option("--struct", struct_file, "target structure file");
    in->add_option("--string", word, "binary word");
    in->require_option(1);
    image_cmd->add_option("--max-preimage", max_preimage,
                          "largest source size to try (default: the input's size)");
  }

  std::string fop, back, source, target, problem, beta_file, psi_file, lambda_file, preset;
  int min_size = 1, max_size = 0;
  bool fast = false;
  auto* verify_cmd = app.add_subcommand("verify", "exhaustive checks over bounded sizes");
  verify_cmd->require_subcommand(1);
  verify_cmd->fallthrough();

  auto add_sizes = [&](CLI::App* cmd, int char_default) {
    cmd->add_option("--min-size", min_size, "smallest universe size");
    cmd->add_option("--max-size", max_size,
                    char_default ? "largest universe size (default 3)"
                                 : "largest universe size (default: graphs 3, strings 6)");
  };

  auto* red = verify_cmd->add_subcommand("reduction", "membership carried over by a query");
  red->add_option("--fop", fop, "query file or built-in query name")->required();
  red->add_option("--source", source, "built-in source problem")->required();
  red->add_option("--target", target, "built-in target problem")->required();
  add_sizes(red, 0);

  auto* cond = verify_cmd->add_subcommand(
      "condition-c", "membership class preserved by the back-and-forth map");
  cond->add_option("--fop", fop, "query file or built-in query name")->required();
  cond->add_option("--back", back, "back-query file or built-in query name")->required();
  cond->add_option("--problem", problem, "built-in problem")->required();
  add_sizes(cond, 0);

  auto* chr = verify_cmd->add_subcommand("characteristic",
                                         "a sentence against actual image membership");
  chr->add_option("--fop", fop, "query file or built-in query name")->required();
  chr->add_option("--beta", beta_file, "sentence file (default: the built-in one)");
  chr->add_option("--max-size", max_size, "largest target size (default 3)");

  auto* dec = verify_cmd->add_subcommand("decomposition",
                                         "two-branch rewriting of a target problem");
  dec->add_option("--case", preset, "preset: clique or subgraphiso (pins strict)")
      ->check(CLI::IsMember({"clique", "subgraphiso"}));
  dec->add_option("--fop", fop, "query file or built-in query name");
  dec->add_option("--back", back, "back-query file or built-in query name");
  dec->add_option("--psi", psi_file, "source-problem sentence file");
  dec->add_option("--lambda", lambda_file, "residue sentence file");
  dec->add_option("--beta", beta_file, "characteristic sentence file");
  dec->add_option("--target", target, "built-in target problem");
  add_sizes(dec, 1);
  dec->add_flag("--fast", fast, "cap the sweep at size 2");

  auto* inj = verify_cmd->add_subcommand("injective", "distinct inputs keep distinct images");
  inj->add_option("--fop", fop, "query file or built-in query name")->required();
  add_sizes(inj, 0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed())
      return cmd_eval(g, struct_file, word, formula_file, builtin_name, witness);
    if (apply_cmd->parsed())
      return cmd_apply(g, query_name, struct_file, word, out_file);
    if (dual_cmd->parsed())
      return cmd_dual(g, query_name, formula_file, builtin_name, do_simplify, semantic_check,
                      out_file);
    if (image_cmd->parsed())
      return cmd_image(g, query_name, struct_file, word, max_preimage);
    if (verify_cmd->parsed()) {
      if (red->parsed()) return cmd_verify_reduction(g, fop, source, target, min_size, max_size);
      if (cond->parsed())
        return cmd_verify_condition_c(g, fop, back, problem, min_size, max_size);
      if (chr->parsed())
        return cmd_verify_characteristic(g, fop, beta_file, max_size == 0 ? 3 : max_size);
      if (dec->parsed()) {
        if (preset.empty() &&
            (fop.empty() || back.empty() || psi_file.empty() || lambda_file.empty() ||
             beta_file.empty() || target.empty()))
          fail(Errc::InvalidQuery,
               "decomposition needs --case or all of --fop --back --psi --lambda --beta "
               "--target");
        return cmd_verify_decomposition(g, preset, fop, back, psi_file, lambda_file, beta_file,
                                        target, min_size, max_size, fast);
      }
      if (inj->parsed()) return cmd_verify_injective(g, fop, min_size, max_size);
    }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const Error& e) {
    if (g.json) {
      std::string cmd;
      for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        cmd += (cmd.empty() ? "" : " ") + sub->get_name();
      }
      json report = base_report(cmd, "error");
      report["error"] = json{{"code", errc_name(e.code())}, {"message", e.message()}};
      std::cout << report.dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == Errc::BudgetExceeded)
      std::cerr << "hint: lower --max-size or raise FOPKIT_BUDGET\n";
    return 2;
  }
}
