#include "fopkit/textio.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "fopkit/errors.hpp"
#include "fopkit/formula.hpp"
#include "fopkit/formula_ops.hpp"
#include "fopkit/parse.hpp"
#include "fopkit/problems.hpp"

namespace fopkit {
namespace {

// Comments become spaces rather than being cut out, so byte offsets (and
// therefore the line:col in error messages) refer to the original file.
std::string blank_comments(const std::string& text) {
  std::string s = text;
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] == '#')
      for (; i < s.size() && s[i] != '\n'; ++i) s[i] = ' ';
  return s;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

class Scanner {
public:
  explicit Scanner(const std::string& text) : s_(blank_comments(text)) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool peek_is(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool peek_ident() {
    skip_ws();
    return pos_ < s_.size() && ident_start(s_[pos_]);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      error(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_arrow() {
    skip_ws();
    if (pos_ + 1 >= s_.size() || s_[pos_] != '-' || s_[pos_ + 1] != '>')
      error("expected '->'");
    pos_ += 2;
  }
  bool consume(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) error("expected a name");
    size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name[0] == '_') error("names may not start with '_': " + name);
    return name;
  }

  int integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) error("expected a number");
    if (pos_ - start > 7) error("number too large");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  // Raw text up to (not including) the next ';', which is consumed.  Used
  // for formula payloads, whose own grammar never contains a semicolon.
  std::string until_semicolon() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ';') ++pos_;
    if (pos_ >= s_.size()) error("missing ';'");
    std::string slice = s_.substr(start, pos_ - start);
    ++pos_;
    return slice;
  }

  [[noreturn]] void error(const std::string& message) {
    int line = 1, col = 1;
    for (size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(Errc::SyntaxError, "line " + std::to_string(line) + ":" + std::to_string(col) +
                                ": " + message);
  }

private:
  std::string s_;
  size_t pos_ = 0;
};

VocabularyPtr find_vocab(const TextFile& file, const std::string& name) {
  for (const auto& v : file.vocabularies)
    if (v->name() == name) return v;
  if (name == "graph") return graph_vocab();
  if (name == "sgi") return sgi_vocab();
  if (name == "string") return string_vocab();
  return nullptr;
}

// Adds "<kind> <name>: " in front of messages thrown while building the
// block's object, keeping the original error code.
template <typename Fn>
auto with_context(const std::string& context, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.code(), context + ": " + e.message());
  }
}

VocabularyPtr parse_vocab_block(Scanner& sc) {
  std::string name = sc.ident();
  std::vector<RelationSymbol> rels;
  std::vector<std::string> consts;
  sc.expect('{');
  while (!sc.peek_is('}')) {
    std::string kw = sc.ident();
    if (kw == "rel") {
      std::string rn = sc.ident();
      sc.expect('/');
      int arity = sc.integer();
      rels.push_back({rn, arity});
    } else if (kw == "const") {
      consts.push_back(sc.ident());
    } else {
      sc.error("expected 'rel' or 'const', got '" + kw + "'");
    }
    sc.expect(';');
  }
  sc.expect('}');
  return with_context("vocab " + name, [&] {
    return std::make_shared<const Vocabulary>(name, std::move(rels), std::move(consts));
  });
}

Structure parse_struct_block(Scanner& sc, const TextFile& file, std::string& name_out) {
  name_out = sc.ident();
  sc.expect(':');
  std::string vname = sc.ident();
  VocabularyPtr vocab = find_vocab(file, vname);
  if (!vocab) fail(Errc::UnknownName, "struct " + name_out + ": unknown vocabulary " + vname);
  sc.expect('{');

  std::string first = sc.ident();
  if (first != "size") sc.error("the first entry of a struct block must be 'size'");
  sc.expect('=');
  int size = sc.integer();
  sc.expect(';');

  std::map<std::string, std::vector<std::vector<int>>> rels;
  std::map<std::string, int> consts;
  while (!sc.peek_is('}')) {
    std::string sym = sc.ident();
    if (rels.count(sym) || consts.count(sym))
      sc.error("symbol " + sym + " assigned twice");
    sc.expect('=');
    if (sc.peek_is('{')) {
      if (vocab->relation_index(sym) < 0)
        sc.error(sym + " is not a relation of " + vocab->name());
      int arity = vocab->relations()[vocab->relation_index(sym)].arity;
      std::vector<std::vector<int>> tuples;
      sc.expect('{');
      while (!sc.peek_is('}')) {
        if (!tuples.empty()) sc.expect(',');
        std::vector<int> tuple;
        if (sc.consume('(')) {
          tuple.push_back(sc.integer());
          while (sc.consume(',')) tuple.push_back(sc.integer());
          sc.expect(')');
        } else {
          // Bare elements are the arity-1 shorthand: Q = {0,2};
          tuple.push_back(sc.integer());
        }
        if (static_cast<int>(tuple.size()) != arity)
          sc.error(sym + " expects " + std::to_string(arity) + "-tuples");
        tuples.push_back(std::move(tuple));
      }
      sc.expect('}');
      rels.emplace(sym, std::move(tuples));
    } else {
      if (vocab->constant_index(sym) < 0)
        sc.error(sym + " is not a constant of " + vocab->name());
      consts.emplace(sym, sc.integer());
    }
    sc.expect(';');
  }
  sc.expect('}');
  return with_context("struct " + name_out,
                      [&] { return Structure(vocab, size, rels, consts); });
}

// Head parameters rename the component formula onto the canonical x1..xm.
// They must not collide with source symbols: inside the formula a name that
// matches a vocabulary constant parses as that constant, so allowing the
// collision would silently change the formula's meaning.
Formula canonicalize_component(Scanner& sc, const Formula& f,
                               const std::vector<std::string>& params,
                               const VocabularyPtr& source) {
  std::set<std::string> seen;
  std::map<std::string, Term> rename;
  for (size_t i = 0; i < params.size(); ++i) {
    if (!seen.insert(params[i]).second) sc.error("duplicate head parameter " + params[i]);
    if (source->has_symbol(params[i]))
      sc.error("head parameter " + params[i] + " shadows a source symbol");
    rename.emplace(params[i], t_var(param_name(static_cast<int>(i) + 1)));
  }
  for (const auto& v : free_vars(f).fo)
    if (!seen.count(v)) sc.error("free variable " + v + " is not a head parameter");
  return substitute(f, rename);
}

Query parse_query_block(Scanner& sc, const TextFile& file, std::string& name_out) {
  name_out = sc.ident();
  sc.expect(':');
  std::string sname = sc.ident();
  VocabularyPtr source = find_vocab(file, sname);
  if (!source) fail(Errc::UnknownName, "query " + name_out + ": unknown vocabulary " + sname);
  sc.expect_arrow();
  std::string tname = sc.ident();
  VocabularyPtr target = find_vocab(file, tname);
  if (!target) fail(Errc::UnknownName, "query " + name_out + ": unknown vocabulary " + tname);
  std::string kw = sc.ident();
  if (kw != "arity") sc.error("expected 'arity'");
  int arity = sc.integer();
  sc.expect('{');

  auto parse_component = [&](const std::string& context) {
    std::string slice = sc.until_semicolon();
    return with_context("query " + name_out + ", " + context,
                        [&] { return parse_formula(slice, *source); });
  };

  std::string first = sc.ident();
  if (first != "universe") sc.error("the first entry of a query block must be 'universe'");
  sc.expect(':');
  Formula universe = parse_component("universe");

  size_t nrel = target->relations().size(), nconst = target->constants().size();
  std::vector<Formula> rel_formulas(nrel), const_formulas(nconst);
  std::vector<char> have_rel(nrel, 0), have_const(nconst, 0);
  while (!sc.peek_is('}')) {
    std::string sym = sc.ident();
    int ri = target->relation_index(sym);
    int ci = target->constant_index(sym);
    if (ri < 0 && ci < 0) sc.error(sym + " is not a symbol of " + target->name());
    std::vector<std::string> params;
    bool has_params = sc.consume('(');
    if (has_params) {
      params.push_back(sc.ident());
      while (sc.consume(',')) params.push_back(sc.ident());
      sc.expect(')');
    }
    sc.expect(':');
    if (ri >= 0) {
      if (have_rel[ri]) sc.error("relation " + sym + " defined twice");
      have_rel[ri] = 1;
      Formula f = parse_component("relation " + sym);
      if (has_params) {
        size_t want = static_cast<size_t>(arity) * target->relations()[ri].arity;
        if (params.size() != want)
          sc.error("relation " + sym + " needs " + std::to_string(want) +
                   " head parameters, got " + std::to_string(params.size()));
        f = canonicalize_component(sc, f, params, source);
      }
      rel_formulas[ri] = f;
    } else {
      if (have_const[ci]) sc.error("constant " + sym + " defined twice");
      if (has_params) sc.error("constant pins use the fixed parameters x1..xk");
      have_const[ci] = 1;
      const_formulas[ci] = parse_component("constant " + sym);
    }
  }
  sc.expect('}');
  for (size_t i = 0; i < nrel; ++i)
    if (!have_rel[i]) sc.error("relation " + target->relations()[i].name + " has no formula");
  for (size_t j = 0; j < nconst; ++j)
    if (!have_const[j]) sc.error("constant " + target->constants()[j] + " has no formula");

  return with_context("query " + name_out, [&] {
    return Query(source, target, arity, std::move(universe), std::move(rel_formulas),
                 std::move(const_formulas));
  });
}

std::string tuple_text(const std::vector<int>& tuple) {
  std::string out;
  if (tuple.size() == 1) return std::to_string(tuple[0]);
  out += '(';
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tuple[i]);
  }
  out += ')';
  return out;
}

}  // namespace

TextFile parse_text(const std::string& text) {
  Scanner sc(text);
  TextFile file;
  std::set<std::string> vocab_names, struct_names, query_names;
  while (!sc.at_end()) {
    std::string kind = sc.ident();
    if (kind == "vocab") {
      VocabularyPtr v = parse_vocab_block(sc);
      if (!vocab_names.insert(v->name()).second)
        fail(Errc::SyntaxError, "vocab " + v->name() + " declared twice");
      file.vocabularies.push_back(std::move(v));
    } else if (kind == "struct") {
      std::string name;
      Structure s = parse_struct_block(sc, file, name);
      if (!struct_names.insert(name).second)
        fail(Errc::SyntaxError, "struct " + name + " declared twice");
      file.structures.emplace_back(std::move(name), std::move(s));
    } else if (kind == "query") {
      std::string name;
      Query q = parse_query_block(sc, file, name);
      if (!query_names.insert(name).second)
        fail(Errc::SyntaxError, "query " + name + " declared twice");
      file.queries.emplace_back(std::move(name), std::move(q));
    } else {
      sc.error("expected 'vocab', 'struct' or 'query', got '" + kind + "'");
    }
  }
  return file;
}

VocabularyPtr parse_vocabulary_text(const std::string& text) {
  TextFile file = parse_text(text);
  if (file.vocabularies.size() != 1 || !file.structures.empty() || !file.queries.empty())
    fail(Errc::SyntaxError, "expected exactly one vocab block");
  return file.vocabularies[0];
}

Structure parse_structure_text(const std::string& text) {
  TextFile file = parse_text(text);
  if (file.structures.size() != 1 || !file.queries.empty())
    fail(Errc::SyntaxError, "expected exactly one struct block");
  return file.structures[0].second;
}

Query parse_query_text(const std::string& text) {
  TextFile file = parse_text(text);
  if (file.queries.size() != 1 || !file.structures.empty())
    fail(Errc::SyntaxError, "expected exactly one query block");
  return file.queries[0].second;
}

std::string write_vocabulary(const VocabularyPtr& v) {
  std::ostringstream out;
  out << "vocab " << v->name() << " {\n";
  for (const auto& r : v->relations()) out << "  rel " << r.name << "/" << r.arity << ";\n";
  for (const auto& c : v->constants()) out << "  const " << c << ";\n";
  out << "}\n";
  return out.str();
}

std::string write_structure(const std::string& name, const Structure& s) {
  std::ostringstream out;
  out << "struct " << name << " : " << s.vocab().name() << " {\n";
  out << "  size = " << s.size() << ";\n";
  const auto& rels = s.vocab().relations();
  for (size_t i = 0; i < rels.size(); ++i) {
    out << "  " << rels[i].name << " = {";
    bool first = true;
    for (const auto& tuple : s.rel(static_cast<int>(i)).tuples()) {
      if (!first) out << ",";
      first = false;
      out << tuple_text(tuple);
    }
    out << "};\n";
  }
  const auto& consts = s.vocab().constants();
  for (size_t j = 0; j < consts.size(); ++j)
    out << "  " << consts[j] << " = " << s.constant(static_cast<int>(j)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string write_query(const std::string& name, const Query& q) {
  std::ostringstream out;
  out << "query " << name << " : " << q.source()->name() << " -> " << q.target()->name()
      << " arity " << q.arity() << " {\n";
  out << "  universe: " << print_formula(q.universe()) << ";\n";
  const auto& rels = q.target()->relations();
  for (size_t i = 0; i < rels.size(); ++i) {
    out << "  " << rels[i].name << "(";
    for (int p = 1; p <= q.arity() * rels[i].arity; ++p) {
      if (p > 1) out << ",";
      out << param_name(p);
    }
    out << "): " << print_formula(q.relation_formula(static_cast<int>(i))) << ";\n";
  }
  const auto& consts = q.target()->constants();
  for (size_t j = 0; j < consts.size(); ++j)
    out << "  " << consts[j] << ": " << print_formula(q.constant_formula(static_cast<int>(j)))
        << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace fopkit
