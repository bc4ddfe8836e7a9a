#include "fopkit/parse.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "fopkit/errors.hpp"

namespace fopkit {

namespace {

enum class Tok {
  Ident, Number,
  LParen, RParen, Comma, Dot, Slash,
  Bang, Amp, Pipe, Arrow,
  Eq, Neq, Le, Lt,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos = 0;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  std::vector<Token> tokens;

  explicit Lexer(const std::string& s) : src(s) { run(); }

  [[noreturn]] void error(size_t at, const std::string& msg) {
    int line = 1, col = 1;
    for (size_t i = 0; i < at && i < src.size(); ++i) {
      if (src[i] == '\n') { ++line; col = 1; } else ++col;
    }
    fail(Errc::SyntaxError,
         std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  void run() {
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isspace(static_cast<unsigned char>(c))) { ++pos; continue; }
      if (c == '#') {  // line comment
        while (pos < src.size() && src[pos] != '\n') ++pos;
        continue;
      }
      size_t start = pos;
      if (std::isalpha(static_cast<unsigned char>(c))) {
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
          ++pos;
        tokens.push_back({Tok::Ident, src.substr(start, pos - start), start});
        continue;
      }
      if (c == '_')
        error(start, "identifiers starting with '_' are reserved for generated names");
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        tokens.push_back({Tok::Number, src.substr(start, pos - start), start});
        continue;
      }
      switch (c) {
        case '(': tokens.push_back({Tok::LParen, "(", start}); ++pos; break;
        case ')': tokens.push_back({Tok::RParen, ")", start}); ++pos; break;
        case ',': tokens.push_back({Tok::Comma, ",", start}); ++pos; break;
        case '.': tokens.push_back({Tok::Dot, ".", start}); ++pos; break;
        case '/': tokens.push_back({Tok::Slash, "/", start}); ++pos; break;
        case '&': tokens.push_back({Tok::Amp, "&", start}); ++pos; break;
        case '|': tokens.push_back({Tok::Pipe, "|", start}); ++pos; break;
        case '=': tokens.push_back({Tok::Eq, "=", start}); ++pos; break;
        case '!':
          if (pos + 1 < src.size() && src[pos + 1] == '=') {
            tokens.push_back({Tok::Neq, "!=", start});
            pos += 2;
          } else {
            tokens.push_back({Tok::Bang, "!", start});
            ++pos;
          }
          break;
        case '<':
          if (pos + 1 < src.size() && src[pos + 1] == '=') {
            tokens.push_back({Tok::Le, "<=", start});
            pos += 2;
          } else {
            tokens.push_back({Tok::Lt, "<", start});
            ++pos;
          }
          break;
        case '-':
          if (pos + 1 < src.size() && src[pos + 1] == '>') {
            tokens.push_back({Tok::Arrow, "->", start});
            pos += 2;
          } else {
            error(start, "expected '->'");
          }
          break;
        default:
          error(start, std::string("unexpected character '") + c + "'");
      }
    }
    tokens.push_back({Tok::End, "", src.size()});
  }
};

bool is_keyword(const std::string& s) {
  return s == "all" || s == "ex" || s == "true" || s == "false" || s == "max" ||
         s == "BIT" || s == "suc" || s == "EX2" || s == "ALL2" || s == "EXINJ" ||
         s == "EXFUN";
}

struct Parser {
  Lexer lex;
  const Vocabulary& vocab;
  size_t i = 0;
  // innermost binding wins; arity -1 marks function variables
  std::vector<std::pair<std::string, int>> so_scope;
  std::vector<std::string> fo_scope;

  Parser(const std::string& text, const Vocabulary& v) : lex(text), vocab(v) {}

  const Token& peek(size_t ahead = 0) const {
    size_t j = i + ahead;
    return j < lex.tokens.size() ? lex.tokens[j] : lex.tokens.back();
  }
  Token take() { return lex.tokens[i < lex.tokens.size() - 1 ? i++ : i]; }

  [[noreturn]] void error_at(const Token& t, const std::string& msg) {
    lex.error(t.pos, msg + (t.kind == Tok::End ? " (at end of input)" : ", got '" + t.text + "'"));
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) error_at(peek(), std::string("expected ") + what);
    ++i;
  }

  int so_lookup(const std::string& name) const {
    for (auto it = so_scope.rbegin(); it != so_scope.rend(); ++it)
      if (it->first == name) return it->second;
    return -2;  // absent
  }

  bool ident_is(const std::string& kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  void check_binder_name(const Token& t) {
    if (is_keyword(t.text)) error_at(t, "keyword cannot be a variable");
    if (vocab.has_symbol(t.text))
      error_at(t, "variable '" + t.text + "' shadows a vocabulary symbol");
  }

  Formula parse() {
    Formula f = implies();
    if (peek().kind != Tok::End) error_at(peek(), "expected end of formula");
    return f;
  }

  Formula implies() {
    Formula l = disj();
    if (peek().kind == Tok::Arrow) {
      ++i;
      return f_implies(std::move(l), implies());
    }
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (peek().kind == Tok::Pipe) {
      ++i;
      l = f_or(std::move(l), conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (peek().kind == Tok::Amp) {
      ++i;
      l = f_and(std::move(l), unary());
    }
    return l;
  }

  Formula unary() {
    if (peek().kind == Tok::Bang) {
      ++i;
      return f_not(unary());
    }
    if (peek().kind == Tok::Ident) {
      const std::string& w = peek().text;
      if (w == "all" || w == "ex") return fo_quantifier();
      if (w == "EX2" || w == "ALL2") return so_quantifier();
      if (w == "EXINJ" || w == "EXFUN") return binder();
    }
    return primary();
  }

  Formula fo_quantifier() {
    bool universal = take().text == "all";
    Token v = peek();
    expect(Tok::Ident, "variable name");
    check_binder_name(v);
    expect(Tok::Dot, "'.'");
    fo_scope.push_back(v.text);
    Formula body = implies();
    fo_scope.pop_back();
    return universal ? f_forall(v.text, std::move(body)) : f_exists(v.text, std::move(body));
  }

  Formula so_quantifier() {
    bool existential = take().text == "EX2";
    Token v = peek();
    expect(Tok::Ident, "relation variable name");
    check_binder_name(v);
    expect(Tok::Slash, "'/'");
    Token a = peek();
    expect(Tok::Number, "arity");
    int arity = std::stoi(a.text);
    if (arity < 1 || arity > 9) error_at(a, "arity must be in 1..9");
    expect(Tok::Dot, "'.'");
    so_scope.emplace_back(v.text, arity);
    Formula body = implies();
    so_scope.pop_back();
    return existential ? f_so_exists(v.text, arity, std::move(body))
                       : f_so_forall(v.text, arity, std::move(body));
  }

  Formula binder() {
    bool injective = take().text == "EXINJ";
    Token v = peek();
    expect(Tok::Ident, "function variable name");
    check_binder_name(v);
    expect(Tok::Dot, "'.'");
    so_scope.emplace_back(v.text, -1);
    Formula body = implies();
    so_scope.pop_back();
    return injective ? f_exists_inj(v.text, std::move(body))
                     : f_exists_fun(v.text, std::move(body));
  }

  std::vector<Term> term_list() {
    expect(Tok::LParen, "'('");
    std::vector<Term> terms;
    terms.push_back(term());
    while (peek().kind == Tok::Comma) {
      ++i;
      terms.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return terms;
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++i;
      Formula f = implies();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true") { ++i; return f_true(); }
      if (t.text == "false") { ++i; return f_false(); }
      if (t.text == "BIT" || t.text == "suc") {
        bool bit = t.text == "BIT";
        ++i;
        std::vector<Term> terms = term_list();
        if (terms.size() != 2) error_at(t, "expected two arguments");
        return bit ? f_bit(terms[0], terms[1]) : f_suc(terms[0], terms[1]);
      }
      // Relation or second-order atom?
      if (!is_keyword(t.text) && peek(1).kind == Tok::LParen) {
        int rel = vocab.relation_index(t.text);
        int soa = so_lookup(t.text);
        if (rel >= 0 || soa >= 1) return atom(rel, soa);
      }
    }
    // Otherwise this must be a numeric comparison between two terms.
    Term a = term();
    const Token& op = peek();
    switch (op.kind) {
      case Tok::Eq: ++i; return f_eq(std::move(a), term());
      case Tok::Neq: ++i; return f_not(f_eq(std::move(a), term()));
      case Tok::Le: ++i; return f_le(std::move(a), term());
      case Tok::Lt: ++i; return f_lt(std::move(a), term());
      default:
        error_at(op, "expected a comparison operator");
    }
  }

  Formula atom(int rel, int so_arity) {
    Token sym = take();
    std::vector<Term> terms = term_list();
    if (rel >= 0) {
      int arity = vocab.relations()[rel].arity;
      if (static_cast<int>(terms.size()) != arity)
        error_at(sym, sym.text + " has arity " + std::to_string(arity));
      return f_rel(sym.text, std::move(terms));
    }
    if (static_cast<int>(terms.size()) != so_arity)
      error_at(sym, sym.text + " has arity " + std::to_string(so_arity));
    return f_so_atom(sym.text, std::move(terms));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      if (t.text != "0") error_at(t, "the only numeric constants are 0 and max");
      ++i;
      return t_zero();
    }
    if (t.kind != Tok::Ident) error_at(t, "expected a term");
    if (t.text == "max") { ++i; return t_max(); }
    if (is_keyword(t.text)) error_at(t, "keyword in term position");
    int soa = so_lookup(t.text);
    if (soa == -1 && peek(1).kind == Tok::LParen) {  // function application
      Token fn = take();
      std::vector<Term> args = term_list();
      if (args.size() != 1) error_at(fn, "function variables are unary");
      return t_app(fn.text, std::move(args));
    }
    if (peek(1).kind == Tok::LParen) {
      if (vocab.relation_index(t.text) >= 0 || soa >= 1)
        error_at(t, "relation symbol in term position");
      Token fn = take();
      std::vector<Term> args = term_list();
      if (args.size() == 1)
        fail(Errc::FunctionTermOutsideBinder,
             "'" + fn.text + "' is applied but no EXINJ/EXFUN binds it");
      fail(Errc::UnknownSymbol, "'" + fn.text + "' is not a relation or bound variable");
    }
    if (soa != -2) error_at(t, "second-order variable in term position");
    Token v = take();
    if (vocab.constant_index(v.text) >= 0) return t_const(v.text);
    return t_var(v.text);  // possibly free
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const Vocabulary& vocab,
                      bool require_sentence) {
  Parser p(text, vocab);
  Formula f = p.parse();
  if (require_sentence) {
    FreeVars fv = free_vars(f);
    if (!fv.fo.empty())
      fail(Errc::UnboundVariable, "free variable '" + *fv.fo.begin() + "' in sentence");
  }
  return f;
}

}  // namespace fopkit
