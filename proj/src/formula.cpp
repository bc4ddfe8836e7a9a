#include "fopkit/formula.hpp"

namespace fopkit {

bool Term::operator==(const Term& other) const {
  return kind == other.kind && name == other.name && args == other.args;
}

Term t_var(std::string name) { return {TermKind::Var, std::move(name), {}}; }
Term t_const(std::string name) { return {TermKind::Const, std::move(name), {}}; }
Term t_zero() { return {TermKind::Zero, "", {}}; }
Term t_max() { return {TermKind::Max, "", {}}; }
Term t_app(std::string fn, std::vector<Term> args) {
  return {TermKind::App, std::move(fn), std::move(args)};
}

namespace {

Formula node(Fk kind, std::string name, int so_arity, std::vector<Term> terms,
             Formula lhs, Formula rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->name = std::move(name);
  n->so_arity = so_arity;
  n->terms = std::move(terms);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

}  // namespace

Formula f_true() { return node(Fk::True, "", 0, {}, nullptr, nullptr); }
Formula f_false() { return node(Fk::False, "", 0, {}, nullptr, nullptr); }
Formula f_rel(std::string symbol, std::vector<Term> terms) {
  return node(Fk::Rel, std::move(symbol), 0, std::move(terms), nullptr, nullptr);
}
Formula f_so_atom(std::string var, std::vector<Term> terms) {
  return node(Fk::SOAtom, std::move(var), 0, std::move(terms), nullptr, nullptr);
}
Formula f_eq(Term a, Term b) { return node(Fk::Eq, "", 0, {std::move(a), std::move(b)}, nullptr, nullptr); }
Formula f_le(Term a, Term b) { return node(Fk::Le, "", 0, {std::move(a), std::move(b)}, nullptr, nullptr); }
Formula f_lt(Term a, Term b) { return node(Fk::Lt, "", 0, {std::move(a), std::move(b)}, nullptr, nullptr); }
Formula f_bit(Term a, Term b) { return node(Fk::Bit, "", 0, {std::move(a), std::move(b)}, nullptr, nullptr); }
Formula f_suc(Term a, Term b) { return node(Fk::Suc, "", 0, {std::move(a), std::move(b)}, nullptr, nullptr); }
Formula f_not(Formula f) { return node(Fk::Not, "", 0, {}, std::move(f), nullptr); }
Formula f_and(Formula l, Formula r) { return node(Fk::And, "", 0, {}, std::move(l), std::move(r)); }
Formula f_or(Formula l, Formula r) { return node(Fk::Or, "", 0, {}, std::move(l), std::move(r)); }
Formula f_implies(Formula l, Formula r) {
  return node(Fk::Implies, "", 0, {}, std::move(l), std::move(r));
}
Formula f_forall(std::string var, Formula body) {
  return node(Fk::Forall, std::move(var), 0, {}, std::move(body), nullptr);
}
Formula f_exists(std::string var, Formula body) {
  return node(Fk::Exists, std::move(var), 0, {}, std::move(body), nullptr);
}
Formula f_so_exists(std::string var, int arity, Formula body) {
  return node(Fk::SOExists, std::move(var), arity, {}, std::move(body), nullptr);
}
Formula f_so_forall(std::string var, int arity, Formula body) {
  return node(Fk::SOForall, std::move(var), arity, {}, std::move(body), nullptr);
}
Formula f_exists_inj(std::string fn, Formula body) {
  return node(Fk::ExistsInj, std::move(fn), 0, {}, std::move(body), nullptr);
}
Formula f_exists_fun(std::string fn, Formula body) {
  return node(Fk::ExistsFun, std::move(fn), 0, {}, std::move(body), nullptr);
}

Formula f_and_all(const std::vector<Formula>& fs) {
  Formula acc = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

Formula f_or_all(const std::vector<Formula>& fs) {
  Formula acc = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->so_arity != b->so_arity ||
      a->terms != b->terms)
    return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

namespace {

void term_vars(const Term& t, const std::set<std::string>& bound_fo,
               const std::set<std::string>& bound_so, FreeVars& out) {
  switch (t.kind) {
    case TermKind::Var:
      if (!bound_fo.count(t.name)) out.fo.insert(t.name);
      break;
    case TermKind::App:
      if (!bound_so.count(t.name)) out.so.insert(t.name);
      for (const auto& a : t.args) term_vars(a, bound_fo, bound_so, out);
      break;
    default:
      break;
  }
}

void collect_free(const Formula& f, std::set<std::string> bound_fo,
                  std::set<std::string> bound_so, FreeVars& out) {
  if (!f) return;
  switch (f->kind) {
    case Fk::Rel:
    case Fk::Eq:
    case Fk::Le:
    case Fk::Lt:
    case Fk::Bit:
    case Fk::Suc:
      for (const auto& t : f->terms) term_vars(t, bound_fo, bound_so, out);
      break;
    case Fk::SOAtom:
      if (!bound_so.count(f->name)) out.so.insert(f->name);
      for (const auto& t : f->terms) term_vars(t, bound_fo, bound_so, out);
      break;
    case Fk::Forall:
    case Fk::Exists:
      bound_fo.insert(f->name);
      collect_free(f->lhs, std::move(bound_fo), std::move(bound_so), out);
      break;
    case Fk::SOExists:
    case Fk::SOForall:
    case Fk::ExistsInj:
    case Fk::ExistsFun:
      bound_so.insert(f->name);
      collect_free(f->lhs, std::move(bound_fo), std::move(bound_so), out);
      break;
    default:
      collect_free(f->lhs, bound_fo, bound_so, out);
      collect_free(f->rhs, std::move(bound_fo), std::move(bound_so), out);
      break;
  }
}

}  // namespace

FreeVars free_vars(const Formula& f) {
  FreeVars out;
  collect_free(f, {}, {}, out);
  return out;
}

bool is_sentence(const Formula& f) {
  FreeVars fv = free_vars(f);
  return fv.fo.empty() && fv.so.empty();
}

namespace {

bool term_has_app(const Term& t) {
  if (t.kind == TermKind::App) return true;
  for (const auto& a : t.args)
    if (term_has_app(a)) return true;
  return false;
}

}  // namespace

bool is_elaborated(const Formula& f) {
  if (!f) return true;
  if (f->kind == Fk::ExistsInj || f->kind == Fk::ExistsFun) return false;
  for (const auto& t : f->terms)
    if (term_has_app(t)) return false;
  return is_elaborated(f->lhs) && is_elaborated(f->rhs);
}

bool contains_so(const Formula& f) {
  if (!f) return false;
  switch (f->kind) {
    case Fk::SOAtom:
    case Fk::SOExists:
    case Fk::SOForall:
    case Fk::ExistsInj:
    case Fk::ExistsFun:
      return true;
    default:
      break;
  }
  for (const auto& t : f->terms)
    if (term_has_app(t)) return true;
  return contains_so(f->lhs) || contains_so(f->rhs);
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind == TermKind::Var || t.kind == TermKind::App) out.insert(t.name);
  for (const auto& a : t.args) collect_names(a, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case Fk::SOAtom:
    case Fk::Forall:
    case Fk::Exists:
    case Fk::SOExists:
    case Fk::SOForall:
    case Fk::ExistsInj:
    case Fk::ExistsFun:
      out.insert(f->name);
      break;
    default:
      break;
  }
  for (const auto& t : f->terms) collect_names(t, out);
  collect_names(f->lhs, out);
  collect_names(f->rhs, out);
}

}  // namespace

std::set<std::string> all_variable_names(const Formula& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

std::string print_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Var:
    case TermKind::Const:
      return t.name;
    case TermKind::Zero:
      return "0";
    case TermKind::Max:
      return "max";
    case TermKind::App: {
      std::string out = t.name + "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ",";
        out += print_term(t.args[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

namespace {

// Precedence: -> is 1 (right-assoc), | is 2, & is 3, ! is 4, atoms are 5.
// Quantifiers extend maximally to the right; they print bare only in
// rightmost positions and get parentheses anywhere else.
int prec(Fk k) {
  switch (k) {
    case Fk::Implies: return 1;
    case Fk::Or: return 2;
    case Fk::And: return 3;
    case Fk::Not: return 4;
    default: return 5;
  }
}

bool is_quantifier(Fk k) {
  return k == Fk::Forall || k == Fk::Exists || k == Fk::SOExists ||
         k == Fk::SOForall || k == Fk::ExistsInj || k == Fk::ExistsFun;
}

std::string args_text(const std::vector<Term>& terms) {
  std::string out = "(";
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ",";
    out += print_term(terms[i]);
  }
  return out + ")";
}

std::string print_rec(const Formula& f, int min_prec, bool rightmost);

std::string quantifier_header(const Formula& f) {
  switch (f->kind) {
    case Fk::Forall: return "all " + f->name + ". ";
    case Fk::Exists: return "ex " + f->name + ". ";
    case Fk::SOExists: return "EX2 " + f->name + "/" + std::to_string(f->so_arity) + ". ";
    case Fk::SOForall: return "ALL2 " + f->name + "/" + std::to_string(f->so_arity) + ". ";
    case Fk::ExistsInj: return "EXINJ " + f->name + ". ";
    default: return "EXFUN " + f->name + ". ";
  }
}

std::string print_rec(const Formula& f, int min_prec, bool rightmost) {
  if (is_quantifier(f->kind)) {
    std::string body = quantifier_header(f) + print_rec(f->lhs, 0, true);
    return rightmost ? body : "(" + body + ")";
  }
  switch (f->kind) {
    case Fk::True: return "true";
    case Fk::False: return "false";
    case Fk::Rel:
    case Fk::SOAtom:
      return f->name + args_text(f->terms);
    case Fk::Bit: return "BIT" + args_text(f->terms);
    case Fk::Suc: return "suc" + args_text(f->terms);
    case Fk::Eq:
    case Fk::Le:
    case Fk::Lt: {
      const char* op = f->kind == Fk::Eq ? " = " : (f->kind == Fk::Le ? " <= " : " < ");
      std::string out = print_term(f->terms[0]) + op + print_term(f->terms[1]);
      // Comparisons read badly right after '!', so that context forces parens
      // via the Not case below; in binary contexts they are ordinary atoms.
      return out;
    }
    case Fk::Not: {
      Fk ck = f->lhs->kind;
      bool bare = ck == Fk::Rel || ck == Fk::SOAtom || ck == Fk::Bit || ck == Fk::Suc ||
                  ck == Fk::True || ck == Fk::False || ck == Fk::Not;
      if (bare) return "!" + print_rec(f->lhs, 4, false);
      return "!(" + print_rec(f->lhs, 0, true) + ")";
    }
    case Fk::And:
    case Fk::Or:
    case Fk::Implies: {
      int p = prec(f->kind);
      const char* op = f->kind == Fk::And ? " & " : (f->kind == Fk::Or ? " | " : " -> ");
      // Right-assoc for ->, left-assoc for & and |.
      int lmin = f->kind == Fk::Implies ? p + 1 : p;
      int rmin = f->kind == Fk::Implies ? p : p + 1;
      std::string out =
          print_rec(f->lhs, lmin, false) + op + print_rec(f->rhs, rmin, rightmost);
      return p < min_prec ? "(" + out + ")" : out;
    }
    default:
      return "?";
  }
}

}  // namespace

std::string print_formula(const Formula& f) { return print_rec(f, 0, true); }

}  // namespace fopkit
