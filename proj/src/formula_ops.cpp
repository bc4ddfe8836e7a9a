#include "fopkit/formula_ops.hpp"

#include <optional>

#include "fopkit/errors.hpp"

namespace fopkit {

std::string FreshNames::fresh() {
  for (;;) {
    std::string candidate = "_v" + std::to_string(next_id++);
    if (used.insert(candidate).second) return candidate;
  }
}

namespace {

bool numeric_atom(Fk k) {
  return k == Fk::Eq || k == Fk::Le || k == Fk::Lt || k == Fk::Bit || k == Fk::Suc;
}

bool term_mentions_const(const Term& t) {
  if (t.kind == TermKind::Const) return true;
  for (const auto& a : t.args)
    if (term_mentions_const(a)) return true;
  return false;
}

void require_elaborated(const Formula& f, const char* op) {
  if (!is_elaborated(f))
    fail(Errc::NonElaboratedInput, std::string(op) + " requires elaborated input");
}

bool numerical_rec(const Formula& f, bool allow_consts) {
  if (!f) return true;
  switch (f->kind) {
    case Fk::Rel:
    case Fk::SOAtom:
      return false;
    case Fk::Eq:
    case Fk::Le:
    case Fk::Lt:
    case Fk::Bit:
    case Fk::Suc:
      if (allow_consts) return true;
      for (const auto& t : f->terms)
        if (term_mentions_const(t)) return false;
      return true;
    default:
      return numerical_rec(f->lhs, allow_consts) && numerical_rec(f->rhs, allow_consts);
  }
}

}  // namespace

bool is_numerical(const Formula& f) {
  require_elaborated(f, "is_numerical");
  return numerical_rec(f, false);
}

bool is_guard(const Formula& f) {
  require_elaborated(f, "is_guard");
  return numerical_rec(f, true);
}

namespace {

void term_names(const Term& t, std::set<std::string>& out) {
  if (t.kind == TermKind::Var || t.kind == TermKind::App) out.insert(t.name);
  for (const auto& a : t.args) term_names(a, out);
}

Term subst_term(const Term& t, const std::map<std::string, Term>& map) {
  if (t.kind == TermKind::Var) {
    auto it = map.find(t.name);
    return it == map.end() ? t : it->second;
  }
  if (t.kind == TermKind::App) {
    Term out = t;
    for (auto& a : out.args) a = subst_term(a, map);
    return out;
  }
  return t;
}

Formula subst_rec(const Formula& f, const std::map<std::string, Term>& map,
                  FreshNames& fresh) {
  if (!f || map.empty()) return f;
  switch (f->kind) {
    case Fk::True:
    case Fk::False:
      return f;
    case Fk::Rel:
    case Fk::SOAtom:
    case Fk::Eq:
    case Fk::Le:
    case Fk::Lt:
    case Fk::Bit:
    case Fk::Suc: {
      auto n = std::make_shared<FormulaNode>(*f);
      for (auto& t : n->terms) t = subst_term(t, map);
      return n;
    }
    case Fk::Forall:
    case Fk::Exists: {
      std::map<std::string, Term> inner = map;
      inner.erase(f->name);
      if (inner.empty()) return f;
      bool capture = false;
      for (const auto& [from, to] : inner) {
        std::set<std::string> names;
        term_names(to, names);
        if (names.count(f->name)) capture = true;
      }
      std::string bound = f->name;
      if (capture) {
        bound = fresh.fresh();
        inner[f->name] = t_var(bound);
      }
      Formula body = subst_rec(f->lhs, inner, fresh);
      return f->kind == Fk::Forall ? f_forall(bound, std::move(body))
                                   : f_exists(bound, std::move(body));
    }
    case Fk::SOExists:
    case Fk::SOForall:
    case Fk::ExistsInj:
    case Fk::ExistsFun: {
      // A second-order binder can only capture function applications.
      bool capture = false;
      for (const auto& [from, to] : map) {
        std::set<std::string> names;
        term_names(to, names);
        if (names.count(f->name)) capture = true;
      }
      if (capture)
        fail(Errc::InvalidQuery,
             "substitution would capture second-order variable " + f->name);
      auto n = std::make_shared<FormulaNode>(*f);
      n->lhs = subst_rec(f->lhs, map, fresh);
      return n;
    }
    default: {
      auto n = std::make_shared<FormulaNode>(*f);
      n->lhs = subst_rec(f->lhs, map, fresh);
      n->rhs = subst_rec(f->rhs, map, fresh);
      return n;
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Term>& map) {
  FreshNames fresh;
  fresh.used = all_variable_names(f);
  for (const auto& [from, to] : map) term_names(to, fresh.used);
  return subst_rec(f, map, fresh);
}

Formula rename_so(const Formula& f, const std::map<std::string, std::string>& map) {
  if (!f || map.empty()) return f;
  auto n = std::make_shared<FormulaNode>(*f);
  if (f->kind == Fk::SOAtom || f->kind == Fk::SOExists || f->kind == Fk::SOForall ||
      f->kind == Fk::ExistsInj || f->kind == Fk::ExistsFun) {
    auto it = map.find(f->name);
    if (it != map.end()) n->name = it->second;
  }
  for (auto& t : n->terms) {
    if (t.kind == TermKind::App) {
      auto it = map.find(t.name);
      if (it != map.end()) t.name = it->second;
    }
  }
  n->lhs = rename_so(f->lhs, map);
  n->rhs = rename_so(f->rhs, map);
  return n;
}

Formula totality_axiom(const std::string& fn, FreshNames& fresh) {
  std::string a = fresh.fresh(), b = fresh.fresh();
  return f_forall(a, f_exists(b, f_so_atom(fn, {t_var(a), t_var(b)})));
}

Formula injectivity_axiom(const std::string& fn, FreshNames& fresh) {
  std::string u = fresh.fresh(), v = fresh.fresh(), w = fresh.fresh();
  return f_forall(
      u, f_forall(v, f_forall(w, f_implies(f_and(f_so_atom(fn, {t_var(u), t_var(w)}),
                                                 f_so_atom(fn, {t_var(v), t_var(w)})),
                                           f_eq(t_var(u), t_var(v))))));
}

Formula functionality_axiom(const std::string& fn, FreshNames& fresh) {
  std::string u = fresh.fresh(), v = fresh.fresh(), w = fresh.fresh();
  return f_forall(
      u, f_forall(v, f_forall(w, f_implies(f_and(f_so_atom(fn, {t_var(u), t_var(v)}),
                                                 f_so_atom(fn, {t_var(u), t_var(w)})),
                                           f_eq(t_var(v), t_var(w))))));
}

namespace {

// Innermost application in left-to-right term order, if any.
const Term* find_app(const Term& t) {
  for (const auto& a : t.args) {
    const Term* inner = find_app(a);
    if (inner) return inner;
  }
  return t.kind == TermKind::App ? &t : nullptr;
}

const Term* find_app(const std::vector<Term>& terms) {
  for (const auto& t : terms) {
    const Term* inner = find_app(t);
    if (inner) return inner;
  }
  return nullptr;
}

Term replace_term(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  Term out = t;
  for (auto& a : out.args) a = replace_term(a, from, to);
  return out;
}

Formula expand_apps(const Formula& atom, const std::set<std::string>& fn_scope,
                    FreshNames& fresh) {
  const Term* app = find_app(atom->terms);
  if (!app) return atom;
  if (!fn_scope.count(app->name))
    fail(Errc::FunctionTermOutsideBinder,
         "'" + app->name + "' is applied but no EXINJ/EXFUN binds it");
  Term picked = *app;
  std::string y = fresh.fresh();
  auto n = std::make_shared<FormulaNode>(*atom);
  for (auto& t : n->terms) t = replace_term(t, picked, t_var(y));
  std::vector<Term> graph_args = picked.args;
  graph_args.push_back(t_var(y));
  return f_exists(y, f_and(f_so_atom(picked.name, std::move(graph_args)),
                           expand_apps(n, fn_scope, fresh)));
}

Formula elab_rec(const Formula& f, std::set<std::string>& fn_scope, FreshNames& fresh) {
  if (!f) return f;
  switch (f->kind) {
    case Fk::ExistsInj:
    case Fk::ExistsFun: {
      Formula tot = totality_axiom(f->name, fresh);
      Formula law = f->kind == Fk::ExistsInj ? injectivity_axiom(f->name, fresh)
                                             : functionality_axiom(f->name, fresh);
      bool already = fn_scope.count(f->name) != 0;
      fn_scope.insert(f->name);
      Formula body = elab_rec(f->lhs, fn_scope, fresh);
      if (!already) fn_scope.erase(f->name);
      return f_so_exists(f->name, 2, f_and(f_and(std::move(tot), std::move(law)),
                                           std::move(body)));
    }
    case Fk::Rel:
    case Fk::SOAtom:
    case Fk::Eq:
    case Fk::Le:
    case Fk::Lt:
    case Fk::Bit:
    case Fk::Suc:
      return expand_apps(f, fn_scope, fresh);
    case Fk::True:
    case Fk::False:
      return f;
    default: {
      auto n = std::make_shared<FormulaNode>(*f);
      n->lhs = elab_rec(f->lhs, fn_scope, fresh);
      n->rhs = elab_rec(f->rhs, fn_scope, fresh);
      return n;
    }
  }
}

}  // namespace

Formula elaborate(const Formula& f) {
  FreshNames fresh;
  fresh.used = all_variable_names(f);
  std::set<std::string> fn_scope;
  return elab_rec(f, fn_scope, fresh);
}

Formula simplify(const Formula& f) {
  if (!f) return f;
  switch (f->kind) {
    case Fk::Not: {
      Formula s = simplify(f->lhs);
      switch (s->kind) {
        case Fk::True: return f_false();
        case Fk::False: return f_true();
        case Fk::Not: return s->lhs;
        case Fk::And: return simplify(f_or(f_not(s->lhs), f_not(s->rhs)));
        case Fk::Or: return simplify(f_and(f_not(s->lhs), f_not(s->rhs)));
        case Fk::Implies: return simplify(f_and(s->lhs, f_not(s->rhs)));
        default: return f_not(std::move(s));
      }
    }
    case Fk::And: {
      Formula l = simplify(f->lhs), r = simplify(f->rhs);
      if (l->kind == Fk::False || r->kind == Fk::False) return f_false();
      if (l->kind == Fk::True) return r;
      if (r->kind == Fk::True) return l;
      return f_and(std::move(l), std::move(r));
    }
    case Fk::Or: {
      Formula l = simplify(f->lhs), r = simplify(f->rhs);
      if (l->kind == Fk::True || r->kind == Fk::True) return f_true();
      if (l->kind == Fk::False) return r;
      if (r->kind == Fk::False) return l;
      return f_or(std::move(l), std::move(r));
    }
    case Fk::Implies: {
      Formula l = simplify(f->lhs), r = simplify(f->rhs);
      if (l->kind == Fk::False || r->kind == Fk::True) return f_true();
      if (l->kind == Fk::True) return r;
      if (r->kind == Fk::False) return simplify(f_not(std::move(l)));
      return f_implies(std::move(l), std::move(r));
    }
    case Fk::Forall:
    case Fk::Exists:
    case Fk::SOExists:
    case Fk::SOForall:
    case Fk::ExistsInj:
    case Fk::ExistsFun: {
      auto n = std::make_shared<FormulaNode>(*f);
      n->lhs = simplify(f->lhs);
      return n;
    }
    default:
      return f;
  }
}

namespace {

bool is_var(const Term& t, const std::string& name) {
  return t.kind == TermKind::Var && t.name == name;
}

bool matches_totality(const Formula& f, const std::string& fn) {
  if (!f || f->kind != Fk::Forall) return false;
  const std::string& a = f->name;
  const Formula& ex = f->lhs;
  if (ex->kind != Fk::Exists || ex->name == a) return false;
  const Formula& atom = ex->lhs;
  return atom->kind == Fk::SOAtom && atom->name == fn && atom->terms.size() == 2 &&
         is_var(atom->terms[0], a) && is_var(atom->terms[1], ex->name);
}

// law_kind 0: injectivity (f(u,w) & f(v,w) -> u = v)
// law_kind 1: functionality (f(u,v) & f(u,w) -> v = w)
bool matches_law(const Formula& f, const std::string& fn, int law_kind) {
  if (!f || f->kind != Fk::Forall) return false;
  const std::string& u = f->name;
  const Formula& q2 = f->lhs;
  if (q2->kind != Fk::Forall) return false;
  const std::string& v = q2->name;
  const Formula& q3 = q2->lhs;
  if (q3->kind != Fk::Forall) return false;
  const std::string& w = q3->name;
  if (u == v || u == w || v == w) return false;
  const Formula& imp = q3->lhs;
  if (imp->kind != Fk::Implies || imp->lhs->kind != Fk::And) return false;
  const Formula& a1 = imp->lhs->lhs;
  const Formula& a2 = imp->lhs->rhs;
  const Formula& eq = imp->rhs;
  if (a1->kind != Fk::SOAtom || a1->name != fn || a1->terms.size() != 2) return false;
  if (a2->kind != Fk::SOAtom || a2->name != fn || a2->terms.size() != 2) return false;
  if (eq->kind != Fk::Eq) return false;
  if (law_kind == 0)
    return is_var(a1->terms[0], u) && is_var(a1->terms[1], w) &&
           is_var(a2->terms[0], v) && is_var(a2->terms[1], w) &&
           is_var(eq->terms[0], u) && is_var(eq->terms[1], v);
  return is_var(a1->terms[0], u) && is_var(a1->terms[1], v) &&
         is_var(a2->terms[0], u) && is_var(a2->terms[1], w) &&
         is_var(eq->terms[0], v) && is_var(eq->terms[1], w);
}

}  // namespace

BinderPattern match_binder(const Formula& so_exists) {
  BinderPattern out;
  if (!so_exists || so_exists->kind != Fk::SOExists || so_exists->so_arity != 2)
    return out;
  const Formula& body = so_exists->lhs;
  if (body->kind != Fk::And || body->lhs->kind != Fk::And) return out;
  const Formula& tot = body->lhs->lhs;
  const Formula& law = body->lhs->rhs;
  if (!matches_totality(tot, so_exists->name)) return out;
  if (matches_law(law, so_exists->name, 0)) {
    out.kind = BinderPattern::Kind::Inj;
    out.rest = body->rhs;
  } else if (matches_law(law, so_exists->name, 1)) {
    out.kind = BinderPattern::Kind::Fun;
    out.rest = body->rhs;
  }
  return out;
}

}  // namespace fopkit
