#include "fopkit/eval.hpp"

#include <algorithm>
#include <numeric>

#include "fopkit/errors.hpp"
#include "fopkit/formula_ops.hpp"

namespace fopkit {

namespace {

struct Env {
  const Structure& a;
  const EvalOptions& opt;
  std::vector<std::pair<const std::string*, int>> fo;
  std::vector<std::pair<const std::string*, const RelationTable*>> so;
};

int eval_term(const Term& t, Env& env) {
  switch (t.kind) {
    case TermKind::Var:
      for (auto it = env.fo.rbegin(); it != env.fo.rend(); ++it)
        if (*it->first == t.name) return it->second;
      fail(Errc::UnassignedFreeVariable, "variable " + t.name);
    case TermKind::Const: {
      int idx = env.a.vocab().constant_index(t.name);
      if (idx < 0) fail(Errc::UnknownSymbol, "constant " + t.name);
      return env.a.constant(idx);
    }
    case TermKind::Zero:
      return 0;
    case TermKind::Max:
      return env.a.size() - 1;
    case TermKind::App:
      fail(Errc::NonElaboratedInput, "function application in evaluation");
  }
  fail(Errc::NonElaboratedInput, "bad term");
}

bool eval_node(const Formula& f, Env& env);

bool eval_so_exists(const Formula& f, Env& env) {
  int n = env.a.size();
  if (env.opt.binder_opt) {
    BinderPattern pat = match_binder(f);
    if (pat.kind == BinderPattern::Kind::Inj) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      RelationTable table(2, n);
      env.so.emplace_back(&f->name, &table);
      bool found = false;
      do {
        table.clear();
        for (int i = 0; i < n; ++i) table.set_rank(static_cast<uint64_t>(i) * n + perm[i], true);
        if (eval_node(pat.rest, env)) { found = true; break; }
      } while (std::next_permutation(perm.begin(), perm.end()));
      env.so.pop_back();
      return found;
    }
    if (pat.kind == BinderPattern::Kind::Fun) {
      std::vector<int> fn(n, 0);
      RelationTable table(2, n);
      env.so.emplace_back(&f->name, &table);
      bool found = false;
      do {
        table.clear();
        for (int i = 0; i < n; ++i) table.set_rank(static_cast<uint64_t>(i) * n + fn[i], true);
        if (eval_node(pat.rest, env)) { found = true; break; }
      } while (next_tuple(fn, n));
      env.so.pop_back();
      return found;
    }
  }
  RelationTable table(f->so_arity, n);
  env.so.emplace_back(&f->name, &table);
  bool found = false;
  do {
    if (eval_node(f->lhs, env)) { found = true; break; }
  } while (table.increment());
  env.so.pop_back();
  return found;
}

bool eval_node(const Formula& f, Env& env) {
  switch (f->kind) {
    case Fk::True: return true;
    case Fk::False: return false;
    case Fk::Rel: {
      int idx = env.a.vocab().relation_index(f->name);
      if (idx < 0) fail(Errc::UnknownSymbol, "relation " + f->name);
      const RelationTable& t = env.a.rel(idx);
      if (t.arity() != static_cast<int>(f->terms.size()))
        fail(Errc::ArityMismatch, "relation " + f->name);
      uint64_t r = 0;
      for (const auto& term : f->terms)
        r = r * static_cast<uint64_t>(env.a.size()) +
            static_cast<uint64_t>(eval_term(term, env));
      return t.test_rank(r);
    }
    case Fk::SOAtom: {
      const RelationTable* t = nullptr;
      for (auto it = env.so.rbegin(); it != env.so.rend(); ++it)
        if (*it->first == f->name) { t = it->second; break; }
      if (!t) fail(Errc::UnassignedFreeVariable, "second-order variable " + f->name);
      if (t->arity() != static_cast<int>(f->terms.size()))
        fail(Errc::ArityMismatch, "second-order variable " + f->name);
      uint64_t r = 0;
      for (const auto& term : f->terms)
        r = r * static_cast<uint64_t>(env.a.size()) +
            static_cast<uint64_t>(eval_term(term, env));
      return t->test_rank(r);
    }
    case Fk::Eq: return eval_term(f->terms[0], env) == eval_term(f->terms[1], env);
    case Fk::Le: return eval_term(f->terms[0], env) <= eval_term(f->terms[1], env);
    case Fk::Lt: return eval_term(f->terms[0], env) < eval_term(f->terms[1], env);
    case Fk::Bit: {
      int x = eval_term(f->terms[0], env);
      int j = eval_term(f->terms[1], env);
      return j < 63 && ((static_cast<uint64_t>(x) >> j) & 1) != 0;
    }
    case Fk::Suc:
      return eval_term(f->terms[1], env) == eval_term(f->terms[0], env) + 1;
    case Fk::Not: return !eval_node(f->lhs, env);
    case Fk::And: return eval_node(f->lhs, env) && eval_node(f->rhs, env);
    case Fk::Or: return eval_node(f->lhs, env) || eval_node(f->rhs, env);
    case Fk::Implies: return !eval_node(f->lhs, env) || eval_node(f->rhs, env);
    case Fk::Forall: {
      env.fo.emplace_back(&f->name, 0);
      bool ok = true;
      for (int v = 0; v < env.a.size() && ok; ++v) {
        env.fo.back().second = v;
        ok = eval_node(f->lhs, env);
      }
      env.fo.pop_back();
      return ok;
    }
    case Fk::Exists: {
      env.fo.emplace_back(&f->name, 0);
      bool found = false;
      for (int v = 0; v < env.a.size() && !found; ++v) {
        env.fo.back().second = v;
        found = eval_node(f->lhs, env);
      }
      env.fo.pop_back();
      return found;
    }
    case Fk::SOExists:
      return eval_so_exists(f, env);
    case Fk::SOForall: {
      RelationTable table(f->so_arity, env.a.size());
      env.so.emplace_back(&f->name, &table);
      bool ok = true;
      do {
        ok = eval_node(f->lhs, env);
      } while (ok && table.increment());
      env.so.pop_back();
      return ok;
    }
    case Fk::ExistsInj:
    case Fk::ExistsFun:
      fail(Errc::NonElaboratedInput, "function binder in evaluation");
  }
  fail(Errc::NonElaboratedInput, "bad formula node");
}

uint64_t sat_factorial(int n) {
  uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r = sat_mul(r, static_cast<uint64_t>(i));
  return r;
}

uint64_t estimate_rec(const Formula& f, int n, const EvalOptions& opt) {
  if (!f) return 1;
  switch (f->kind) {
    case Fk::SOExists: {
      if (opt.binder_opt) {
        BinderPattern pat = match_binder(f);
        if (pat.kind == BinderPattern::Kind::Inj)
          return sat_mul(sat_factorial(n), estimate_rec(pat.rest, n, opt));
        if (pat.kind == BinderPattern::Kind::Fun)
          return sat_mul(sat_pow(n, n), estimate_rec(pat.rest, n, opt));
      }
      uint64_t cells = sat_pow(n, f->so_arity);
      uint64_t factor = cells >= 64 ? UINT64_MAX : (1ull << cells);
      return sat_mul(factor, estimate_rec(f->lhs, n, opt));
    }
    case Fk::SOForall: {
      uint64_t cells = sat_pow(n, f->so_arity);
      uint64_t factor = cells >= 64 ? UINT64_MAX : (1ull << cells);
      return sat_mul(factor, estimate_rec(f->lhs, n, opt));
    }
    case Fk::Forall:
    case Fk::Exists:
      return contains_so(f->lhs)
                 ? sat_mul(static_cast<uint64_t>(n), estimate_rec(f->lhs, n, opt))
                 : 1;
    case Fk::And:
    case Fk::Or:
    case Fk::Implies: {
      uint64_t l = estimate_rec(f->lhs, n, opt);
      uint64_t r = estimate_rec(f->rhs, n, opt);
      uint64_t sum = l + r;
      return sum < l ? UINT64_MAX : sum;
    }
    case Fk::Not:
      return estimate_rec(f->lhs, n, opt);
    default:
      return 1;
  }
}

void check_budget(int n, const Formula& f, const EvalOptions& opt) {
  uint64_t est = estimate_rec(f, n, opt);
  if (est > opt.budget)
    fail(Errc::BudgetExceeded, "estimated " + std::to_string(est) +
                                   " interpretations exceeds budget " +
                                   std::to_string(opt.budget));
}

}  // namespace

uint64_t estimate_interpretations(int universe_size, const Formula& f,
                                  const EvalOptions& opt) {
  return estimate_rec(f, universe_size, opt);
}

bool eval_fo(const Structure& a, const Formula& f,
             const std::map<std::string, int>& assignment,
             const std::map<std::string, RelationTable>& so_assignment,
             const EvalOptions& opt) {
  if (!is_elaborated(f)) fail(Errc::NonElaboratedInput, "eval requires elaborated input");
  check_budget(a.size(), f, opt);
  Env env{a, opt, {}, {}};
  for (const auto& [name, value] : assignment) {
    if (value < 0 || value >= a.size())
      fail(Errc::OutOfRange, "assignment " + name + " = " + std::to_string(value));
    env.fo.emplace_back(&name, value);
  }
  for (const auto& [name, table] : so_assignment) env.so.emplace_back(&name, &table);
  return eval_node(f, env);
}

bool eval_so(const Structure& a, const Formula& sentence, const EvalOptions& opt) {
  if (!is_elaborated(sentence))
    fail(Errc::NonElaboratedInput, "eval requires elaborated input");
  FreeVars fv = free_vars(sentence);
  if (!fv.fo.empty() || !fv.so.empty())
    fail(Errc::FreeVariableInSentence, "free variable '" +
                                           (fv.fo.empty() ? *fv.so.begin() : *fv.fo.begin()) +
                                           "'");
  check_budget(a.size(), sentence, opt);
  Env env{a, opt, {}, {}};
  return eval_node(sentence, env);
}

std::vector<Structure> models(const VocabularyPtr& vocab, int size,
                              const Formula& sentence, const EvalOptions& opt) {
  std::vector<Structure> out;
  for_each_structure(vocab, size, [&](const Structure& s) {
    if (eval_so(s, sentence, opt)) out.push_back(s);
    return true;
  });
  return out;
}

namespace {

bool has_so_quantifier(const Formula& f) {
  if (!f) return false;
  if (f->kind == Fk::SOExists || f->kind == Fk::SOForall || f->kind == Fk::ExistsInj ||
      f->kind == Fk::ExistsFun)
    return true;
  return has_so_quantifier(f->lhs) || has_so_quantifier(f->rhs);
}

bool witness_rec(const Formula& f, Env& env, Witness& witness) {
  if (f->kind != Fk::SOExists) {
    if (has_so_quantifier(f))
      fail(Errc::NotExistentialPrefix,
           "sentence is not an existential second-order prefix over a first-order matrix");
    return eval_node(f, env);
  }
  int n = env.a.size();
  auto try_tables = [&](const Formula& rest, auto&& enumerate) {
    RelationTable table(2, n);
    env.so.emplace_back(&f->name, &table);
    bool found = enumerate(table, rest);
    env.so.pop_back();
    return found;
  };
  if (env.opt.binder_opt) {
    BinderPattern pat = match_binder(f);
    if (pat.kind == BinderPattern::Kind::Inj) {
      bool found = try_tables(pat.rest, [&](RelationTable& table, const Formula& rest) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          table.clear();
          for (int i = 0; i < n; ++i)
            table.set_rank(static_cast<uint64_t>(i) * n + perm[i], true);
          if (witness_rec(rest, env, witness)) {
            witness.sets.emplace_back(f->name, table);
            return true;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
      });
      return found;
    }
    if (pat.kind == BinderPattern::Kind::Fun) {
      bool found = try_tables(pat.rest, [&](RelationTable& table, const Formula& rest) {
        std::vector<int> fn(n, 0);
        do {
          table.clear();
          for (int i = 0; i < n; ++i)
            table.set_rank(static_cast<uint64_t>(i) * n + fn[i], true);
          if (witness_rec(rest, env, witness)) {
            witness.sets.emplace_back(f->name, table);
            return true;
          }
        } while (next_tuple(fn, n));
        return false;
      });
      return found;
    }
  }
  RelationTable table(f->so_arity, n);
  env.so.emplace_back(&f->name, &table);
  bool found = false;
  do {
    if (witness_rec(f->lhs, env, witness)) {
      witness.sets.emplace_back(f->name, table);
      found = true;
      break;
    }
  } while (table.increment());
  env.so.pop_back();
  return found;
}

}  // namespace

std::optional<Witness> find_witness(const Structure& a, const Formula& sentence,
                                    const EvalOptions& opt) {
  if (!is_elaborated(sentence))
    fail(Errc::NonElaboratedInput, "find_witness requires elaborated input");
  FreeVars fv = free_vars(sentence);
  if (!fv.fo.empty() || !fv.so.empty())
    fail(Errc::FreeVariableInSentence, "sentence required");
  check_budget(a.size(), sentence, opt);
  Env env{a, opt, {}, {}};
  Witness witness;
  if (!witness_rec(sentence, env, witness)) return std::nullopt;
  std::reverse(witness.sets.begin(), witness.sets.end());
  return witness;
}

}  // namespace fopkit
