#include "fopkit/query.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "fopkit/errors.hpp"
#include "fopkit/formula_ops.hpp"

namespace fopkit {

namespace {

constexpr uint64_t kScanLimit = 1ull << 26;

// x1, x2, ... -> 1-based index; 0 when the name is not a parameter.
int param_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') return 0;
  int value = 0;
  for (size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return 0;
    value = value * 10 + (name[i] - '0');
    if (value > 1000) return 0;
  }
  return name[1] == '0' ? 0 : value;
}

void check_component(const Formula& f, int budget, const std::string& what) {
  if (!is_elaborated(f))
    fail(Errc::InvalidQuery, what + ": function binders are not allowed in queries");
  FreeVars fv = free_vars(f);
  if (!fv.so.empty() || contains_so(f))
    fail(Errc::InvalidQuery, what + ": second-order quantifiers are not allowed in queries");
  for (const std::string& v : fv.fo) {
    int idx = param_index(v);
    if (idx == 0 || idx > budget)
      fail(Errc::InvalidQuery, what + ": free variable " + v + " is outside x1..x" +
                                   std::to_string(budget));
  }
}

// Splits a constant formula into per-position pin terms.  Shape: a
// conjunction of equalities x_i = t with t a source constant, 0, or max,
// covering every position exactly once.
void collect_pins(const Formula& f, const Vocabulary& source, int arity,
                  std::vector<Term>& pins, std::vector<bool>& seen,
                  const std::string& what) {
  if (f->kind == Fk::And) {
    collect_pins(f->lhs, source, arity, pins, seen, what);
    collect_pins(f->rhs, source, arity, pins, seen, what);
    return;
  }
  if (f->kind != Fk::Eq)
    fail(Errc::InvalidQuery, what + ": constant formulas must be conjunctions of equalities");
  const Term& lhs = f->terms[0];
  const Term& rhs = f->terms[1];
  if (lhs.kind != TermKind::Var)
    fail(Errc::InvalidQuery, what + ": equality must have a parameter on the left");
  int idx = param_index(lhs.name);
  if (idx == 0 || idx > arity)
    fail(Errc::InvalidQuery, what + ": " + lhs.name + " is outside x1..x" +
                                 std::to_string(arity));
  if (rhs.kind == TermKind::Const) {
    if (source.constant_index(rhs.name) < 0)
      fail(Errc::InvalidQuery, what + ": " + rhs.name + " is not a source constant");
  } else if (rhs.kind != TermKind::Zero && rhs.kind != TermKind::Max) {
    fail(Errc::InvalidQuery,
         what + ": right-hand side must be a source constant, 0, or max");
  }
  if (seen[idx - 1])
    fail(Errc::InvalidQuery, what + ": " + lhs.name + " is pinned twice");
  seen[idx - 1] = true;
  pins[idx - 1] = rhs;
}

int pin_value(const Term& t, const Structure& a) {
  switch (t.kind) {
    case TermKind::Const:
      return a.constant(a.vocab().constant_index(t.name));
    case TermKind::Zero:
      return 0;
    case TermKind::Max:
      return a.size() - 1;
    default:
      fail(Errc::InvalidQuery, "bad pin term");
  }
}

}  // namespace

std::string param_name(int i) { return "x" + std::to_string(i); }

Query::Query(VocabularyPtr source, VocabularyPtr target, int arity, Formula universe,
             std::vector<Formula> relation_formulas,
             std::vector<Formula> constant_formulas)
    : source_(std::move(source)),
      target_(std::move(target)),
      arity_(arity),
      universe_(std::move(universe)),
      relation_formulas_(std::move(relation_formulas)),
      constant_formulas_(std::move(constant_formulas)) {
  if (!source_ || !target_) fail(Errc::InvalidQuery, "query needs both vocabularies");
  if (arity_ < 1) fail(Errc::InvalidQuery, "query arity must be at least 1");
  for (const RelationSymbol& r : source_->relations())
    if (param_index(r.name) != 0)
      fail(Errc::InvalidQuery, "source relation " + r.name + " shadows a parameter name");
  for (const std::string& c : source_->constants())
    if (param_index(c) != 0)
      fail(Errc::InvalidQuery, "source constant " + c + " shadows a parameter name");
  if (relation_formulas_.size() != target_->relations().size())
    fail(Errc::InvalidQuery, "expected one formula per target relation");
  if (constant_formulas_.size() != target_->constants().size())
    fail(Errc::InvalidQuery, "expected one formula per target constant");
  if (!universe_) fail(Errc::InvalidQuery, "missing universe formula");
  check_component(universe_, arity_, "universe");
  for (size_t i = 0; i < relation_formulas_.size(); ++i) {
    const RelationSymbol& r = target_->relations()[i];
    if (!relation_formulas_[i]) fail(Errc::InvalidQuery, "missing formula for " + r.name);
    check_component(relation_formulas_[i], arity_ * r.arity, "relation " + r.name);
  }
  constant_tuples_.resize(constant_formulas_.size());
  for (size_t j = 0; j < constant_formulas_.size(); ++j) {
    const std::string& c = target_->constants()[j];
    if (!constant_formulas_[j]) fail(Errc::InvalidQuery, "missing formula for " + c);
    check_component(constant_formulas_[j], arity_, "constant " + c);
    std::vector<Term> pins(arity_);
    std::vector<bool> seen(arity_, false);
    collect_pins(constant_formulas_[j], *source_, arity_, pins, seen, "constant " + c);
    for (int i = 0; i < arity_; ++i)
      if (!seen[i])
        fail(Errc::InvalidQuery,
             "constant " + c + ": position x" + std::to_string(i + 1) + " is not pinned");
    constant_tuples_[j] = std::move(pins);
  }
}

Query identity_query(const VocabularyPtr& vocab) {
  std::vector<Formula> rels;
  for (const RelationSymbol& r : vocab->relations()) {
    std::vector<Term> args;
    for (int i = 1; i <= r.arity; ++i) args.push_back(t_var(param_name(i)));
    rels.push_back(f_rel(r.name, args));
  }
  std::vector<Formula> consts;
  for (const std::string& c : vocab->constants())
    consts.push_back(f_eq(t_var("x1"), t_const(c)));
  return Query(vocab, vocab, 1, f_true(), std::move(rels), std::move(consts));
}

std::vector<std::vector<int>> image_tuples(const Query& q, const Structure& a,
                                           const EvalOptions& opt) {
  if (!a.vocab().same_signature(*q.source()))
    fail(Errc::VocabularyMismatch, "structure is not over the query's source vocabulary");
  int n = a.size();
  if (sat_pow(n, q.arity()) > kScanLimit)
    fail(Errc::BudgetExceeded, "universe scan of " + std::to_string(n) + "^" +
                                   std::to_string(q.arity()) + " tuples");
  std::map<std::string, int> assignment;
  for (int i = 1; i <= q.arity(); ++i) assignment[param_name(i)] = 0;
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(q.arity(), 0);
  do {
    for (auto& [name, value] : assignment) value = tuple[param_index(name) - 1];
    if (eval_fo(a, q.universe(), assignment, {}, opt)) out.push_back(tuple);
  } while (next_tuple(tuple, n));
  return out;
}

Structure apply_query(const Query& q, const Structure& a, const EvalOptions& opt) {
  std::vector<std::vector<int>> tuples = image_tuples(q, a, opt);
  if (tuples.empty())
    fail(Errc::EmptyImageUniverse, "no tuple satisfies the universe formula");
  int m = static_cast<int>(tuples.size());
  int k = q.arity();
  Structure out = Structure::empty(q.target(), m);
  for (size_t ri = 0; ri < q.target()->relations().size(); ++ri) {
    const RelationSymbol& r = q.target()->relations()[ri];
    RelationTable& table = out.rel_mut(static_cast<int>(ri));
    std::map<std::string, int> assignment;
    for (int i = 1; i <= k * r.arity; ++i) assignment[param_name(i)] = 0;
    std::vector<int> idx(r.arity, 0);
    uint64_t rank = 0;
    do {
      for (auto& [name, value] : assignment) {
        int p = param_index(name) - 1;
        value = tuples[idx[p / k]][p % k];
      }
      if (eval_fo(a, q.relation_formula(static_cast<int>(ri)), assignment, {}, opt))
        table.set_rank(rank, true);
      ++rank;
    } while (next_tuple(idx, m));
  }
  for (size_t j = 0; j < q.target()->constants().size(); ++j) {
    std::vector<int> pinned(k);
    for (int i = 0; i < k; ++i) pinned[i] = pin_value(q.constant_tuple(static_cast<int>(j))[i], a);
    auto it = std::lower_bound(tuples.begin(), tuples.end(), pinned);
    if (it == tuples.end() || *it != pinned)
      fail(Errc::ConstantUndefined, "constant " + q.target()->constants()[j] +
                                        ": its tuple falls outside the image universe");
    out.set_constant(static_cast<int>(j), static_cast<int>(it - tuples.begin()));
  }
  return out;
}

namespace {

void flatten_or(const Formula& f, std::vector<Formula>& out) {
  if (f->kind == Fk::Or) {
    flatten_or(f->lhs, out);
    flatten_or(f->rhs, out);
  } else {
    out.push_back(f);
  }
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f->kind == Fk::And) {
    flatten_and(f->lhs, out);
    flatten_and(f->rhs, out);
  } else {
    out.push_back(f);
  }
}

bool is_source_literal(const Formula& f) {
  if (f->kind == Fk::Rel) return true;
  return f->kind == Fk::Not && f->lhs->kind == Fk::Rel;
}

// Per-disjunct numeric guard; the literal, when present, is ignored here.
// A disjunct with no literal is its own guard.
struct GuardedDisjunct {
  Formula guard;
  bool has_literal = false;
};

bool split_disjunct(const Formula& d, GuardedDisjunct& out, std::string& diagnosis,
                    const std::string& where) {
  std::vector<Formula> conjuncts;
  flatten_and(d, conjuncts);
  std::vector<Formula> guard_parts;
  int literals = 0;
  for (const Formula& c : conjuncts) {
    if (is_guard(c)) {
      guard_parts.push_back(c);
    } else if (is_source_literal(c)) {
      ++literals;
    } else {
      diagnosis = where + ": conjunct " + print_formula(c) +
                  " is neither a numeric guard nor a single source literal";
      return false;
    }
  }
  if (literals > 1) {
    diagnosis = where + ": a guarded disjunct may carry at most one source literal";
    return false;
  }
  out.guard = guard_parts.empty() ? f_true() : f_and_all(guard_parts);
  out.has_literal = literals == 1;
  return true;
}

}  // namespace

FopCheck is_fop(const Query& q, int size_bound, const EvalOptions& opt) {
  if (!is_numerical(q.universe()))
    return {false, "universe formula is not numerical"};
  std::vector<std::vector<Formula>> guards(q.target()->relations().size());
  for (size_t ri = 0; ri < q.target()->relations().size(); ++ri) {
    const std::string where = "relation " + q.target()->relations()[ri].name;
    std::vector<Formula> disjuncts;
    flatten_or(q.relation_formula(static_cast<int>(ri)), disjuncts);
    for (const Formula& d : disjuncts) {
      GuardedDisjunct gd;
      std::string diagnosis;
      if (!split_disjunct(d, gd, diagnosis, where)) return {false, diagnosis};
      guards[ri].push_back(gd.guard);
    }
  }
  // Overlap scan.  Guards see only numeric atoms and source constants, so a
  // relation-free structure suffices; constants still have to range over all
  // values.
  int n_consts = static_cast<int>(q.source()->constants().size());
  for (int n = 1; n <= size_bound; ++n) {
    Structure probe = Structure::empty(q.source(), n);
    std::vector<int> cvals(n_consts, 0);
    do {
      for (int c = 0; c < n_consts; ++c) probe.set_constant(c, cvals[c]);
      for (size_t ri = 0; ri < guards.size(); ++ri) {
        if (guards[ri].size() < 2) continue;
        int params = q.arity() * q.target()->relations()[ri].arity;
        if (sat_pow(n, params) > kScanLimit)
          fail(Errc::BudgetExceeded, "guard overlap scan");
        std::map<std::string, int> assignment;
        for (int i = 1; i <= params; ++i) assignment[param_name(i)] = 0;
        std::vector<int> tuple(params, 0);
        do {
          for (auto& [name, value] : assignment) value = tuple[param_index(name) - 1];
          int active = -1;
          for (size_t g = 0; g < guards[ri].size(); ++g) {
            if (!eval_fo(probe, guards[ri][g], assignment, {}, opt)) continue;
            if (active >= 0) {
              std::string tup;
              for (int v : tuple) tup += (tup.empty() ? "" : ",") + std::to_string(v);
              return {false, "relation " + q.target()->relations()[ri].name + ": guards " +
                                 std::to_string(active) + " and " + std::to_string(g) +
                                 " overlap at size " + std::to_string(n) + ", tuple (" +
                                 tup + ")"};
            }
            active = static_cast<int>(g);
          }
        } while (next_tuple(tuple, n));
      }
    } while (n_consts > 0 && next_tuple(cvals, n));
  }
  return {true, ""};
}

InjectivityReport check_injective(const Query& q, int min_size, int max_size,
                                  const EvalOptions& opt) {
  if (min_size < 1 || max_size < min_size)
    fail(Errc::OutOfRange, "size range must satisfy 1 <= min <= max");
  InjectivityReport report;
  report.min_size = min_size;
  report.max_size = max_size;
  // Key: output size + output encoding; value: input (size, enumeration index)
  // so collisions can reconstruct the earlier structure.
  std::unordered_map<std::string, std::pair<int, uint64_t>> seen;
  for (int n = min_size; n <= max_size; ++n) {
    StructureSpace space(q.source(), n);
    if (!space.count_exact()) fail(Errc::BudgetExceeded, "source space too large");
    uint64_t index = 0;
    Structure a = space.at(0);
    for (;;) {
      Structure b = apply_query(q, a, opt);
      ++report.inputs_checked;
      std::string key = std::to_string(b.size()) + ":" + encode(b);
      auto [it, inserted] = seen.emplace(std::move(key), std::make_pair(n, index));
      if (!inserted) {
        StructureSpace prior_space(q.source(), it->second.first);
        report.counterexample = {prior_space.at(it->second.second), a};
        return report;
      }
      ++index;
      if (!StructureSpace::advance(a)) break;
    }
  }
  report.injective = true;
  return report;
}

}  // namespace fopkit
