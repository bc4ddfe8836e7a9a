#include "fopkit/dual.hpp"

#include <set>
#include <unordered_set>

#include "fopkit/errors.hpp"
#include "fopkit/formula_ops.hpp"

namespace fopkit {

namespace {

bool contains_kind(const Formula& f, Fk kind) {
  if (!f) return false;
  if (f->kind == kind) return true;
  return contains_kind(f->lhs, kind) || contains_kind(f->rhs, kind);
}

bool is_atom(Fk kind) {
  return kind == Fk::Rel || kind == Fk::SOAtom || kind == Fk::Eq || kind == Fk::Le ||
         kind == Fk::Lt || kind == Fk::Bit || kind == Fk::Suc;
}

Formula remake_atom(const Formula& f, std::vector<Term> terms) {
  switch (f->kind) {
    case Fk::Rel: return f_rel(f->name, std::move(terms));
    case Fk::SOAtom: return f_so_atom(f->name, std::move(terms));
    case Fk::Eq: return f_eq(terms[0], terms[1]);
    case Fk::Le: return f_le(terms[0], terms[1]);
    case Fk::Lt: return f_lt(terms[0], terms[1]);
    case Fk::Bit: return f_bit(terms[0], terms[1]);
    case Fk::Suc: return f_suc(terms[0], terms[1]);
    default: fail(Errc::InvalidQuery, "not an atom");
  }
}

int find_term(const std::vector<Term>& terms, TermKind kind) {
  for (size_t i = 0; i < terms.size(); ++i)
    if (terms[i].kind == kind) return static_cast<int>(i);
  return -1;
}

// Shared state for one syntactic_dual run.
struct Translator {
  const Query& q;
  int k;
  bool fast;  // arity 1 with universe formula `true`: images are re-labelings
  FreshNames fresh;
  std::map<std::string, std::vector<Term>> var_map;
  std::map<std::string, std::string> so_map;
  std::set<std::string> noted;
  std::vector<std::string> notes;

  void note(const std::string& s) {
    if (noted.insert(s).second) notes.push_back(s);
  }

  // The image universe is ordered by rank, so 0/max/suc speak about ranks,
  // not elements.  Rewriting them into their order-theoretic definitions
  // before translation lets the ordinary <=/< rules take over.
  Formula eliminate_rank_atoms(const Formula& f) {
    if (f->kind == Fk::True || f->kind == Fk::False) return f;
    if (is_atom(f->kind)) {
      int zi = find_term(f->terms, TermKind::Zero);
      if (zi >= 0) {
        note("0 rewritten as the least universe element");
        std::string z = fresh.fresh(), w = fresh.fresh();
        std::vector<Term> terms = f->terms;
        terms[zi] = t_var(z);
        Formula least = f_forall(w, f_le(t_var(z), t_var(w)));
        return f_exists(z, f_and(least, eliminate_rank_atoms(remake_atom(f, terms))));
      }
      int mi = find_term(f->terms, TermKind::Max);
      if (mi >= 0) {
        note("max rewritten as the greatest universe element");
        std::string z = fresh.fresh(), w = fresh.fresh();
        std::vector<Term> terms = f->terms;
        terms[mi] = t_var(z);
        Formula greatest = f_forall(w, f_le(t_var(w), t_var(z)));
        return f_exists(z, f_and(greatest, eliminate_rank_atoms(remake_atom(f, terms))));
      }
      if (f->kind == Fk::Suc) {
        note("suc rewritten as order adjacency");
        std::string u = fresh.fresh();
        Formula between =
            f_exists(u, f_and(f_lt(f->terms[0], t_var(u)), f_lt(t_var(u), f->terms[1])));
        return f_and(f_lt(f->terms[0], f->terms[1]), f_not(between));
      }
      return f;
    }
    switch (f->kind) {
      case Fk::Not: return f_not(eliminate_rank_atoms(f->lhs));
      case Fk::And: return f_and(eliminate_rank_atoms(f->lhs), eliminate_rank_atoms(f->rhs));
      case Fk::Or: return f_or(eliminate_rank_atoms(f->lhs), eliminate_rank_atoms(f->rhs));
      case Fk::Implies:
        return f_implies(eliminate_rank_atoms(f->lhs), eliminate_rank_atoms(f->rhs));
      case Fk::Forall: return f_forall(f->name, eliminate_rank_atoms(f->lhs));
      case Fk::Exists: return f_exists(f->name, eliminate_rank_atoms(f->lhs));
      case Fk::SOExists:
        return f_so_exists(f->name, f->so_arity, eliminate_rank_atoms(f->lhs));
      case Fk::SOForall:
        return f_so_forall(f->name, f->so_arity, eliminate_rank_atoms(f->lhs));
      default: fail(Errc::NonElaboratedInput, "unexpected node");
    }
  }

  std::vector<Term> components(const std::string& var) {
    auto it = var_map.find(var);
    if (it != var_map.end()) return it->second;
    return allocate(var);
  }

  // Component names: the variable itself when k = 1, else var_1..var_k.
  // Distinct variables always yield distinct candidates (the suffix holds no
  // underscore), so only vocabulary and reserved-word clashes force a fresh
  // name.  Original names never survive translation, so reusing them is safe.
  std::vector<Term> allocate(const std::string& var) {
    std::vector<Term> comps;
    for (int i = 1; i <= k; ++i) {
      std::string candidate = k == 1 ? var : var + "_" + std::to_string(i);
      if (q.source()->has_symbol(candidate) || is_reserved_symbol(candidate))
        candidate = fresh.fresh();
      else
        fresh.used.insert(candidate);
      comps.push_back(t_var(candidate));
    }
    var_map[var] = comps;
    return comps;
  }

  std::vector<Term> map_term(const Term& t) {
    switch (t.kind) {
      case TermKind::Var:
        if (fast) return {t};
        return components(t.name);
      case TermKind::Const: {
        int j = q.target()->constant_index(t.name);
        if (j < 0) fail(Errc::UnknownSymbol, "constant " + t.name + " is not in the target vocabulary");
        note("constant " + t.name + " expanded through its defining tuple");
        if (fast) return {q.constant_tuple(j)[0]};
        return q.constant_tuple(j);
      }
      case TermKind::Zero:
      case TermKind::Max:
        if (fast) return {t};
        fail(Errc::UnsupportedNumericAtom, "rank literal survived elimination");
      case TermKind::App:
        fail(Errc::NonElaboratedInput, "function application");
    }
    fail(Errc::NonElaboratedInput, "bad term");
  }

  Formula conj_eq(const std::vector<Term>& s, const std::vector<Term>& t) {
    std::vector<Formula> parts;
    for (int i = 0; i < k; ++i) parts.push_back(f_eq(s[i], t[i]));
    return f_and_all(parts);
  }

  Formula lex_lt(const std::vector<Term>& s, const std::vector<Term>& t) {
    std::vector<Formula> cases;
    for (int i = 0; i < k; ++i) {
      std::vector<Formula> parts;
      for (int j = 0; j < i; ++j) parts.push_back(f_eq(s[j], t[j]));
      parts.push_back(f_lt(s[i], t[i]));
      cases.push_back(f_and_all(parts));
    }
    return f_or_all(cases);
  }

  // Universe formula instantiated at the components of one image variable.
  Formula guard_for(const std::vector<Term>& comps) {
    std::map<std::string, Term> m;
    for (int i = 0; i < k; ++i) m[param_name(i + 1)] = comps[i];
    return substitute(q.universe(), m);
  }

  // Second-order names keep their own namespace; only source-vocabulary and
  // reserved-word clashes need renaming.
  std::string pick_so_name(const std::string& name) {
    std::string candidate = name;
    int suffix = 0;
    while (q.source()->has_symbol(candidate) || is_reserved_symbol(candidate))
      candidate = name + "_" + std::to_string(++suffix);
    if (candidate != name)
      note("second-order variable " + name + " renamed to " + candidate);
    return candidate;
  }

  Formula translate(const Formula& f) {
    switch (f->kind) {
      case Fk::True:
      case Fk::False:
        return f;
      case Fk::Rel: {
        int ri = q.target()->relation_index(f->name);
        if (ri < 0)
          fail(Errc::UnknownSymbol, "relation " + f->name + " is not in the target vocabulary");
        std::map<std::string, Term> m;
        int p = 0;
        for (const Term& t : f->terms)
          for (const Term& c : map_term(t)) m[param_name(++p)] = c;
        return substitute(q.relation_formula(ri), m);
      }
      case Fk::SOAtom: {
        auto it = so_map.find(f->name);
        std::vector<Term> terms;
        for (const Term& t : f->terms)
          for (const Term& c : map_term(t)) terms.push_back(c);
        return f_so_atom(it == so_map.end() ? f->name : it->second, std::move(terms));
      }
      case Fk::Eq: {
        if (fast) return f_eq(map_term(f->terms[0])[0], map_term(f->terms[1])[0]);
        return conj_eq(map_term(f->terms[0]), map_term(f->terms[1]));
      }
      case Fk::Le: {
        if (fast) return f_le(map_term(f->terms[0])[0], map_term(f->terms[1])[0]);
        std::vector<Term> s = map_term(f->terms[0]), t = map_term(f->terms[1]);
        if (k == 1) return f_le(s[0], t[0]);
        note("<= expanded into the lexicographic order on tuples");
        return f_or(lex_lt(s, t), conj_eq(s, t));
      }
      case Fk::Lt: {
        if (fast) return f_lt(map_term(f->terms[0])[0], map_term(f->terms[1])[0]);
        std::vector<Term> s = map_term(f->terms[0]), t = map_term(f->terms[1]);
        if (k == 1) return f_lt(s[0], t[0]);
        note("< expanded into the lexicographic order on tuples");
        return lex_lt(s, t);
      }
      case Fk::Bit: {
        if (fast) return f_bit(map_term(f->terms[0])[0], map_term(f->terms[1])[0]);
        fail(Errc::UnsupportedNumericAtom, "BIT survived the upfront check");
      }
      case Fk::Suc: {
        if (fast) return f_suc(map_term(f->terms[0])[0], map_term(f->terms[1])[0]);
        fail(Errc::UnsupportedNumericAtom, "suc survived elimination");
      }
      case Fk::Not: return f_not(translate(f->lhs));
      case Fk::And: return f_and(translate(f->lhs), translate(f->rhs));
      case Fk::Or: return f_or(translate(f->lhs), translate(f->rhs));
      case Fk::Implies: return f_implies(translate(f->lhs), translate(f->rhs));
      case Fk::Forall:
      case Fk::Exists: {
        if (fast) {
          Formula body = translate(f->lhs);
          return f->kind == Fk::Forall ? f_forall(f->name, body) : f_exists(f->name, body);
        }
        auto saved = var_map.find(f->name) != var_map.end()
                         ? std::optional<std::vector<Term>>(var_map[f->name])
                         : std::nullopt;
        var_map.erase(f->name);
        std::vector<Term> comps = allocate(f->name);
        Formula body = translate(f->lhs);
        if (saved) var_map[f->name] = *saved; else var_map.erase(f->name);
        bool trivial = q.universe()->kind == Fk::True;
        Formula inner;
        if (f->kind == Fk::Forall)
          inner = trivial ? body : f_implies(guard_for(comps), body);
        else
          inner = trivial ? body : f_and(guard_for(comps), body);
        for (int i = k - 1; i >= 0; --i)
          inner = f->kind == Fk::Forall ? f_forall(comps[i].name, inner)
                                        : f_exists(comps[i].name, inner);
        if (!trivial) note("quantifiers restricted to the image universe");
        return inner;
      }
      case Fk::SOExists:
      case Fk::SOForall: {
        std::string new_name = pick_so_name(f->name);
        auto saved = so_map.find(f->name) != so_map.end()
                         ? std::optional<std::string>(so_map[f->name])
                         : std::nullopt;
        so_map[f->name] = new_name;
        Formula body = translate(f->lhs);
        if (saved) so_map[f->name] = *saved; else so_map.erase(f->name);
        int arity = fast ? f->so_arity : f->so_arity * k;
        if (!fast && k > 1)
          note("second-order arities multiplied by the query arity");
        return f->kind == Fk::SOExists ? f_so_exists(new_name, arity, body)
                                       : f_so_forall(new_name, arity, body);
      }
      case Fk::ExistsInj:
      case Fk::ExistsFun:
        fail(Errc::NonElaboratedInput, "function binder");
    }
    fail(Errc::NonElaboratedInput, "bad node");
  }
};

}  // namespace

DualResult syntactic_dual(const Query& q, const Formula& theta) {
  if (!theta || !is_elaborated(theta))
    fail(Errc::NonElaboratedInput, "the formula must be elaborated first");
  bool fast = q.arity() == 1 && q.universe()->kind == Fk::True;
  if (!fast && contains_kind(theta, Fk::Bit))
    fail(Errc::UnsupportedNumericAtom,
         "BIT speaks about element values; image re-indexing does not preserve them");
  Translator t{q, q.arity(), fast, {}, {}, {}, {}, {}};
  t.fresh.used = all_variable_names(theta);
  for (const RelationSymbol& r : q.source()->relations()) t.fresh.used.insert(r.name);
  for (const std::string& c : q.source()->constants()) t.fresh.used.insert(c);
  Formula prepared = fast ? theta : t.eliminate_rank_atoms(theta);
  Formula out = t.translate(prepared);
  return {out, std::move(t.notes)};
}

bool semantic_dual_eval(const Query& q, const Formula& theta, const Structure& a,
                        const EvalOptions& opt) {
  return eval_so(apply_query(q, a, opt), theta, opt);
}

namespace {

uint64_t image_size_for(const Query& q, int m, const EvalOptions& opt) {
  return image_tuples(q, Structure::empty(q.source(), m), opt).size();
}

void require_enumerable(const StructureSpace& space, const EvalOptions& opt) {
  if (!space.count_exact() || space.count() > opt.budget)
    fail(Errc::BudgetExceeded, "structure sweep of " +
                                   (space.count_exact() ? std::to_string(space.count())
                                                        : std::string("more than 2^64")) +
                                   " structures exceeds the budget");
}

}  // namespace

std::optional<Structure> image_membership(const Query& q, const Structure& b,
                                          int max_preimage_size, const EvalOptions& opt) {
  if (!b.vocab().same_signature(*q.target()))
    fail(Errc::VocabularyMismatch, "structure is not over the query's target vocabulary");
  if (max_preimage_size <= 0) max_preimage_size = b.size();
  bool numeric = is_numerical(q.universe());
  std::optional<Structure> found;
  for (int m = 1; m <= max_preimage_size && !found; ++m) {
    if (numeric && image_size_for(q, m, opt) != static_cast<uint64_t>(b.size())) continue;
    require_enumerable(StructureSpace(q.source(), m), opt);
    for_each_structure(q.source(), m, [&](const Structure& a) {
      try {
        if (apply_query(q, a, opt) == b) {
          found = a;
          return false;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::EmptyImageUniverse) throw;
      }
      return true;
    });
  }
  return found;
}

CharacteristicReport verify_characteristic(const Formula& beta, const Query& q,
                                           int size_bound, const EvalOptions& opt) {
  Formula sentence = elaborate(beta);
  bool numeric = is_numerical(q.universe());
  CharacteristicReport report;
  report.max_size = size_bound;
  for (int s = 1; s <= size_bound; ++s) {
    // All images of size s reachable from sources no larger than s, keyed by
    // encoding.  Matches image_membership's default search range.
    std::unordered_set<std::string> images;
    for (int m = 1; m <= s; ++m) {
      if (numeric && image_size_for(q, m, opt) != static_cast<uint64_t>(s)) continue;
      require_enumerable(StructureSpace(q.source(), m), opt);
      for_each_structure(q.source(), m, [&](const Structure& a) {
        try {
          Structure out = apply_query(q, a, opt);
          if (out.size() == s) images.insert(encode(out));
        } catch (const Error& e) {
          if (e.code() != Errc::EmptyImageUniverse) throw;
        }
        return true;
      });
    }
    require_enumerable(StructureSpace(q.target(), s), opt);
    bool done = false;
    for_each_structure(q.target(), s, [&](const Structure& b) {
      bool claimed = eval_so(b, sentence, opt);
      bool actual = images.count(encode(b)) != 0;
      if (claimed != actual) {
        report.counterexample = b;
        report.counterexample_satisfies_sentence = claimed;
        report.counterexample_in_image = actual;
        done = true;
        return false;
      }
      return true;
    });
    if (done) return report;
  }
  report.verified = true;
  return report;
}

}  // namespace fopkit
