#pragma once

// Seeded random formula generator for round-trip testing.  Grows a tree in
// the full grammar: every connective, both quantifier families, function
// binders with application terms, and the numeric atoms.  Bound names are
// derived from the nesting depth, so the output never shadows.
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fopkit/formula.hpp"
#include "fopkit/vocabulary.hpp"

namespace fopkit::testgen {

struct Scope {
  std::vector<std::string> fo;                    // bound first-order variables
  std::vector<std::pair<std::string, int>> so;    // bound relation variables
  std::vector<std::string> fn;                    // bound function variables
};

inline VocabularyPtr mixed_vocab() {
  static VocabularyPtr v = std::make_shared<const Vocabulary>(
      "mixed", std::vector<RelationSymbol>{{"P", 1}, {"E", 2}, {"T", 3}},
      std::vector<std::string>{"c", "d"});
  return v;
}

inline Term random_term(std::mt19937& rng, const Scope& scope, int depth) {
  // Function applications stay rare and only appear under a binder.
  if (!scope.fn.empty() && depth > 0 && rng() % 5 == 0)
    return t_app(scope.fn[rng() % scope.fn.size()],
                 {random_term(rng, scope, depth - 1)});
  switch (rng() % 4) {
    case 0:
      if (!scope.fo.empty()) return t_var(scope.fo[rng() % scope.fo.size()]);
      [[fallthrough]];
    case 1: return t_zero();
    case 2: return t_max();
    default: return t_const(rng() % 2 ? "c" : "d");
  }
}

inline Formula random_formula(std::mt19937& rng, Scope& scope, int depth) {
  const VocabularyPtr& vocab = mixed_vocab();
  if (depth <= 0) {
    switch (rng() % 8) {
      case 0: return f_true();
      case 1: return f_false();
      case 2: {
        const auto& rel = vocab->relations()[rng() % vocab->relations().size()];
        std::vector<Term> args;
        for (int i = 0; i < rel.arity; ++i) args.push_back(random_term(rng, scope, 1));
        return f_rel(rel.name, std::move(args));
      }
      case 3:
        if (!scope.so.empty()) {
          const auto& [name, arity] = scope.so[rng() % scope.so.size()];
          std::vector<Term> args;
          for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, scope, 1));
          return f_so_atom(name, std::move(args));
        }
        [[fallthrough]];
      case 4: return f_eq(random_term(rng, scope, 1), random_term(rng, scope, 1));
      case 5: return f_le(random_term(rng, scope, 1), random_term(rng, scope, 1));
      case 6: return f_bit(random_term(rng, scope, 1), random_term(rng, scope, 1));
      default: return f_suc(random_term(rng, scope, 1), random_term(rng, scope, 1));
    }
  }
  switch (rng() % 10) {
    case 0: return f_not(random_formula(rng, scope, depth - 1));
    case 1:
      return f_and(random_formula(rng, scope, depth - 1),
                   random_formula(rng, scope, depth - 1));
    case 2:
      return f_or(random_formula(rng, scope, depth - 1),
                  random_formula(rng, scope, depth - 1));
    case 3:
      return f_implies(random_formula(rng, scope, depth - 1),
                       random_formula(rng, scope, depth - 1));
    case 4: return f_lt(random_term(rng, scope, 1), random_term(rng, scope, 1));
    case 5:
    case 6: {
      std::string var = "q" + std::to_string(depth);
      scope.fo.push_back(var);
      Formula body = random_formula(rng, scope, depth - 1);
      scope.fo.pop_back();
      return rng() % 2 ? f_forall(var, std::move(body)) : f_exists(var, std::move(body));
    }
    case 7: {
      std::string var = "R" + std::to_string(depth);
      int arity = 1 + static_cast<int>(rng() % 2);
      scope.so.emplace_back(var, arity);
      Formula body = random_formula(rng, scope, depth - 1);
      scope.so.pop_back();
      return rng() % 2 ? f_so_exists(var, arity, std::move(body))
                       : f_so_forall(var, arity, std::move(body));
    }
    case 8: {
      std::string fn = "g" + std::to_string(depth);
      scope.fn.push_back(fn);
      Formula body = random_formula(rng, scope, depth - 1);
      scope.fn.pop_back();
      return rng() % 2 ? f_exists_inj(fn, std::move(body))
                       : f_exists_fun(fn, std::move(body));
    }
    default: return random_formula(rng, scope, depth - 1);
  }
}

inline Formula random_formula(std::mt19937& rng, int depth) {
  Scope scope;
  return random_formula(rng, scope, depth);
}

}  // namespace fopkit::testgen
