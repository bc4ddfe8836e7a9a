#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fopkit/eval.hpp"
#include "fopkit/formula.hpp"
#include "fopkit/structure.hpp"
#include "fopkit/vocabulary.hpp"

namespace fopkit {

// Canonical component-formula parameter: x1, x2, ... (1-based).
std::string param_name(int i);

// A first-order query of arity k from source structures to target structures.
// The universe formula ranges over x1..xk; the formula for a target relation
// of arity a ranges over x1..x(k*a), grouped k components per argument; each
// target constant is pinned by a conjunction of equalities x_i = c assigning
// every position a source constant (the literals 0 and max are also allowed).
class Query {
public:
  Query(VocabularyPtr source, VocabularyPtr target, int arity, Formula universe,
        std::vector<Formula> relation_formulas, std::vector<Formula> constant_formulas);

  const VocabularyPtr& source() const { return source_; }
  const VocabularyPtr& target() const { return target_; }
  int arity() const { return arity_; }
  const Formula& universe() const { return universe_; }
  const Formula& relation_formula(int i) const { return relation_formulas_[i]; }
  const Formula& constant_formula(int j) const { return constant_formulas_[j]; }
  // Pin terms for target constant j, one per position x1..xk.
  const std::vector<Term>& constant_tuple(int j) const { return constant_tuples_[j]; }

private:
  VocabularyPtr source_;
  VocabularyPtr target_;
  int arity_;
  Formula universe_;
  std::vector<Formula> relation_formulas_;
  std::vector<Formula> constant_formulas_;
  std::vector<std::vector<Term>> constant_tuples_;
};

// Arity-1 query that reproduces its input: universe true, every relation
// mapped to itself, every constant pinned to itself.
Query identity_query(const VocabularyPtr& vocab);

// The k-tuples over a's universe satisfying the universe formula, in
// lexicographic order.  Their ranks become the elements of the image.
std::vector<std::vector<int>> image_tuples(const Query& q, const Structure& a,
                                           const EvalOptions& opt = {});

Structure apply_query(const Query& q, const Structure& a, const EvalOptions& opt = {});

// Projection-form check: the universe formula must be numerical and every
// relation formula a disjunction of guarded literals (numeric guard, at most
// one source literal per disjunct) whose guards never overlap.  Overlap is
// tested empirically on every universe size up to size_bound, over all
// parameter tuples and all source constant values.
struct FopCheck {
  bool ok = false;
  std::string diagnosis;  // empty when ok
};
FopCheck is_fop(const Query& q, int size_bound, const EvalOptions& opt = {});

struct InjectivityReport {
  bool injective = false;
  // Two distinct inputs with structurally equal outputs, when found.
  std::optional<std::pair<Structure, Structure>> counterexample;
  int min_size = 0;
  int max_size = 0;
  uint64_t inputs_checked = 0;
};
InjectivityReport check_injective(const Query& q, int min_size, int max_size,
                                  const EvalOptions& opt = {});

}  // namespace fopkit
