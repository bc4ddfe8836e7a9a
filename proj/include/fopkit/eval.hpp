#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fopkit/formula.hpp"
#include "fopkit/structure.hpp"

namespace fopkit {

struct EvalOptions {
  // Cap on the estimated number of second-order interpretations a single
  // evaluation may enumerate.
  uint64_t budget = 1ull << 24;
  // Enumerate n! injections / n^n functions for recognized binder shapes
  // instead of all 2^(n^2) binary relations.
  bool binder_opt = true;
};

// Evaluates an elaborated formula whose free variables are covered by the
// given assignments.  Second-order quantifiers may occur anywhere; they are
// enumerated in a fixed order (tables as bit-counters from the empty set,
// injections as permutations in lexicographic order from the identity).
bool eval_fo(const Structure& a, const Formula& f,
             const std::map<std::string, int>& assignment = {},
             const std::map<std::string, RelationTable>& so_assignment = {},
             const EvalOptions& opt = {});

// Same, for sentences; free variables raise FreeVariableInSentence.
bool eval_so(const Structure& a, const Formula& sentence, const EvalOptions& opt = {});

// All structures of the given size satisfying the sentence, in enumeration
// order.
std::vector<Structure> models(const VocabularyPtr& vocab, int size,
                              const Formula& sentence, const EvalOptions& opt = {});

// Interpretations for the leading existential second-order block of a
// sentence, named in prefix order.
struct Witness {
  std::vector<std::pair<std::string, RelationTable>> sets;
};

// First witness in enumeration order, or nullopt when the sentence is false.
// The sentence must be an existential second-order prefix over a first-order
// matrix (second-order atoms referencing the prefix are fine).
std::optional<Witness> find_witness(const Structure& a, const Formula& sentence,
                                    const EvalOptions& opt = {});

// The enumeration-count estimate the budget check uses.
uint64_t estimate_interpretations(int universe_size, const Formula& f,
                                  const EvalOptions& opt = {});

}  // namespace fopkit
