#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fopkit/eval.hpp"
#include "fopkit/formula.hpp"
#include "fopkit/query.hpp"
#include "fopkit/structure.hpp"

namespace fopkit {

// Rewrites a formula over the query's target vocabulary into one over its
// source vocabulary such that a source structure satisfies the result exactly
// when its image satisfies the input.
struct DualResult {
  Formula formula;
  // Human-readable record of the rewrites that were applied (numeric atom
  // expansions, constant substitutions, renamings).
  std::vector<std::string> notes;
};

DualResult syntactic_dual(const Query& q, const Formula& theta);

// Reference implementation of the same contract: build the image and
// evaluate there.  syntactic_dual is always cross-checked against this.
bool semantic_dual_eval(const Query& q, const Formula& theta, const Structure& a,
                        const EvalOptions& opt = {});

// Brute-force preimage search: smallest source structure (in enumeration
// order) whose image equals b, scanning source sizes 1..max_preimage_size.
// Zero means "up to b's size", which suffices whenever the image universe
// is at least as large as the input.
std::optional<Structure> image_membership(const Query& q, const Structure& b,
                                          int max_preimage_size = 0,
                                          const EvalOptions& opt = {});

struct CharacteristicReport {
  bool verified = false;
  // Target structure where the sentence and actual image membership part
  // ways, with the direction of the disagreement.
  std::optional<Structure> counterexample;
  bool counterexample_satisfies_sentence = false;
  bool counterexample_in_image = false;
  int max_size = 0;
};

// Compares a candidate image-characterizing sentence against brute-force
// image membership on every target structure of size 1..size_bound.
CharacteristicReport verify_characteristic(const Formula& beta, const Query& q,
                                           int size_bound, const EvalOptions& opt = {});

}  // namespace fopkit
