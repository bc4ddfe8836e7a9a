#pragma once

#include <string>

#include "fopkit/formula.hpp"
#include "fopkit/vocabulary.hpp"

namespace fopkit {

// Parses the concrete formula syntax against a vocabulary.  Operators bind
// as ! > & > | > ->, with -> right-associative and & , | left-associative;
// quantifier bodies extend maximally to the right.  Identifiers resolve to
// vocabulary symbols first, then to bound second-order/function variables;
// anything else in term position is a (possibly free) first-order variable.
// When require_sentence is set, free first-order variables are rejected.
Formula parse_formula(const std::string& text, const Vocabulary& vocab,
                      bool require_sentence = false);

}  // namespace fopkit
