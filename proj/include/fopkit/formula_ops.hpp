#pragma once

#include <map>
#include <set>
#include <string>

#include "fopkit/formula.hpp"

namespace fopkit {

// Generates names in the reserved namespace _v0, _v1, ... skipping anything
// already in `used`.  The parser rejects that namespace, so generated names
// can never capture user-written variables.
struct FreshNames {
  std::set<std::string> used;
  int next_id = 0;
  std::string fresh();
};

// True when every atom is numeric (=, <=, <, BIT, suc) and no term mentions
// a vocabulary constant.  Truth then depends only on the universe size and
// the assignment.  Pre: elaborated input.
bool is_numerical(const Formula& f);

// Weaker class used for projection guards: no relation or second-order
// atoms, but vocabulary constants are allowed in terms.
bool is_guard(const Formula& f);

// Simultaneous capture-avoiding substitution of terms for free first-order
// variables.  Bound variables are renamed into the reserved namespace only
// when a replacement would otherwise be captured.
Formula substitute(const Formula& f, const std::map<std::string, Term>& map);

// Renames free second-order variables (binders included).  New names must
// not occur anywhere in f.
Formula rename_so(const Formula& f, const std::map<std::string, std::string>& map);

// Removes the function-binder sugar:
//   EXINJ f. phi  ~>  EX2 f/2. ((Tot(f) & Inj(f)) & phi')
//   EXFUN f. phi  ~>  EX2 f/2. ((Tot(f) & Fun(f)) & phi')
// where phi' replaces each atom containing an application f(x) by
// ex y. (f(x,y) & atom[y]), innermost applications first.  Totality plus
// injectivity forces the guessed relation to be a bijection on a finite
// initial segment, so no surjectivity clause is needed.  Idempotent.
Formula elaborate(const Formula& f);

// Double negation elimination, negation pushed down to literals across
// connectives (quantifiers left untouched), and true/false folding.
// No other rewriting, so structural comparisons against hand-written
// formulas stay predictable.
Formula simplify(const Formula& f);

// Recognizes the elaborated binder shape EX2 X/2. ((Tot(X) & law(X)) & rest)
// modulo bound-variable names.  Evaluation uses it to enumerate the n!
// injections (or n^n functions) instead of all 2^(n^2) relations.
struct BinderPattern {
  enum class Kind { None, Inj, Fun };
  Kind kind = Kind::None;
  Formula rest;
};
BinderPattern match_binder(const Formula& so_exists);

Formula totality_axiom(const std::string& fn, FreshNames& fresh);
Formula injectivity_axiom(const std::string& fn, FreshNames& fresh);
Formula functionality_axiom(const std::string& fn, FreshNames& fresh);

}  // namespace fopkit
