#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fopkit {

// Terms: first-order variables, vocabulary constants, the numeric constants
// 0 and max, and applications of function-style second-order variables
// (sugar; removed by elaboration).
enum class TermKind { Var, Const, Zero, Max, App };

struct Term {
  TermKind kind = TermKind::Var;
  std::string name;        // Var, Const, App
  std::vector<Term> args;  // App only

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
};

Term t_var(std::string name);
Term t_const(std::string name);
Term t_zero();
Term t_max();
Term t_app(std::string fn, std::vector<Term> args);

enum class Fk {
  True,
  False,
  Rel,       // vocabulary relation atom
  SOAtom,    // second-order variable atom
  Eq, Le, Lt, Bit, Suc,  // numeric atoms
  Not, And, Or, Implies,
  Forall, Exists,        // first-order quantifiers
  SOExists, SOForall,    // second-order quantifiers with explicit arity
  ExistsInj, ExistsFun,  // function binders (sugar; removed by elaboration)
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

// Immutable tree; subtrees may be shared freely.  Field use per kind:
//   Rel/SOAtom        name + terms
//   Eq..Suc           terms[0], terms[1]
//   Not               lhs
//   And/Or/Implies    lhs, rhs
//   Forall/Exists     name (bound variable) + lhs (body)
//   SOExists/SOForall name + so_arity + lhs
//   ExistsInj/Fun     name (function variable) + lhs
struct FormulaNode {
  Fk kind;
  std::string name;
  int so_arity = 0;
  std::vector<Term> terms;
  Formula lhs, rhs;
};

Formula f_true();
Formula f_false();
Formula f_rel(std::string symbol, std::vector<Term> terms);
Formula f_so_atom(std::string var, std::vector<Term> terms);
Formula f_eq(Term a, Term b);
Formula f_le(Term a, Term b);
Formula f_lt(Term a, Term b);
Formula f_bit(Term a, Term b);
Formula f_suc(Term a, Term b);
Formula f_not(Formula f);
Formula f_and(Formula l, Formula r);
Formula f_or(Formula l, Formula r);
Formula f_implies(Formula l, Formula r);
Formula f_forall(std::string var, Formula body);
Formula f_exists(std::string var, Formula body);
Formula f_so_exists(std::string var, int arity, Formula body);
Formula f_so_forall(std::string var, int arity, Formula body);
Formula f_exists_inj(std::string fn, Formula body);
Formula f_exists_fun(std::string fn, Formula body);

// Left-nested conjunction/disjunction of a nonempty list, matching the
// parser's associativity.
Formula f_and_all(const std::vector<Formula>& fs);
Formula f_or_all(const std::vector<Formula>& fs);

bool equal(const Formula& a, const Formula& b);

struct FreeVars {
  std::set<std::string> fo;  // free first-order variables
  std::set<std::string> so;  // free second-order variables (incl. function vars)
};
FreeVars free_vars(const Formula& f);

bool is_sentence(const Formula& f);

// True when the tree contains no function binders and no App terms.
bool is_elaborated(const Formula& f);

// True when the tree contains SO quantifiers, binders, or SO atoms.
bool contains_so(const Formula& f);

// Names of all variables occurring anywhere (bound or free, FO and SO).
std::set<std::string> all_variable_names(const Formula& f);

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

}  // namespace fopkit
