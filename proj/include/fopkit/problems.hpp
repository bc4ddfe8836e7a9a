#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fopkit/formula.hpp"
#include "fopkit/query.hpp"
#include "fopkit/structure.hpp"
#include "fopkit/vocabulary.hpp"

namespace fopkit {

// Threshold reading for the graph problems.  Verbatim keeps each built-in
// sentence exactly as the library defines it, which makes the independent-set
// and clique problems talk about k+1 vertices while the subgraph problem
// talks about k.  Strict normalizes every comparison to <, so all three
// speak about k vertices; reductions between them need this reading.
enum class Convention { Verbatim, Strict };

struct Problem {
  std::string name;
  VocabularyPtr vocab;
  Formula sentence;                              // may be null
  std::function<bool(const Structure&)> oracle;  // may be null
  // Largest universe size at which sentence and oracle agreement has been
  // exhaustively checked by the test suite.
  int certified_size = 0;

  // Oracle when present, sentence otherwise.
  bool member(const Structure& s) const;
};

VocabularyPtr graph_vocab();   // <E/2, k>
VocabularyPtr sgi_vocab();     // <F/2, H/2, k>

// Built-in problems: IS, CLIQUE, SUBGRAPHISO, PARITY, PARITY_PADDED.
Problem builtin_problem(const std::string& name,
                        Convention convention = Convention::Verbatim);

// Built-in queries: fop_complement, fop_clique_to_sgi, fop_padding,
// query_sgi_back, id_query.
Query builtin_query(const std::string& name);

// Image-characterizing sentence shipped for a built-in projection, over its
// target vocabulary.  Available for fop_complement and fop_clique_to_sgi.
Formula builtin_characteristic(const std::string& query_name);

std::vector<std::string> builtin_problem_names();
std::vector<std::string> builtin_query_names();

}  // namespace fopkit
