#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fopkit/query.hpp"
#include "fopkit/structure.hpp"
#include "fopkit/vocabulary.hpp"

namespace fopkit {

// Parsed contents of a definition file: vocab, struct and query blocks in
// source order.  A struct or query block names its vocabulary; the name is
// resolved against vocab blocks earlier in the same file first and against
// the built-in vocabularies (graph, sgi, string) second.
struct TextFile {
  std::vector<VocabularyPtr> vocabularies;
  std::vector<std::pair<std::string, Structure>> structures;
  std::vector<std::pair<std::string, Query>> queries;
};

// `#` starts a comment running to end of line, anywhere in the file.
TextFile parse_text(const std::string& text);

// Single-block readers.  The text may declare helper vocab blocks but must
// contain exactly one block of the requested kind and nothing else.
VocabularyPtr parse_vocabulary_text(const std::string& text);
Structure parse_structure_text(const std::string& text);
Query parse_query_text(const std::string& text);

// Canonical writers.  Output parses back to an equal object, and writing
// that object again reproduces the bytes, so files can be diffed.  Relations
// and constants appear in vocabulary order; tuples in lexicographic order;
// query heads use the canonical parameters x1, x2, ...
std::string write_vocabulary(const VocabularyPtr& v);
std::string write_structure(const std::string& name, const Structure& s);
std::string write_query(const std::string& name, const Query& q);

}  // namespace fopkit
