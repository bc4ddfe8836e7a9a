#include "fopkit/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "fopkit/errors.hpp"

namespace fopkit {

namespace {

// Symbols claimed by the formula language itself: numeric atoms, numeric
// constants, and the quantifier keywords of the concrete syntax.
const std::set<std::string>& reserved_symbols() {
  static const std::set<std::string> reserved = {
      "=",  "<=",  "<",    "BIT",  "suc",   "0",     "max",
      "all", "ex", "true", "false", "EX2", "ALL2", "EXINJ", "EXFUN"};
  return reserved;
}

bool identifier_shaped(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace

bool is_reserved_symbol(const std::string& symbol) {
  return reserved_symbols().count(symbol) != 0;
}

Vocabulary::Vocabulary(std::string name, std::vector<RelationSymbol> relations,
                       std::vector<std::string> constants)
    : name_(std::move(name)),
      relations_(std::move(relations)),
      constants_(std::move(constants)) {
  std::set<std::string> seen;
  for (const auto& rel : relations_) {
    if (rel.arity < 1)
      fail(Errc::InvalidVocabulary,
           "relation " + rel.name + " must have arity >= 1");
    if (!identifier_shaped(rel.name) || is_reserved_symbol(rel.name))
      fail(Errc::InvalidVocabulary, "bad relation symbol: " + rel.name);
    if (!seen.insert(rel.name).second)
      fail(Errc::InvalidVocabulary, "duplicate symbol: " + rel.name);
  }
  for (const auto& c : constants_) {
    if (!identifier_shaped(c) || is_reserved_symbol(c))
      fail(Errc::InvalidVocabulary, "bad constant symbol: " + c);
    if (!seen.insert(c).second)
      fail(Errc::InvalidVocabulary, "duplicate symbol: " + c);
  }
}

int Vocabulary::relation_index(const std::string& symbol) const {
  for (size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == symbol) return static_cast<int>(i);
  return -1;
}

int Vocabulary::constant_index(const std::string& symbol) const {
  for (size_t i = 0; i < constants_.size(); ++i)
    if (constants_[i] == symbol) return static_cast<int>(i);
  return -1;
}

bool Vocabulary::has_symbol(const std::string& symbol) const {
  return relation_index(symbol) >= 0 || constant_index(symbol) >= 0;
}

bool Vocabulary::same_signature(const Vocabulary& other) const {
  if (constants_ != other.constants_) return false;
  if (relations_.size() != other.relations_.size()) return false;
  for (size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name != other.relations_[i].name ||
        relations_[i].arity != other.relations_[i].arity)
      return false;
  return true;
}

}  // namespace fopkit
