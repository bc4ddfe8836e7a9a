#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fopkit {

struct RelationSymbol {
  std::string name;
  int arity = 0;
};

// A purely relational signature: relation symbols with positive arity plus
// constant symbols.  The numeric apparatus (=, <=, <, BIT, suc, 0, max) is
// built into the formula language and must not be redeclared here.
class Vocabulary {
public:
  Vocabulary(std::string name, std::vector<RelationSymbol> relations,
             std::vector<std::string> constants);

  const std::string& name() const { return name_; }
  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<std::string>& constants() const { return constants_; }

  // -1 when the symbol is absent.
  int relation_index(const std::string& symbol) const;
  int constant_index(const std::string& symbol) const;
  bool has_symbol(const std::string& symbol) const;

  // Signature equality; the vocabulary name is a label and does not count.
  bool same_signature(const Vocabulary& other) const;

private:
  std::string name_;
  std::vector<RelationSymbol> relations_;
  std::vector<std::string> constants_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

bool is_reserved_symbol(const std::string& symbol);

}  // namespace fopkit
