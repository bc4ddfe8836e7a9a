#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fopkit/vocabulary.hpp"

namespace fopkit {

// Saturating helpers used by enumeration counts and budget checks.
uint64_t sat_mul(uint64_t a, uint64_t b);
uint64_t sat_pow(uint64_t base, uint64_t exp);

// Lexicographic odometer over [0,n)^len; returns false after the last tuple.
bool next_tuple(std::vector<int>& tuple, int n);

// Characteristic table of one relation over universe {0..n-1}.  Cell index is
// the lexicographic rank of the tuple (first coordinate most significant), so
// rank order and tuple order coincide everywhere in the toolkit.
class RelationTable {
public:
  RelationTable() = default;
  RelationTable(int arity, int n);

  int arity() const { return arity_; }
  int universe() const { return n_; }
  uint64_t cells() const { return bits_.size(); }

  uint64_t rank(const std::vector<int>& tuple) const;
  std::vector<int> unrank(uint64_t r) const;

  bool test(const std::vector<int>& tuple) const { return bits_[rank(tuple)] != 0; }
  bool test_rank(uint64_t r) const { return bits_[r] != 0; }
  void set(const std::vector<int>& tuple, bool value) { bits_[rank(tuple)] = value ? 1 : 0; }
  void set_rank(uint64_t r, bool value) { bits_[r] = value ? 1 : 0; }
  void clear();

  size_t cardinality() const;
  std::vector<std::vector<int>> tuples() const;  // present tuples, lex order

  // Binary +1 over the characteristic vector with the rank-0 cell as the
  // least significant bit; false once the table wraps back to empty.
  bool increment();

  bool operator==(const RelationTable& other) const;
  bool operator!=(const RelationTable& other) const { return !(*this == other); }

private:
  int arity_ = 0;
  int n_ = 0;
  std::vector<char> bits_;
};

// A finite structure over universe {0..size-1}.  Every relation and constant
// of the vocabulary carries an interpretation; partial structures never exist.
class Structure {
public:
  Structure(VocabularyPtr vocab, int size,
            const std::map<std::string, std::vector<std::vector<int>>>& relations,
            const std::map<std::string, int>& constants);

  // All relations empty, all constants 0.
  static Structure empty(VocabularyPtr vocab, int size);

  const Vocabulary& vocab() const { return *vocab_; }
  const VocabularyPtr& vocab_ptr() const { return vocab_; }
  int size() const { return size_; }

  const RelationTable& rel(int index) const { return rels_[index]; }
  RelationTable& rel_mut(int index) { return rels_[index]; }
  int constant(int index) const { return consts_[index]; }
  void set_constant(int index, int value);

  bool operator==(const Structure& other) const;
  bool operator!=(const Structure& other) const { return !(*this == other); }

private:
  Structure(VocabularyPtr vocab, int size);

  VocabularyPtr vocab_;
  int size_ = 0;
  std::vector<RelationTable> rels_;
  std::vector<int> consts_;
};

// The family of all structures over a vocabulary with a fixed universe size,
// in a deterministic order: the index is read as a mixed-radix counter whose
// low digits are the constants (last constant fastest, counting 0..n-1) and
// whose high digits are the relation tables (last relation fastest, each a
// bit-counter over the lexicographic tuple list).  Counterexamples found by
// exhaustive sweeps are therefore reproducible across runs and job counts.
class StructureSpace {
public:
  StructureSpace(VocabularyPtr vocab, int size);

  uint64_t count() const { return count_; }  // saturates at UINT64_MAX
  bool count_exact() const { return exact_; }
  Structure at(uint64_t index) const;

  // In-place successor in the same order; false after the last structure.
  static bool advance(Structure& s);

private:
  VocabularyPtr vocab_;
  int size_;
  uint64_t count_;
  bool exact_;
};

// Applies fn to every structure of the given size in StructureSpace order.
// Stops early when fn returns false.
void for_each_structure(const VocabularyPtr& vocab, int size,
                        const std::function<bool(const Structure&)>& fn);

// Bit-string codec.  Layout: for each relation in vocabulary order the
// characteristic vector over lex-ordered tuples, then each constant in
// binary, most significant bit first, ceil(log2 n) bits apiece (zero bits
// when n = 1).
std::string encode(const Structure& s);
Structure decode(const VocabularyPtr& vocab, int size, const std::string& bits);

// Binary words as structures over the built-in string vocabulary <Q/1>:
// position 0 is the leftmost character and Q holds the positions carrying 1.
Structure string_to_structure(const std::string& word);
std::string structure_to_string(const Structure& s);
VocabularyPtr string_vocab();

}  // namespace fopkit
