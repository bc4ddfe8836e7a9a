#include "fopkit/structure.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "fopkit/errors.hpp"

namespace fopkit {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<uint64_t>::max() / b)
    return std::numeric_limits<uint64_t>::max();
  return a * b;
}

uint64_t sat_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

bool next_tuple(std::vector<int>& tuple, int n) {
  for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
    if (++tuple[i] < n) return true;
    tuple[i] = 0;
  }
  return false;
}

RelationTable::RelationTable(int arity, int n) : arity_(arity), n_(n) {
  uint64_t cells = sat_pow(static_cast<uint64_t>(n), static_cast<uint64_t>(arity));
  if (cells > (1ull << 26))
    fail(Errc::BudgetExceeded, "relation table too large: n=" + std::to_string(n) +
                                   " arity=" + std::to_string(arity));
  bits_.assign(static_cast<size_t>(cells), 0);
}

uint64_t RelationTable::rank(const std::vector<int>& tuple) const {
  uint64_t r = 0;
  for (int v : tuple) r = r * static_cast<uint64_t>(n_) + static_cast<uint64_t>(v);
  return r;
}

std::vector<int> RelationTable::unrank(uint64_t r) const {
  std::vector<int> tuple(arity_, 0);
  for (int i = arity_ - 1; i >= 0; --i) {
    tuple[i] = static_cast<int>(r % n_);
    r /= n_;
  }
  return tuple;
}

void RelationTable::clear() { std::fill(bits_.begin(), bits_.end(), 0); }

size_t RelationTable::cardinality() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::vector<int>> RelationTable::tuples() const {
  std::vector<std::vector<int>> out;
  for (uint64_t r = 0; r < bits_.size(); ++r)
    if (bits_[r]) out.push_back(unrank(r));
  return out;
}

bool RelationTable::increment() {
  for (auto& b : bits_) {
    if (b == 0) {
      b = 1;
      return true;
    }
    b = 0;
  }
  return false;
}

bool RelationTable::operator==(const RelationTable& other) const {
  return arity_ == other.arity_ && n_ == other.n_ && bits_ == other.bits_;
}

Structure::Structure(VocabularyPtr vocab, int size)
    : vocab_(std::move(vocab)), size_(size) {
  if (size_ < 1) fail(Errc::EmptyUniverse, "universe size must be >= 1");
  for (const auto& rel : vocab_->relations())
    rels_.emplace_back(rel.arity, size_);
  consts_.assign(vocab_->constants().size(), 0);
}

Structure Structure::empty(VocabularyPtr vocab, int size) {
  return Structure(std::move(vocab), size);
}

Structure::Structure(VocabularyPtr vocab, int size,
                     const std::map<std::string, std::vector<std::vector<int>>>& relations,
                     const std::map<std::string, int>& constants)
    : Structure(std::move(vocab), size) {
  std::vector<char> have_rel(rels_.size(), 0), have_const(consts_.size(), 0);
  for (const auto& [name, tuples] : relations) {
    int idx = vocab_->relation_index(name);
    if (idx < 0) fail(Errc::UnknownSymbol, "no relation " + name + " in vocabulary");
    have_rel[idx] = 1;
    int arity = vocab_->relations()[idx].arity;
    for (const auto& t : tuples) {
      if (static_cast<int>(t.size()) != arity)
        fail(Errc::ArityMismatch, name + " expects " + std::to_string(arity) +
                                      "-tuples, got " + std::to_string(t.size()));
      for (int v : t)
        if (v < 0 || v >= size_)
          fail(Errc::OutOfRange, "element " + std::to_string(v) + " outside universe of " +
                                     std::to_string(size_));
      rels_[idx].set(t, true);
    }
  }
  for (const auto& [name, value] : constants) {
    int idx = vocab_->constant_index(name);
    if (idx < 0) fail(Errc::UnknownSymbol, "no constant " + name + " in vocabulary");
    have_const[idx] = 1;
    if (value < 0 || value >= size_)
      fail(Errc::OutOfRange, "constant " + name + " = " + std::to_string(value) +
                                 " outside universe of " + std::to_string(size_));
    consts_[idx] = value;
  }
  for (size_t i = 0; i < have_rel.size(); ++i)
    if (!have_rel[i])
      fail(Errc::MissingInterpretation, "relation " + vocab_->relations()[i].name);
  for (size_t i = 0; i < have_const.size(); ++i)
    if (!have_const[i])
      fail(Errc::MissingInterpretation, "constant " + vocab_->constants()[i]);
}

void Structure::set_constant(int index, int value) {
  if (value < 0 || value >= size_)
    fail(Errc::OutOfRange, "constant value " + std::to_string(value));
  consts_[index] = value;
}

bool Structure::operator==(const Structure& other) const {
  return size_ == other.size_ && vocab_->same_signature(*other.vocab_) &&
         consts_ == other.consts_ && rels_ == other.rels_;
}

StructureSpace::StructureSpace(VocabularyPtr vocab, int size)
    : vocab_(std::move(vocab)), size_(size) {
  if (size_ < 1) fail(Errc::EmptyUniverse, "universe size must be >= 1");
  uint64_t total = 1;
  bool exact = true;
  for (const auto& rel : vocab_->relations()) {
    uint64_t cells = sat_pow(size_, rel.arity);
    if (cells >= 64) exact = false;
    total = sat_mul(total, exact ? (1ull << cells) : std::numeric_limits<uint64_t>::max());
  }
  for (size_t i = 0; i < vocab_->constants().size(); ++i)
    total = sat_mul(total, static_cast<uint64_t>(size_));
  count_ = total;
  exact_ = exact && total != std::numeric_limits<uint64_t>::max();
}

Structure StructureSpace::at(uint64_t index) const {
  if (!exact_ || index >= count_) fail(Errc::OutOfRange, "structure index");
  Structure s = Structure::empty(vocab_, size_);
  const auto& consts = vocab_->constants();
  for (int j = static_cast<int>(consts.size()) - 1; j >= 0; --j) {
    s.set_constant(j, static_cast<int>(index % size_));
    index /= size_;
  }
  const auto& rels = vocab_->relations();
  for (int i = static_cast<int>(rels.size()) - 1; i >= 0; --i) {
    uint64_t cells = s.rel_mut(i).cells();
    uint64_t counter = index & ((cells >= 64) ? ~0ull : ((1ull << cells) - 1));
    index >>= cells;
    for (uint64_t r = 0; r < cells; ++r)
      s.rel_mut(i).set_rank(r, (counter >> r) & 1);
  }
  return s;
}

bool StructureSpace::advance(Structure& s) {
  int n = s.size();
  for (int j = static_cast<int>(s.vocab().constants().size()) - 1; j >= 0; --j) {
    int v = s.constant(j) + 1;
    if (v < n) {
      s.set_constant(j, v);
      return true;
    }
    s.set_constant(j, 0);
  }
  for (int i = static_cast<int>(s.vocab().relations().size()) - 1; i >= 0; --i)
    if (s.rel_mut(i).increment()) return true;
  return false;
}

void for_each_structure(const VocabularyPtr& vocab, int size,
                        const std::function<bool(const Structure&)>& fn) {
  Structure s = Structure::empty(vocab, size);
  do {
    if (!fn(s)) return;
  } while (StructureSpace::advance(s));
}

namespace {

int const_bits(int n) { return n <= 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1)); }

}  // namespace

std::string encode(const Structure& s) {
  std::string out;
  for (size_t i = 0; i < s.vocab().relations().size(); ++i) {
    const RelationTable& t = s.rel(static_cast<int>(i));
    for (uint64_t r = 0; r < t.cells(); ++r) out.push_back(t.test_rank(r) ? '1' : '0');
  }
  int bits = const_bits(s.size());
  for (size_t j = 0; j < s.vocab().constants().size(); ++j) {
    int v = s.constant(static_cast<int>(j));
    for (int b = bits - 1; b >= 0; --b) out.push_back(((v >> b) & 1) ? '1' : '0');
  }
  return out;
}

Structure decode(const VocabularyPtr& vocab, int size, const std::string& bits) {
  if (size < 1) fail(Errc::EmptyUniverse, "universe size must be >= 1");
  uint64_t expect = 0;
  for (const auto& rel : vocab->relations()) expect += sat_pow(size, rel.arity);
  expect += static_cast<uint64_t>(vocab->constants().size()) * const_bits(size);
  if (bits.size() != expect)
    fail(Errc::LengthMismatch, "expected " + std::to_string(expect) + " bits, got " +
                                   std::to_string(bits.size()));
  for (char c : bits)
    if (c != '0' && c != '1') fail(Errc::SyntaxError, "encoding must be over {0,1}");
  Structure s = Structure::empty(vocab, size);
  size_t pos = 0;
  for (size_t i = 0; i < vocab->relations().size(); ++i) {
    RelationTable& t = s.rel_mut(static_cast<int>(i));
    for (uint64_t r = 0; r < t.cells(); ++r) t.set_rank(r, bits[pos++] == '1');
  }
  int cb = const_bits(size);
  for (size_t j = 0; j < vocab->constants().size(); ++j) {
    int v = 0;
    for (int b = 0; b < cb; ++b) v = (v << 1) | (bits[pos++] == '1' ? 1 : 0);
    if (v >= size)
      fail(Errc::ConstantOutOfRange, "constant " + vocab->constants()[j] + " decodes to " +
                                         std::to_string(v) + " in universe of " +
                                         std::to_string(size));
    s.set_constant(static_cast<int>(j), v);
  }
  return s;
}

VocabularyPtr string_vocab() {
  static const VocabularyPtr v = std::make_shared<Vocabulary>(
      "string", std::vector<RelationSymbol>{{"Q", 1}}, std::vector<std::string>{});
  return v;
}

Structure string_to_structure(const std::string& word) {
  if (word.empty()) fail(Errc::EmptyWord, "words must be nonempty");
  for (char c : word)
    if (c != '0' && c != '1') fail(Errc::SyntaxError, "words must be over {0,1}");
  Structure s = Structure::empty(string_vocab(), static_cast<int>(word.size()));
  for (size_t i = 0; i < word.size(); ++i)
    if (word[i] == '1') s.rel_mut(0).set({static_cast<int>(i)}, true);
  return s;
}

std::string structure_to_string(const Structure& s) {
  if (!s.vocab().same_signature(*string_vocab()))
    fail(Errc::VocabularyMismatch, "not a structure over <Q/1>");
  std::string word(static_cast<size_t>(s.size()), '0');
  for (int i = 0; i < s.size(); ++i)
    if (s.rel(0).test({i})) word[static_cast<size_t>(i)] = '1';
  return word;
}

}  // namespace fopkit
