#pragma once

#include <stdexcept>
#include <string>

namespace fopkit {

enum class Errc {
  // structures and encodings
  OutOfRange,
  MissingInterpretation,
  ArityMismatch,
  EmptyUniverse,
  LengthMismatch,
  ConstantOutOfRange,
  EmptyWord,
  InvalidVocabulary,
  VocabularyMismatch,
  // formulas
  SyntaxError,
  UnknownSymbol,
  UnboundVariable,
  FunctionTermOutsideBinder,
  NonElaboratedInput,
  // evaluation
  UnassignedFreeVariable,
  FreeVariableInSentence,
  NotExistentialPrefix,
  BudgetExceeded,
  // queries and duals
  InvalidQuery,
  EmptyImageUniverse,
  ConstantUndefined,
  UnsupportedNumericAtom,
  // lookup
  UnknownName,
  // files
  IoError,
};

const char* errc_name(Errc code);

// Single exception type; the code distinguishes failure classes so tests and
// the CLI can dispatch without string matching.
const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }
  // The text without the code-name prefix that what() carries, for wrappers
  // that add context and rethrow under the same code.
  const std::string& message() const { return message_; }

private:
  Errc code_;
  std::string message_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace fopkit
