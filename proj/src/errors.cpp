#include "fopkit/errors.hpp"

namespace fopkit {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::MissingInterpretation: return "MissingInterpretation";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::EmptyUniverse: return "EmptyUniverse";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ConstantOutOfRange: return "ConstantOutOfRange";
    case Errc::EmptyWord: return "EmptyWord";
    case Errc::InvalidVocabulary: return "InvalidVocabulary";
    case Errc::VocabularyMismatch: return "VocabularyMismatch";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::FunctionTermOutsideBinder: return "FunctionTermOutsideBinder";
    case Errc::NonElaboratedInput: return "NonElaboratedInput";
    case Errc::UnassignedFreeVariable: return "UnassignedFreeVariable";
    case Errc::FreeVariableInSentence: return "FreeVariableInSentence";
    case Errc::NotExistentialPrefix: return "NotExistentialPrefix";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidQuery: return "InvalidQuery";
    case Errc::EmptyImageUniverse: return "EmptyImageUniverse";
    case Errc::ConstantUndefined: return "ConstantUndefined";
    case Errc::UnsupportedNumericAtom: return "UnsupportedNumericAtom";
    case Errc::UnknownName: return "UnknownName";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      message_(message) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace fopkit
