#include "graphweave/error.hpp"

namespace graphweave {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IllegalCharacter: return "IllegalCharacter";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSchedulingFunction: return "UnknownSchedulingFunction";
    case ErrorKind::UnknownOption: return "UnknownOption";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::MixedAccessError: return "MixedAccessError";
    case ErrorKind::LabelNotFound: return "LabelNotFound";
    case ErrorKind::AmbiguousLabel: return "AmbiguousLabel";
    case ErrorKind::InvalidCombination: return "InvalidCombination";
    case ErrorKind::NotAForLoop: return "NotAForLoop";
    case ErrorKind::NonSiblingLoops: return "NonSiblingLoops";
    case ErrorKind::SplitOutOfRange: return "SplitOutOfRange";
    case ErrorKind::IncompatibleChains: return "IncompatibleChains";
    case ErrorKind::UnknownVector: return "UnknownVector";
    case ErrorKind::AlreadyFused: return "AlreadyFused";
    case ErrorKind::MixedElementKinds: return "MixedElementKinds";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NegativeId: return "NegativeId";
    case ErrorKind::ZeroSegments: return "ZeroSegments";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::BudgetZero: return "BudgetZero";
    case ErrorKind::MissingSSGs: return "MissingSSGs";
    case ErrorKind::VectorNotFound: return "VectorNotFound";
    case ErrorKind::RuntimeError: return "RuntimeError";
  }
  return "Error";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& message, SourcePos pos) {
  std::string out = error_kind_name(kind);
  out += ": ";
  out += message;
  if (pos.line > 0) {
    out += " (line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, SourcePos pos)
    : std::runtime_error(format_message(kind, message, pos)), kind_(kind), pos_(pos), detail_(message) {}

bool Error::is_runtime() const {
  return kind_ == ErrorKind::MissingSSGs || kind_ == ErrorKind::VectorNotFound ||
         kind_ == ErrorKind::RuntimeError;
}

}  // namespace graphweave
