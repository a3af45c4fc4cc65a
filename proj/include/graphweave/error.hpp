#pragma once

#include <stdexcept>
#include <string>

namespace graphweave {

struct SourcePos {
  int line = 0;
  int column = 0;
};

// Positions carry diagnostics only; two nodes at different positions are
// still the same program.
inline bool operator==(const SourcePos&, const SourcePos&) { return true; }

enum class ErrorKind {
  IllegalCharacter,
  SyntaxError,
  UnknownSchedulingFunction,
  UnknownOption,
  ArityError,
  TypeError,
  MixedAccessError,
  LabelNotFound,
  AmbiguousLabel,
  InvalidCombination,
  NotAForLoop,
  NonSiblingLoops,
  SplitOutOfRange,
  IncompatibleChains,
  UnknownVector,
  AlreadyFused,
  MixedElementKinds,
  ParseError,
  NegativeId,
  ZeroSegments,
  IoError,
  BudgetZero,
  MissingSSGs,
  VectorNotFound,
  RuntimeError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourcePos pos = {});

  ErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

  /// Runtime failures map to exit code 2, everything else to 1.
  bool is_runtime() const;

 private:
  ErrorKind kind_;
  SourcePos pos_;
  std::string detail_;
};

}  // namespace graphweave
