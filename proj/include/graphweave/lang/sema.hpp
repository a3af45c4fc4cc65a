#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphweave/lang/ast.hpp"

namespace graphweave {

/// Lexical environment used for expression typing.
struct TypeEnv {
  const Program* program = nullptr;
  std::map<std::string, Type> locals;
  bool in_main = false;
};

/// Static type of an expression; throws TypeError.
Type type_of(const TypeEnv& env, const Expr& e);

/// Throws the first diagnostic found (TypeError, MixedAccessError, AmbiguousLabel, ...).
void check_semantics(const Program& p);

/// Names of builtin functions usable in expressions.
bool is_builtin_call(const std::string& name);

}  // namespace graphweave
