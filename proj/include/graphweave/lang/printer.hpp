#pragma once

#include <string>

#include "graphweave/lang/ast.hpp"

namespace graphweave {

std::string print_expr(const Expr& e);
std::string print_stmt(const Stmt& s, int indent = 0);
std::string print_program(const Program& p);

}  // namespace graphweave
