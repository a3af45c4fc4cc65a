#pragma once

#include <string>
#include <vector>

#include "graphweave/lang/ast.hpp"

namespace graphweave {

struct Label {
  std::vector<std::string> path;

  static Label parse(const std::string& text);
  std::string str() const;
};

/// Location of a statement inside the main body, valid until the IR changes.
struct StmtHandle {
  std::vector<Stmt>* container = nullptr;
  std::size_t index = 0;
  std::vector<std::string> path;

  Stmt& stmt() const { return (*container)[index]; }
};

/// Resolves a fully qualified label (e.g. "l3:l1:s1") by walking the scopes of
/// main. Labelled compound statements and name nodes open a scope.
StmtHandle resolve_label(Program& p, const std::string& label);
const Stmt& resolve_label(const Program& p, const std::string& label);

/// Full scoped path of the statement with the given id ("" when unlabelled).
std::string label_path_of(const Program& p, int stmt_id);

/// Every labelled statement in main with its full path, in program order.
std::vector<std::pair<std::string, const Stmt*>> labeled_statements(const Program& p);

}  // namespace graphweave
