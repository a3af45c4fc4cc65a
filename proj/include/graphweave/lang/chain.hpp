#pragma once

#include <optional>
#include <string>

#include "graphweave/lang/ast.hpp"

namespace graphweave {

/// An edgeset operator chain such as `edges.from(f).dstFilter(g).applyModified(h, vec)`.
struct ApplyChain {
  std::string edgeset;
  std::optional<Expr> from_set;  // source frontier
  std::optional<Expr> to_set;    // destination frontier
  std::string src_filter;
  std::string dst_filter;
  std::string edge_filter;
  std::string apply_func;
  bool modified = false;
  std::string tracked_vector;
  bool dedup = true;

  friend bool operator==(const ApplyChain&, const ApplyChain&) = default;
};

/// Returns the chain if `e` is an edgeset chain rooted at a global edgeset.
/// Throws TypeError for malformed chains (unknown methods, missing terminator).
std::optional<ApplyChain> extract_apply_chain(const Program& p, const Expr& e);

/// The expression inside a statement that holds an edgeset-apply chain, if any.
const Expr* chain_expr_of(const Program& p, const Stmt& s);
Expr* chain_expr_of(const Program& p, Stmt& s);

inline bool is_edgeset_apply(const Program& p, const Stmt& s) { return chain_expr_of(p, s) != nullptr; }

}  // namespace graphweave
