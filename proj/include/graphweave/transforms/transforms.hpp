#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphweave/lang/ast.hpp"

namespace graphweave {

/// Vertex-data layout: vectors not in any group are stored as their own array.
struct LayoutPlan {
  std::vector<std::vector<std::string>> groups;  // members in declaration order

  /// Group index of a vector, or -1 for a standalone array.
  int group_of(const std::string& vector) const;
  bool operator==(const LayoutPlan&) const = default;
};

/// Fuses two adjacent sibling `for` loops into one loop labelled `fused` whose
/// body holds a name node per original loop. Differing literal ranges get a
/// `<fused>_prologue` / `<fused>_epilogue` loop for the non-overlapping part.
void fuse_for_loops(Program& p, const std::string& l1, const std::string& l2, const std::string& fused);

/// Replaces the loop at `label` by loops `la` over [lo, split) and `lb` over [split, hi).
void split_for_loop(Program& p, const std::string& label, const std::string& la, const std::string& lb,
                    std::int64_t split);

/// Concatenates the apply functions of two compatible traversals into `fused_name`.
/// The traversal at `label1` applies the new function; the one at `label2` is removed.
void fuse_apply_functions(Program& p, const std::string& label1, const std::string& label2,
                          const std::string& fused_name);

/// Adds an array-of-structs group to `layout`.
void fuse_fields(const Program& p, LayoutPlan& layout, const std::vector<std::string>& vectors);

/// Turns vector initializers into generated vertex functions applied at the top of main.
void lower_vector_initializers(Program& p);

/// Name of the reserved full vertex set used by lowered initializers.
inline constexpr const char* kAllVertices = "__vertices";

}  // namespace graphweave
