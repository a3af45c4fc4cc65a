#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphweave/lang/ast.hpp"
#include "graphweave/lang/chain.hpp"

namespace graphweave {

enum class AccessKind { ReadOnly, WriteOnly, Reduction, AsyncReduction };

/// Claim is the BFS-style "write once if still at the sentinel" idiom, realized as a CAS.
enum class AccessOp { None, Sum, Min, Max, Claim };

enum class Endpoint { None, Src, Dst, Both, Other };

struct VectorAccess {
  std::string vector;
  AccessKind kind = AccessKind::ReadOnly;
  AccessOp op = AccessOp::None;
  Endpoint indexed_by = Endpoint::None;
  std::optional<Expr> claim_sentinel;
};

using AccessMap = std::vector<VectorAccess>;

const VectorAccess* find_access(const AccessMap& m, const std::string& vector);

const char* access_kind_name(AccessKind k);
const char* access_op_name(AccessOp op);

/// Per-function classification. Vectors are listed in order of first
/// appearance, assignment targets before their right-hand sides.
/// Throws MixedAccessError when a vector is both plainly read and written,
/// read and sum-reduced, or updated with two different operators.
AccessMap classify_accesses(const Program& p, const FuncDecl& f);

/// Classification across the apply function and every filter of a chain.
/// A vector written by the apply function at dst and tested against a
/// constant in the destination filter becomes AsyncReduction(Claim).
AccessMap classify_chain_accesses(const Program& p, const ApplyChain& c);

}  // namespace graphweave
