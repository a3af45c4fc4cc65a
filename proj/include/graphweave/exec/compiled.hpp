#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphweave/exec/runtime.hpp"
#include "graphweave/lang/ast.hpp"

namespace graphweave {

enum class NodeOp : std::uint8_t {
  Const,
  Local,
  Global,
  VecLoad,  // a = vector, b = index
  AddI, SubI, MulI, DivI,
  AddD, SubD, MulD, DivD,
  NegI, NegD,
  IntToDouble, DoubleToInt,
  LtI, LeI, GtI, GeI, EqI, NeI,
  LtD, LeD, GtD, GeD, EqD, NeD,
  And, Or, Not,
  Fabs, Sqrt,
  MinI, MaxI, MinD, MaxD,
  OutDegree,  // a = edgeset, b = vertex
  InDegree,
  NumEdges,   // a = edgeset
  SetSize,    // a = global set
};

struct Node {
  NodeOp op = NodeOp::Const;
  int a = 0;
  int b = -1;
  int c = -1;
  Value k{};
};

enum class CStmtOp : std::uint8_t { SetLocal, VecStore, VecReduce, If, For, While };

struct CStmt {
  CStmtOp op = CStmtOp::SetLocal;
  int target = -1;  // local slot or vector id
  int index = -1;   // node
  int value = -1;   // node (For: lower bound)
  int limit = -1;   // For: upper bound node
  ReduceOp rop = ReduceOp::Sum;
  std::vector<CStmt> body;
  std::vector<CStmt> else_body;
};

struct CompiledFunc {
  std::string name;
  int num_params = 0;
  int output_slot = -1;
  int num_locals = 0;
  std::vector<Node> nodes;
  std::vector<CStmt> body;
};

/// Compiles every user and generated function of a program.
std::vector<CompiledFunc> compile_functions(const Program& p, const Symbols& syms);
const CompiledFunc* find_compiled(const std::vector<CompiledFunc>& fs, const std::string& name);

/// How writes to a vector are realized during one traversal.
enum class WriteMode : std::uint8_t { Plain, Atomic, Buffer, Claim };

/// Per-worker execution state.
struct ExecCtx {
  Runtime* rt = nullptr;
  const WriteMode* modes = nullptr;       // per vector; null means all Plain
  const std::uint64_t* sentinels = nullptr;  // per vector, bit pattern for Claim
  std::uint64_t* const* buffers = nullptr;   // per vector, current segment's buffer (Buffer mode)
  int tracked = -1;
  std::uint8_t* visited = nullptr;  // dedup flags, null when dedup is off
  std::vector<VertexId>* out = nullptr;
  bool changed = false;  // tracked vector changed during the last call
  Counters* counters = nullptr;
  std::vector<Value> frame;
};

void call_vertex(const CompiledFunc& f, ExecCtx& ctx, VertexId v);
bool call_filter(const CompiledFunc& f, ExecCtx& ctx, VertexId v);
void call_edge(const CompiledFunc& f, ExecCtx& ctx, VertexId src, VertexId dst, std::int64_t weight);
bool call_edge_filter(const CompiledFunc& f, ExecCtx& ctx, VertexId src, VertexId dst, std::int64_t weight);

/// Identity element of a reduction, as a vector bit pattern.
std::uint64_t reduce_identity(ReduceOp op, bool is_double);
/// Folds `x` into `acc` with `op`, returning the new value.
Value reduce_values(ReduceOp op, bool is_double, Value acc, Value x);

}  // namespace graphweave
