#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphweave/graph/frontier.hpp"
#include "graphweave/graph/graph.hpp"
#include "graphweave/lang/ast.hpp"
#include "graphweave/transforms/transforms.hpp"

namespace graphweave {

/// Scalar register: ints (and bools, vertex ids) use `i`, doubles use `d`.
union Value {
  std::int64_t i;
  double d;
};

inline Value int_value(std::int64_t v) {
  Value x;
  x.i = v;
  return x;
}
inline Value double_value(double v) {
  Value x;
  x.d = v;
  return x;
}

inline std::uint64_t to_bits(Value v, bool is_double) {
  return is_double ? std::bit_cast<std::uint64_t>(v.d) : static_cast<std::uint64_t>(v.i);
}
inline Value from_bits(std::uint64_t b, bool is_double) {
  return is_double ? double_value(std::bit_cast<double>(b)) : int_value(static_cast<std::int64_t>(b));
}

struct Counters {
  std::int64_t edges_examined = 0;
  std::int64_t edges_applied = 0;
  std::int64_t atomics_executed = 0;
  std::int64_t frontier_conversions = 0;
  std::int64_t ssg_passes = 0;
  std::int64_t merge_ops = 0;
  std::int64_t membership_tests = 0;

  Counters& operator+=(const Counters& o);
  bool operator==(const Counters&) const = default;
};

/// Name-to-id tables shared by the function compiler and the runtime.
struct Symbols {
  std::map<std::string, int> vectors;
  std::vector<std::string> vector_names;
  std::vector<ScalarType> vector_types;
  std::map<std::string, int> scalars;
  std::vector<ScalarType> scalar_types;
  std::map<std::string, int> sets;
  std::map<std::string, int> edgesets;
  std::vector<std::string> edgeset_names;

  static Symbols from(const Program& p);
  int vector_id(const std::string& name) const;
};

struct VectorStorage {
  std::string name;
  ScalarType type = ScalarType::Int;
  int group = -1;  // AoS group, -1 for a standalone array
  std::uint64_t* base = nullptr;
  std::int64_t stride = 1;

  bool is_double() const { return type == ScalarType::Double; }
  std::uint64_t& slot(VertexId v) const { return base[v * stride]; }
};

/// Vertex data laid out per a LayoutPlan: standalone arrays or interleaved records.
class VertexData {
 public:
  void allocate(const Symbols& syms, const LayoutPlan& layout, std::int64_t n);

  std::int64_t size() const { return n_; }
  std::size_t num_vectors() const { return vecs_.size(); }
  const VectorStorage& vec(int id) const { return vecs_[id]; }

  Value load(int id, VertexId v) const {
    const VectorStorage& s = vecs_[id];
    return from_bits(std::atomic_ref<std::uint64_t>(s.slot(v)).load(std::memory_order_relaxed), s.is_double());
  }
  void store(int id, VertexId v, Value x) {
    const VectorStorage& s = vecs_[id];
    std::atomic_ref<std::uint64_t>(s.slot(v)).store(to_bits(x, s.is_double()), std::memory_order_relaxed);
  }

  std::vector<double> as_doubles(int id) const;

 private:
  std::int64_t n_ = 0;
  std::vector<std::vector<std::uint64_t>> arrays_;
  std::vector<VectorStorage> vecs_;
};

/// Everything compiled functions can see: vertex data, scalar globals, global sets and edgesets.
struct Runtime {
  std::int64_t n = 0;
  VertexData data;
  std::vector<Value> scalars;
  std::vector<Frontier> sets;
  std::vector<const Graph*> edgesets;
};

}  // namespace graphweave
