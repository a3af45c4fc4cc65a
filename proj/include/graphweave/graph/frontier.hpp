#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "graphweave/graph/graph.hpp"

namespace graphweave {

enum class FrontierRepr { Sparse, Bool, Bits };

const char* frontier_repr_name(FrontierRepr r);

class Frontier {
 public:
  Frontier() = default;
  static Frontier empty(std::int64_t n);
  static Frontier full(std::int64_t n);
  static Frontier from_ids(std::int64_t n, std::vector<VertexId> ids);
  static Frontier from_flags(std::vector<std::uint8_t> flags);

  std::int64_t num_vertices() const { return n_; }
  std::int64_t size() const { return size_; }
  FrontierRepr repr() const { return repr_; }

  /// Membership for dense representations (Bool/Bits); sparse frontiers are converted on demand.
  bool contains(VertexId v) const {
    if (repr_ == FrontierRepr::Bool) return flags_[v] != 0;
    if (repr_ == FrontierRepr::Bits) return (bits_[v >> 6] >> (v & 63)) & 1u;
    return slow_contains(v);
  }

  const std::vector<VertexId>& ids() const { return ids_; }
  const std::vector<std::uint8_t>& flags() const { return flags_; }
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  Frontier converted(FrontierRepr target) const;
  void convert(FrontierRepr target) { *this = converted(target); }

  /// Members in ascending order, whatever the representation.
  std::vector<VertexId> sorted_ids() const;
  bool is_full() const { return size_ == n_; }

  std::int64_t sum_out_degrees(const Graph& g) const;

  /// Adds v to a sparse frontier (duplicates are ignored for dense ones).
  void add(VertexId v);

 private:
  std::int64_t n_ = 0;
  std::int64_t size_ = 0;
  FrontierRepr repr_ = FrontierRepr::Sparse;
  std::vector<VertexId> ids_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::uint64_t> bits_;
  mutable std::optional<std::int64_t> sum_degrees_;

  bool slow_contains(VertexId v) const;
};

}  // namespace graphweave
