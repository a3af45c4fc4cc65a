#include "graphweave/exec/runtime.hpp"

#include "graphweave/error.hpp"
#include "graphweave/transforms/transforms.hpp"

namespace graphweave {

Counters& Counters::operator+=(const Counters& o) {
  edges_examined += o.edges_examined;
  edges_applied += o.edges_applied;
  atomics_executed += o.atomics_executed;
  frontier_conversions += o.frontier_conversions;
  ssg_passes += o.ssg_passes;
  merge_ops += o.merge_ops;
  membership_tests += o.membership_tests;
  return *this;
}

Symbols Symbols::from(const Program& p) {
  Symbols s;
  for (const auto& g : p.globals) {
    switch (g.type.kind) {
      case Type::Kind::Vector:
        s.vectors[g.name] = static_cast<int>(s.vector_names.size());
        s.vector_names.push_back(g.name);
        s.vector_types.push_back(g.type.scalar);
        break;
      case Type::Kind::Scalar:
        s.scalars[g.name] = static_cast<int>(s.scalar_types.size());
        s.scalar_types.push_back(g.type.scalar);
        break;
      case Type::Kind::VertexSet: {
        int id = static_cast<int>(s.sets.size());
        s.sets[g.name] = id;
        break;
      }
      case Type::Kind::EdgeSet:
        s.edgesets[g.name] = static_cast<int>(s.edgeset_names.size());
        s.edgeset_names.push_back(g.name);
        break;
      default: break;
    }
  }
  int id = static_cast<int>(s.sets.size());
  s.sets[kAllVertices] = id;
  return s;
}

int Symbols::vector_id(const std::string& name) const {
  auto it = vectors.find(name);
  if (it == vectors.end()) throw Error(ErrorKind::VectorNotFound, "vector " + name + " does not exist");
  return it->second;
}

void VertexData::allocate(const Symbols& syms, const LayoutPlan& layout, std::int64_t n) {
  n_ = n;
  arrays_.clear();
  vecs_.assign(syms.vector_names.size(), VectorStorage{});
  for (std::size_t g = 0; g < layout.groups.size(); ++g) {
    const auto& members = layout.groups[g];
    auto k = static_cast<std::int64_t>(members.size());
    arrays_.emplace_back(static_cast<std::size_t>(n * k), 0);
    for (std::int64_t j = 0; j < k; ++j) {
      int id = syms.vector_id(members[j]);
      vecs_[id] = VectorStorage{members[j], syms.vector_types[id], static_cast<int>(g), arrays_.back().data() + j, k};
    }
  }
  for (std::size_t id = 0; id < syms.vector_names.size(); ++id) {
    if (vecs_[id].base) continue;
    arrays_.emplace_back(static_cast<std::size_t>(n), 0);
    vecs_[id] = VectorStorage{syms.vector_names[id], syms.vector_types[id], -1, arrays_.back().data(), 1};
  }
  // Empty arrays still need a valid base pointer.
  for (auto& v : vecs_) {
    if (!v.base) {
      static std::uint64_t dummy = 0;
      v.base = &dummy;
    }
  }
}

std::vector<double> VertexData::as_doubles(int id) const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (VertexId v = 0; v < n_; ++v) {
    Value x = load(id, v);
    out[v] = vecs_[id].is_double() ? x.d : static_cast<double>(x.i);
  }
  return out;
}

}  // namespace graphweave
