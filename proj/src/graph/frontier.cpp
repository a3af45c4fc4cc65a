#include "graphweave/graph/frontier.hpp"

#include <algorithm>
#include <bit>

namespace graphweave {

const char* frontier_repr_name(FrontierRepr r) {
  switch (r) {
    case FrontierRepr::Sparse: return "sparse";
    case FrontierRepr::Bool: return "bool-array";
    case FrontierRepr::Bits: return "bitvector";
  }
  return "";
}

Frontier Frontier::empty(std::int64_t n) {
  Frontier f;
  f.n_ = n;
  return f;
}

Frontier Frontier::full(std::int64_t n) {
  Frontier f;
  f.n_ = n;
  f.size_ = n;
  f.ids_.resize(n);
  for (VertexId v = 0; v < n; ++v) f.ids_[v] = v;
  return f;
}

Frontier Frontier::from_ids(std::int64_t n, std::vector<VertexId> ids) {
  Frontier f;
  f.n_ = n;
  f.size_ = static_cast<std::int64_t>(ids.size());
  f.ids_ = std::move(ids);
  return f;
}

Frontier Frontier::from_flags(std::vector<std::uint8_t> flags) {
  Frontier f;
  f.n_ = static_cast<std::int64_t>(flags.size());
  f.repr_ = FrontierRepr::Bool;
  f.size_ = std::count_if(flags.begin(), flags.end(), [](std::uint8_t x) { return x != 0; });
  f.flags_ = std::move(flags);
  return f;
}

bool Frontier::slow_contains(VertexId v) const { return std::find(ids_.begin(), ids_.end(), v) != ids_.end(); }

std::vector<VertexId> Frontier::sorted_ids() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(size_));
  switch (repr_) {
    case FrontierRepr::Sparse:
      out = ids_;
      std::sort(out.begin(), out.end());
      break;
    case FrontierRepr::Bool:
      for (VertexId v = 0; v < n_; ++v) {
        if (flags_[v]) out.push_back(v);
      }
      break;
    case FrontierRepr::Bits:
      for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
          int b = std::countr_zero(word);
          out.push_back(static_cast<VertexId>(w * 64 + b));
          word &= word - 1;
        }
      }
      break;
  }
  return out;
}

Frontier Frontier::converted(FrontierRepr target) const {
  if (target == repr_) return *this;
  Frontier f;
  f.n_ = n_;
  f.repr_ = target;
  f.sum_degrees_ = sum_degrees_;
  std::vector<VertexId> members = repr_ == FrontierRepr::Sparse ? ids_ : sorted_ids();
  switch (target) {
    case FrontierRepr::Sparse:
      f.ids_ = std::move(members);
      f.size_ = static_cast<std::int64_t>(f.ids_.size());
      break;
    case FrontierRepr::Bool:
      f.flags_.assign(n_, 0);
      for (VertexId v : members) f.flags_[v] = 1;
      f.size_ = std::count(f.flags_.begin(), f.flags_.end(), 1);
      break;
    case FrontierRepr::Bits:
      f.bits_.assign((n_ + 63) / 64, 0);
      for (VertexId v : members) f.bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
      f.size_ = 0;
      for (auto w : f.bits_) f.size_ += std::popcount(w);
      break;
  }
  return f;
}

std::int64_t Frontier::sum_out_degrees(const Graph& g) const {
  if (!sum_degrees_) {
    std::int64_t s = 0;
    if (repr_ == FrontierRepr::Sparse) {
      for (VertexId v : ids_) s += g.out_degree(v);
    } else {
      for (VertexId v : sorted_ids()) s += g.out_degree(v);
    }
    sum_degrees_ = s;
  }
  return *sum_degrees_;
}

void Frontier::add(VertexId v) {
  sum_degrees_.reset();
  switch (repr_) {
    case FrontierRepr::Sparse:
      ids_.push_back(v);
      ++size_;
      break;
    case FrontierRepr::Bool:
      if (!flags_[v]) {
        flags_[v] = 1;
        ++size_;
      }
      break;
    case FrontierRepr::Bits:
      if (!contains(v)) {
        bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
        ++size_;
      }
      break;
  }
}

}  // namespace graphweave
