#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace aag {

using Vertex = int;

/// Maximum number of graph vertices supported by VertexSet.
inline constexpr int kMaxVertices = 64;

/// Set of vertex ids in [0, 64), iterated in increasing order.
class VertexSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    Vertex operator*() const { return std::countr_zero(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t mask) : mask_(mask) {}
  VertexSet(std::initializer_list<Vertex> vs) {
    for (Vertex v : vs) insert(v);
  }
  explicit VertexSet(std::span<const Vertex> vs) {
    for (Vertex v : vs) insert(v);
  }

  static VertexSet single(Vertex v) { return VertexSet(bit(v)); }
  /// {0, ..., n-1}
  static VertexSet range(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int size() const { return std::popcount(mask_); }
  bool contains(Vertex v) const { return v >= 0 && v < kMaxVertices && (mask_ & bit(v)) != 0; }
  Vertex min() const { return std::countr_zero(mask_); }
  Vertex max() const { return 63 - std::countl_zero(mask_); }

  void insert(Vertex v) { mask_ |= bit(v); }
  void erase(Vertex v) { mask_ &= ~bit(v); }

  bool is_subset_of(VertexSet o) const { return (mask_ & ~o.mask_) == 0; }
  bool is_proper_subset_of(VertexSet o) const { return is_subset_of(o) && mask_ != o.mask_; }

  VertexSet operator|(VertexSet o) const { return VertexSet(mask_ | o.mask_); }
  VertexSet operator&(VertexSet o) const { return VertexSet(mask_ & o.mask_); }
  VertexSet operator-(VertexSet o) const { return VertexSet(mask_ & ~o.mask_); }
  VertexSet& operator|=(VertexSet o) {
    mask_ |= o.mask_;
    return *this;
  }
  VertexSet& operator&=(VertexSet o) {
    mask_ &= o.mask_;
    return *this;
  }
  bool operator==(const VertexSet&) const = default;
  auto operator<=>(const VertexSet&) const = default;

  iterator begin() const { return iterator(mask_); }
  iterator end() const { return iterator(0); }

  std::vector<Vertex> to_vector() const { return {begin(), end()}; }

 private:
  static constexpr std::uint64_t bit(Vertex v) { return std::uint64_t{1} << v; }
  std::uint64_t mask_ = 0;
};

}  // namespace aag

template <>
struct std::hash<aag::VertexSet> {
  std::size_t operator()(aag::VertexSet s) const noexcept { return std::hash<std::uint64_t>{}(s.mask()); }
};
