#pragma once

#include <cstdint>
#include <vector>

namespace arbor {

// A regular d-ary rooted tree of n levels. Leaves are the d^n vertices at
// level n; internal vertices live at levels 0..n-1 (level 0 is the root).
struct TreeShape {
  int arity;  // d >= 2
  int depth;  // n >= 1

  TreeShape(int d, int n);
  std::uint64_t leaf_count() const { return vertex_count_at(depth); }
  std::uint64_t vertex_count_at(int level) const;  // d^level
  bool operator==(const TreeShape&) const = default;
};

// Vertex label in the regular labeling: the tuple (l_m, ..., l_1) with each
// l_i in {1..d}. labels[0] = l_m is the leaf-most component and labels back()
// = l_1 names the child of the root; the empty sequence is the root itself.
struct TreeAddress {
  std::vector<int> labels;

  TreeAddress() = default;
  TreeAddress(std::initializer_list<int> ls) : labels(ls) {}
  explicit TreeAddress(std::vector<int> ls) : labels(std::move(ls)) {}
  int level() const { return static_cast<int>(labels.size()); }
  bool operator==(const TreeAddress&) const = default;
};

// 1-based integer label of a level-m vertex, in {1..d^m}:
//   i = l_m + (l_{m-1}-1) d + (l_{m-2}-1) d^2 + ... + (l_1-1) d^{m-1},
// the unique bijection onto {1..d^m} compatible with the block structure.
using LeafIndex = std::uint64_t;

// The block of T_n over T_m attached to a level n-m subtree root: the d^m
// leaf indices lying in that subtree (a contiguous range under the labeling).
struct Block {
  TreeAddress subtree_root;
  std::vector<LeafIndex> indices;
};

LeafIndex address_to_index(const TreeAddress& addr, const TreeShape& shape);
TreeAddress index_to_address(LeafIndex index, int level, const TreeShape& shape);

// Requires level(subtree_root) == n - m.
Block block_of(const TreeShape& shape, int m, const TreeAddress& subtree_root);

}  // namespace arbor
