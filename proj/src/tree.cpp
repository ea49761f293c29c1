#include "arbor/tree.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace arbor {

namespace {
constexpr std::uint64_t kMaxLeaves = 1'000'000;  // desk scale
}

TreeShape::TreeShape(int d, int n) : arity(d), depth(n) {
  if (d < 2) throw std::invalid_argument("TreeShape: arity must be >= 2");
  if (n < 1) throw std::invalid_argument("TreeShape: depth must be >= 1");
  std::uint64_t leaves = 1;
  for (int i = 0; i < n; ++i) {
    if (leaves > kMaxLeaves / static_cast<std::uint64_t>(d))
      throw std::invalid_argument("TreeShape: leaf count exceeds supported range");
    leaves *= static_cast<std::uint64_t>(d);
  }
}

std::uint64_t TreeShape::vertex_count_at(int level) const {
  std::uint64_t c = 1;
  for (int i = 0; i < level; ++i) c *= static_cast<std::uint64_t>(arity);
  return c;
}

LeafIndex address_to_index(const TreeAddress& addr, const TreeShape& shape) {
  const int m = addr.level();
  if (m > shape.depth) throw std::invalid_argument("address_to_index: level exceeds tree depth");
  std::uint64_t i = 0;  // 0-based; digit for l_{m-k} has weight d^k
  std::uint64_t w = 1;
  for (int k = 0; k < m; ++k) {
    int l = addr.labels[k];
    if (l < 1 || l > shape.arity)
      throw std::invalid_argument("address_to_index: label " + std::to_string(l) +
                                  " outside {1.." + std::to_string(shape.arity) + "}");
    i += static_cast<std::uint64_t>(l - 1) * w;
    w *= static_cast<std::uint64_t>(shape.arity);
  }
  return i + 1;
}

TreeAddress index_to_address(LeafIndex index, int level, const TreeShape& shape) {
  if (level < 0 || level > shape.depth)
    throw std::invalid_argument("index_to_address: bad level");
  const std::uint64_t count = shape.vertex_count_at(level);
  if (index < 1 || index > count)
    throw std::invalid_argument("index_to_address: index out of range");
  std::uint64_t i = index - 1;
  TreeAddress addr;
  addr.labels.resize(level);
  for (int k = 0; k < level; ++k) {
    addr.labels[k] = static_cast<int>(i % shape.arity) + 1;
    i /= shape.arity;
  }
  return addr;
}

Block block_of(const TreeShape& shape, int m, const TreeAddress& subtree_root) {
  if (m < 0 || m > shape.depth) throw std::invalid_argument("block_of: bad level m");
  if (subtree_root.level() != shape.depth - m)
    throw std::invalid_argument("block_of: subtree root must sit at level n - m");
  // Leaves of the subtree are the indices whose address ends in the root's
  // labels; under the integer labeling they form one contiguous run.
  const std::uint64_t root0 = address_to_index(subtree_root, shape) - 1;
  std::uint64_t size = shape.vertex_count_at(m);
  Block b;
  b.subtree_root = subtree_root;
  b.indices.reserve(size);
  const std::uint64_t first = root0 * size + 1;
  for (std::uint64_t i = 0; i < size; ++i) b.indices.push_back(first + i);
  return b;
}

}  // namespace arbor
