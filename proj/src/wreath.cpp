#include "arbor/wreath.hpp"

#include <algorithm>
#include <stdexcept>

namespace arbor {

WreathElement::WreathElement(const TreeShape& shape) : shape_(shape) {
  levels_.resize(shape.depth);
  std::uint64_t count = 1;
  for (int k = 0; k < shape.depth; ++k) {
    levels_[k].assign(count, Perm(static_cast<std::size_t>(shape.arity)));
    count *= static_cast<std::uint64_t>(shape.arity);
  }
}

WreathElement WreathElement::random(const TreeShape& shape, std::mt19937_64& rng) {
  WreathElement w(shape);
  const int d = shape.arity;
  for (auto& level : w.levels_) {
    for (auto& p : level) {
      // Fisher-Yates on {0..d-1}
      std::vector<std::uint32_t> img(d);
      for (int i = 0; i < d; ++i) img[i] = static_cast<std::uint32_t>(i + 1);
      for (int i = d - 1; i > 0; --i) {
        std::uniform_int_distribution<int> dist(0, i);
        std::swap(img[i], img[dist(rng)]);
      }
      p = Perm::from_images1(img);
    }
  }
  return w;
}

const Perm& WreathElement::vertex_perm(int level, std::uint64_t vertex0) const {
  if (level < 0 || level >= shape_.depth) throw std::invalid_argument("vertex_perm: bad level");
  return levels_[level].at(vertex0);
}

const Perm& WreathElement::vertex_perm(const TreeAddress& vertex) const {
  const int k = vertex.level();
  return vertex_perm(k, address_to_index(vertex, shape_) - 1);
}

void WreathElement::set_vertex_perm(int level, std::uint64_t vertex0, const Perm& p) {
  if (level < 0 || level >= shape_.depth) throw std::invalid_argument("set_vertex_perm: bad level");
  if (p.degree() != static_cast<std::size_t>(shape_.arity))
    throw std::invalid_argument("set_vertex_perm: permutation degree must equal arity");
  levels_[level].at(vertex0) = p;
}

void WreathElement::set_vertex_perm(const TreeAddress& vertex, const Perm& p) {
  set_vertex_perm(vertex.level(), address_to_index(vertex, shape_) - 1, p);
}

std::uint64_t WreathElement::apply_vertex0(int level, std::uint64_t vertex0) const {
  const std::uint64_t d = static_cast<std::uint64_t>(shape_.arity);
  // Root-first digits of the path; most significant digit is the root child.
  std::uint64_t image = 0;
  std::uint64_t weight = 1;
  for (int k = 1; k < level; ++k) weight *= d;
  std::uint64_t rest = vertex0;
  std::uint64_t at = 0;  // image vertex reached so far
  for (int k = 0; k < level; ++k) {
    std::uint32_t digit = static_cast<std::uint32_t>(rest / weight);
    rest %= weight;
    std::uint32_t moved = levels_[k][at](digit);
    image = image * d + moved;
    at = at * d + moved;
    weight /= d;
  }
  return image;
}

std::uint64_t WreathElement::apply_leaf0(std::uint64_t leaf0) const {
  return apply_vertex0(shape_.depth, leaf0);
}

WreathElement WreathElement::operator*(const WreathElement& rhs) const {
  if (shape_ != rhs.shape_) throw std::invalid_argument("Wreath compose: shape mismatch");
  WreathElement out(shape_);
  for (int k = 0; k < shape_.depth; ++k) {
    for (std::uint64_t q = 0; q < levels_[k].size(); ++q) {
      // Composed table entry at the image vertex of q under *this:
      // (g*h).perm_at(g(q)) = g.perm_at(g(q)) * h.perm_at(q).
      std::uint64_t v = apply_vertex0(k, q);
      out.levels_[k][v] = levels_[k][v] * rhs.levels_[k][q];
    }
  }
  return out;
}

WreathElement WreathElement::inverse() const {
  WreathElement out(shape_);
  for (int k = 0; k < shape_.depth; ++k)
    for (std::uint64_t q = 0; q < levels_[k].size(); ++q)
      out.levels_[k][q] = levels_[k][apply_vertex0(k, q)].inverse();
  return out;
}

bool WreathElement::is_identity() const {
  for (const auto& level : levels_)
    for (const auto& p : level)
      if (!p.is_identity()) return false;
  return true;
}

Perm WreathElement::to_flat() const {
  const std::uint64_t leaves = shape_.leaf_count();
  std::vector<std::uint32_t> img(leaves);
  for (std::uint64_t x = 0; x < leaves; ++x)
    img[x] = static_cast<std::uint32_t>(apply_leaf0(x) + 1);
  return Perm::from_images1(img);
}

WreathElement WreathElement::restrict_to(int m) const {
  if (m < 1 || m > shape_.depth) throw std::invalid_argument("restrict_to: level out of range");
  WreathElement out(TreeShape(shape_.arity, m));
  for (int k = 0; k < m; ++k) out.levels_[k] = levels_[k];
  return out;
}

WreathElement WreathElement::subtree_at(int level, std::uint64_t vertex0) const {
  if (level < 0 || level >= shape_.depth) throw std::invalid_argument("subtree_at: bad level");
  WreathElement out(TreeShape(shape_.arity, shape_.depth - level));
  std::uint64_t width = 1;
  for (int j = 0; j + level < shape_.depth; ++j) {
    for (std::uint64_t w = 0; w < width; ++w)
      out.levels_[j][w] = levels_[level + j][vertex0 * width + w];
    width *= static_cast<std::uint64_t>(shape_.arity);
  }
  return out;
}

namespace {
void serialize_vertex(const WreathElement& s, int level, std::uint64_t vertex0,
                      std::string& out) {
  out += s.vertex_perm(level, vertex0).cycle_string();
  if (level + 1 >= s.shape().depth) return;
  out += '[';
  for (int c = 0; c < s.shape().arity; ++c) {
    if (c) out += ", ";
    serialize_vertex(s, level + 1, vertex0 * s.shape().arity + c, out);
  }
  out += ']';
}
}  // namespace

std::string WreathElement::to_string() const {
  std::string out;
  serialize_vertex(*this, 0, 0, out);
  return out;
}

int sign_total(const WreathElement& s) { return s.to_flat().sign(); }

int sign_restricted(const WreathElement& s, int m) {
  if (m < 1 || m > s.shape().depth)
    throw std::invalid_argument("sign_restricted: level out of range");
  return s.restrict_to(m).to_flat().sign();
}

int sign_block_product(const WreathElement& s, int m) {
  if (m < 1 || m > s.shape().depth)
    throw std::invalid_argument("sign_block_product: level out of range");
  if (m == s.shape().depth) return 1;  // height-0 subtrees
  int sign = 1;
  const std::uint64_t count = s.shape().vertex_count_at(m);
  for (std::uint64_t v = 0; v < count; ++v) sign *= sign_total(s.subtree_at(m, v));
  return sign;
}

int sign_pair(const WreathElement& s, int m1, int m2) {
  if (!(m2 >= 1 && m1 > m2 && m1 <= s.shape().depth))
    throw std::invalid_argument("sign_pair: need depth >= m1 > m2 >= 1");
  return sign_block_product(s.restrict_to(m1), m2);
}

int signature(const WreathElement& s, SignKind kind, int m, int m2) {
  switch (kind) {
    case SignKind::total: return sign_total(s);
    case SignKind::restricted: return sign_restricted(s, m);
    case SignKind::block_product: return sign_block_product(s, m);
    case SignKind::pair: return sign_pair(s, m, m2);
  }
  throw std::invalid_argument("signature: bad kind");
}

bool is_member_E(const WreathElement& s, int m) {
  if (m < 1) throw std::invalid_argument("is_member_E: m must be >= 1");
  const int n = s.shape().depth;
  for (int level = 0; level <= n - m; ++level) {
    const std::uint64_t count = s.shape().vertex_count_at(level);
    for (std::uint64_t v = 0; v < count; ++v)
      if (sign_restricted(s.subtree_at(level, v), m) != 1) return false;
  }
  return true;
}

bool is_member_F(const WreathElement& s, int m1, int m2) {
  if (!(m1 > m2 && m2 >= 1)) throw std::invalid_argument("is_member_F: need m1 > m2 >= 1");
  const int n = s.shape().depth;
  for (int level = 0; level <= n - m1; ++level) {
    const std::uint64_t count = s.shape().vertex_count_at(level);
    for (std::uint64_t v = 0; v < count; ++v)
      if (sign_pair(s.subtree_at(level, v), m1, m2) != 1) return false;
  }
  return true;
}

}  // namespace arbor
