#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arbor/perm.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// An automorphism of T_n(d) = an element of the n-fold wreath product
// [S_d]^n, stored as a dense table: one permutation of {1..d} per internal
// vertex. Vertices at level k are indexed 0..d^k-1 by the integer labeling.
//
// Action convention (left action): a leaf is read root-to-leaf; at each step
// the child label is moved by the permutation stored at the vertex reached by
// following the image labels of the ancestors. to_flat is then an injective
// homomorphism [S_d]^n -> S_{d^n}, which the tests treat as normative.
class WreathElement {
 public:
  explicit WreathElement(const TreeShape& shape);  // identity
  static WreathElement identity(const TreeShape& shape) { return WreathElement(shape); }
  static WreathElement random(const TreeShape& shape, std::mt19937_64& rng);

  const TreeShape& shape() const { return shape_; }

  const Perm& vertex_perm(int level, std::uint64_t vertex0) const;
  const Perm& vertex_perm(const TreeAddress& vertex) const;
  void set_vertex_perm(int level, std::uint64_t vertex0, const Perm& p);
  void set_vertex_perm(const TreeAddress& vertex, const Perm& p);

  // Image of a 0-based leaf under the action above.
  std::uint64_t apply_leaf0(std::uint64_t leaf0) const;
  // Image of a 0-based level-k vertex (path prefix of length k).
  std::uint64_t apply_vertex0(int level, std::uint64_t vertex0) const;

  WreathElement operator*(const WreathElement& rhs) const;  // this after rhs
  WreathElement inverse() const;
  bool is_identity() const;
  bool operator==(const WreathElement&) const = default;

  Perm to_flat() const;                      // permutation of {1..d^n}
  WreathElement restrict_to(int m) const;    // truncation, element of Aut(T_m)
  // The element of Aut(T_{n-k}) carried by the subtree rooted at a level-k
  // vertex (table entries over that vertex, re-rooted).
  WreathElement subtree_at(int level, std::uint64_t vertex0) const;

  // Canonical text form: cycle-notation permutations in root-first
  // depth-first vertex order, children bracketed. Deterministic, diff-stable.
  std::string to_string() const;

 private:
  TreeShape shape_;
  std::vector<std::vector<Perm>> levels_;  // levels_[k][vertex0]
};

enum class SignKind { total, restricted, block_product, pair };

int sign_total(const WreathElement& s);                     // sign of to_flat(s)
int sign_restricted(const WreathElement& s, int m);         // sgn_m
int sign_block_product(const WreathElement& s, int m);      // sgn^m
int sign_pair(const WreathElement& s, int m1, int m2);      // sgn^(m1,m2) = sgn^(m2) o res_(m1)
int signature(const WreathElement& s, SignKind kind, int m = 0, int m2 = 0);

// Membership in E_n^m: every vertex of height >= m carries a subtree element
// with trivial sgn_m. Membership in F_n^(m1,m2): same with sgn^(m1,m2).
bool is_member_E(const WreathElement& s, int m);
bool is_member_F(const WreathElement& s, int m1, int m2);

}  // namespace arbor
