#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace arbor {

// A permutation of {1..N} in array form (stored 0-based). Composition is
// function composition: (a * b)(x) = a(b(x)), i.e. b acts first.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t n);  // identity
  static Perm identity(std::size_t n) { return Perm(n); }
  // images1[i] is the 1-based image of point i+1.
  static Perm from_images1(const std::vector<std::uint32_t>& images1);
  // cycles use 1-based points, e.g. {{1,2,3},{4,5}}.
  static Perm from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles);

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator()(std::uint32_t x0) const { return img_[x0]; }  // 0-based
  std::uint32_t image1(std::uint32_t x1) const { return img_[x1 - 1] + 1; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  bool is_identity() const;
  int sign() const;                      // +1 or -1
  std::vector<int> cycle_type() const;   // ascending partition of N
  std::uint64_t order() const;           // lcm of cycle lengths
  // Smallest 0-based moved point, or degree() if identity.
  std::uint32_t smallest_moved() const;

  std::string cycle_string() const;  // "(1 2 3)(4 5)", "()" for identity

  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

}  // namespace arbor
