#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "arbor/perm.hpp"
#include "arbor/rational.hpp"

namespace arbor {

// A generated permutation group with a certified deterministic stabilizer
// chain (base points chosen as smallest moved, in order). The chain gives the
// exact order, an exact membership test, uniform random elements and ordered
// enumeration. Handles are immutable once built apart from add_generator.
class PermGroup {
 public:
  explicit PermGroup(std::size_t degree);  // trivial group
  PermGroup(std::size_t degree, std::vector<Perm> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  void add_generator(const Perm& g);

  const Int& order() const { return order_; }
  bool contains(const Perm& p) const;
  bool is_trivial() const { return order_ == 1; }

  std::vector<std::uint32_t> orbit1(std::uint32_t point1) const;  // 1-based
  bool is_transitive() const;

  Perm random_element(std::mt19937_64& rng) const;
  // Visits every element in a fixed deterministic order; throws
  // ResourceLimitError if the order exceeds the bound.
  void for_each_element(const std::function<void(const Perm&)>& fn, std::uint64_t bound) const;
  std::vector<Perm> elements(std::uint64_t bound) const;

  std::size_t base_length() const { return chain_.size(); }

 private:
  struct ChainLevel {
    std::uint32_t base = 0;                 // 0-based
    std::vector<Perm> gens;                 // strong generators at this level
    std::vector<std::int64_t> orbit_pos;    // point -> transversal slot, -1 outside
    std::vector<std::uint32_t> orbit_pts;   // discovery order; orbit_pts[0] == base
    std::vector<Perm> transversal;          // transversal[i]: base -> orbit_pts[i]
  };

  void place(const Perm& residue, std::size_t level);
  void collect_gens_from(std::size_t level, std::vector<const Perm*>& out) const;
  void verify_from(std::size_t start);
  void recompute_orbit(std::size_t level);
  // Sifts p through levels >= from; returns the residue and the level where
  // sifting stopped (== chain_.size() when it survived the whole chain).
  std::pair<Perm, std::size_t> sift(Perm p, std::size_t from) const;
  void recompute_order();

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::vector<ChainLevel> chain_;
  Int order_;
};

bool is_subgroup_of(const PermGroup& sub, const PermGroup& sup);
bool is_normal_in(const PermGroup& sub, const PermGroup& sup);

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds);
PermGroup derived_subgroup(const PermGroup& g);

// Abelian invariants of g / [g,g] as a sorted multiset of prime powers.
// The quotient must have at most quotient_bound elements.
std::vector<Int> abelianization_invariants(const PermGroup& g,
                                           std::uint64_t quotient_bound = 1 << 16);

// All subgroups generated by a single conjugacy class (the atoms every
// normal subgroup is a join of), deduplicated.
std::vector<PermGroup> conjugacy_class_closures(const PermGroup& g, std::uint64_t bound);
std::vector<PermGroup> minimal_normal_subgroups(const PermGroup& g, std::uint64_t bound);
// The full lattice of normal subgroups, ascending by order.
std::vector<PermGroup> normal_subgroup_lattice(const PermGroup& g, std::uint64_t bound);

struct ChiefSeries {
  std::vector<PermGroup> subgroups;  // 1 = N_0 < N_1 < ... < N_k = g
  std::vector<Int> factor_orders;    // |N_{i+1}| / |N_i|, bottom factor first
};
std::vector<ChiefSeries> chief_series(const PermGroup& g, std::uint64_t bound);
bool is_unique_chief_series(const PermGroup& g, std::uint64_t bound);

// Seeded random search for a generating pair; the certified order of the
// produced pair equals |g| exactly. Failure is a search outcome, never a
// disproof.
std::optional<std::pair<Perm, Perm>> rank2_witness(const PermGroup& g, std::uint64_t attempts,
                                                   std::uint64_t seed);

}  // namespace arbor
