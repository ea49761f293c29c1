#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbor/group.hpp"
#include "arbor/rational.hpp"
#include "arbor/tree.hpp"
#include "arbor/wreath.hpp"

namespace arbor {

enum class FamilyKind { Full, E, F };

struct Family {
  FamilyKind kind = FamilyKind::Full;
  int m = 0;        // E
  int m1 = 0, m2 = 0;  // F

  static Family full() { return {FamilyKind::Full, 0, 0, 0}; }
  static Family E(int m);
  static Family F(int m1, int m2);
  std::string name() const;  // "full", "E^2", "F^(3,1)"
  bool operator==(const Family&) const = default;
};

Int closed_form_order(const TreeShape& shape, const Family& family);
bool is_member(const WreathElement& s, const Family& family);

// A uniformly random ambient element pushed into the family by toggling one
// deep transposition per violated sign condition, processed root-down so each
// fix only disturbs conditions not yet visited.
WreathElement random_member(const TreeShape& shape, const Family& family, std::mt19937_64& rng);

struct HarvestedGroup {
  TreeShape shape;
  Family family;
  PermGroup group;
  std::vector<WreathElement> wreath_generators;
};

// Seeds with structured even generators, then adds random members until the
// certified order reaches the closed form; throws HarvestError otherwise.
HarvestedGroup harvest_group(const TreeShape& shape, const Family& family,
                             std::uint64_t seed = 0, int max_random = 256);

struct NormalTower {
  std::vector<PermGroup> subgroups;  // ascending: 1, M_n, ker(res_{n-1}), E_n^2
  std::vector<std::string> names;
  bool normality_verified = false;
};

// The tower 1 < M_n < ker(res_{n-1}) < E_n^2 for odd arity, depth >= 2.
NormalTower tower_E(const TreeShape& shape, std::uint64_t seed = 0);

// tau with sigma^tau = tau sigma tau^{-1} = sigma^{-1}, built by recursion on
// the truncation plus per-cycle bottom conjugators.
WreathElement conjugating_inverter(const WreathElement& sigma);

// --- Parity tuples (C_2^d written multiplicatively) ------------------------

struct ParityTuple {
  std::vector<int> entries;  // each +1 or -1

  explicit ParityTuple(std::vector<int> e);
  int minus_count() const;
  bool is_all_ones() const { return minus_count() == 0; }
  bool operator==(const ParityTuple&) const = default;
};

enum class ReduceStepKind { ThreeShift, Rotation, BlockProduct };

struct ReduceStep {
  ReduceStepKind kind;
  int window = -1;  // leftmost 0-based index of the rotated triple (ThreeShift)
  ParityTuple after;
};

struct ReduceTrace {
  ParityTuple initial;
  std::vector<ReduceStep> steps;
  const ParityTuple& final_tuple() const;
};

// The proof's procedure: 3-cycle shifts into block form, conjugate by the
// d-cycle, multiply, and re-sort; ends at (-1,-1,1,...,1). Requires odd d,
// an even number of -1 entries and a non-identity tuple.
ReduceTrace reduce_parity_tuple(const ParityTuple& a, int step_cap = 10000);

// The printed pseudocode, verbatim; diverges on some valid inputs (it
// multiplies the original tuple by the rotated block form, which can cancel
// to the identity). Throws NonTerminationError at the cap.
ReduceTrace literal_algorithm1(const ParityTuple& a, int step_cap = 10000);

// Checks every step of a trace: kind-correct transition and the even
// minus-count invariant throughout.
bool validate_reduce_trace(const ReduceTrace& trace);

}  // namespace arbor
