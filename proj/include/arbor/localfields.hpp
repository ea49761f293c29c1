#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arbor/poly.hpp"
#include "arbor/rational.hpp"

namespace arbor {

struct PadicVal {
  bool infinite = false;  // valuation of 0
  long v = 0;

  bool operator==(const PadicVal&) const = default;
};

bool is_prime_u64(std::uint64_t n);

PadicVal valuation(const Int& x, std::uint64_t p);
PadicVal valuation(const Rat& x, std::uint64_t p);

// Condition on the base point for f = 2z^3 - 3z^2 + 1 over Q: a unit step at
// both 2 and 3, either at alpha or at 1 - alpha.
struct ConditionReport {
  Rat alpha;
  PadicVal v3_alpha, v3_one_minus, v2_alpha, v2_one_minus;
  bool at3 = false, at2 = false, ok = false;
};
ConditionReport condition_check(const Rat& alpha);

struct NewtonSegment {
  Rat slope;
  int length = 0;  // horizontal

  bool operator==(const NewtonSegment&) const = default;
};

struct NewtonPolygon {
  std::uint64_t p = 0;
  std::vector<NewtonSegment> segments;  // slopes strictly increasing
};

// Lower convex hull of (i, v_p(coeff_i)) over the nonzero coefficients.
NewtonPolygon newton_polygon(const Poly& f, std::uint64_t p);

// Smallest shift s in `shifts` with f^n(z + s) - alpha Eisenstein at p
// (unit leading coefficient, positive valuations below, valuation exactly 1
// at the constant term), or nullopt.
std::optional<long> eisenstein_shifted(const Poly& f, const Rat& alpha, int n, std::uint64_t p,
                                       const std::vector<long>& shifts = {0, 1});

// Ramification predictions for f = 2z^3 - 3z^2 + 1 at a base point passing
// the condition: e = 2^n over 2 and e = 3^n over 3, with the computable
// evidence attached (Eisenstein shift at 3 at this depth, and the length-2
// height-1 Newton segment at 2 for n = 1).
struct RamificationReport {
  Rat alpha;
  int n = 0;
  ConditionReport condition;
  std::optional<long> eisenstein_shift3;
  NewtonPolygon newton2_level1;
  bool has_len2_height1_segment = false;
  Int e2, e3;             // predicted ramification 2^n, 3^n
  Int degree_divisor;     // 6^n divides [K_f^n(alpha) : K]
};
RamificationReport ramification_report(const Rat& alpha, int n);

const Poly& belyi_like_cubic();  // 2z^3 - 3z^2 + 1

}  // namespace arbor
