#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace arbor {

using Int = mpz_class;
using Rat = mpq_class;

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, const Int& e);  // e may be negative; base != 0 then

// Exact perfect-square tests. The witness, when requested and the test
// succeeds, is the non-negative square root.
bool is_square_int(const Int& n, Int* root = nullptr);
bool is_square_rat(const Rat& q, Rat* root = nullptr);

// "p" or "p/q" with arbitrary-precision parts; canonicalized (q > 0, reduced).
Rat parse_rat(const std::string& text);
std::string rat_to_string(const Rat& q);

}  // namespace arbor
