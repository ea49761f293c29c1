#include <stdexcept>

#include "arbor/localfields.hpp"
#include "doctest.h"

using namespace arbor;

TEST_CASE("primality for word-size integers") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(104729));
  CHECK(!is_prime_u64(1));
  CHECK(!is_prime_u64(104729ull * 104729ull));
  CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
}

TEST_CASE("p-adic valuations") {
  CHECK(valuation(Rat(3), 3) == PadicVal{false, 1});
  CHECK(valuation(Rat(1) - Rat(3), 2) == PadicVal{false, 1});  // v_2(-2)
  CHECK(valuation(Rat(12, 5), 2) == PadicVal{false, 2});
  CHECK(valuation(Rat(5, 12), 2) == PadicVal{false, -2});
  CHECK(valuation(Rat(0), 7).infinite);
  CHECK_THROWS_AS(valuation(Int(10), 6), std::invalid_argument);
  // multiplicativity on samples
  for (long a : {3L, 9L, 14L})
    for (long b : {6L, 25L, 27L})
      CHECK(valuation(Rat(a * b), 3).v == valuation(Rat(a), 3).v + valuation(Rat(b), 3).v);
}

TEST_CASE("base-point condition") {
  CHECK(condition_check(Rat(3)).ok);
  CHECK(condition_check(Rat(-2)).ok);
  CHECK(!condition_check(Rat(5)).ok);
  CHECK_THROWS_AS(condition_check(Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(condition_check(Rat(1)), std::invalid_argument);
  ConditionReport r = condition_check(Rat(3));
  CHECK(r.v3_alpha == PadicVal{false, 1});
  CHECK(r.v2_one_minus == PadicVal{false, 1});
}

TEST_CASE("newton polygons") {
  const Poly f = belyi_like_cubic();
  NewtonPolygon np = newton_polygon(f - Poly::constant(Rat(3)), 2);
  REQUIRE(np.segments.size() == 2);
  CHECK(np.segments[0].slope == Rat(-1, 2));
  CHECK(np.segments[0].length == 2);
  CHECK(np.segments[1].slope == Rat(1));
  CHECK(np.segments[1].length == 1);

  // Eisenstein polynomial: one segment of slope -1/deg
  NewtonPolygon ei = newton_polygon(Poly::parse("3,3,9,1"), 3);
  REQUIRE(ei.segments.size() == 1);
  CHECK(ei.segments[0].slope == Rat(-1, 3));
  CHECK(ei.segments[0].length == 3);

  // constant-valuation coefficients: single slope-0 segment
  NewtonPolygon flat = newton_polygon(Poly::parse("1,1,1,1"), 5);
  REQUIRE(flat.segments.size() == 1);
  CHECK(flat.segments[0].slope == Rat(0));
  CHECK(flat.segments[0].length == 3);

  // slopes strictly increase and lengths sum to deg minus the zero prefix
  NewtonPolygon mix = newton_polygon(Poly::parse("0,4,2,0,1"), 2);
  int total = 0;
  for (std::size_t i = 0; i < mix.segments.size(); ++i) {
    total += mix.segments[i].length;
    if (i) CHECK(mix.segments[i - 1].slope < mix.segments[i].slope);
  }
  CHECK(total == 3);  // degree 4, first nonzero coefficient at index 1
}

TEST_CASE("Eisenstein shifts for the paper's cubic") {
  const Poly f = belyi_like_cubic();
  // v_3(alpha) = 1: shift 1 at n = 1 (and not shift 0)
  auto s1 = eisenstein_shifted(f, Rat(3), 1, 3);
  REQUIRE(s1.has_value());
  CHECK(*s1 == 1);
  // n = 2: f^2 = z^9 mod 3, shift 0
  auto s2 = eisenstein_shifted(f, Rat(3), 2, 3);
  REQUIRE(s2.has_value());
  CHECK(*s2 == 0);
  // v_3(1 - alpha) = 1: shift 0 at n = 1
  auto t1 = eisenstein_shifted(f, Rat(-2), 1, 3);
  REQUIRE(t1.has_value());
  CHECK(*t1 == 0);
  // alpha failing the condition: no shift works at p = 3
  CHECK(!eisenstein_shifted(f, Rat(5), 1, 3).has_value());

  // Eisenstein implies a single Newton segment of slope -1/deg
  for (const Rat alpha : {Rat(3), Rat(-2)}) {
    for (int n = 1; n <= 3; ++n) {
      auto s = eisenstein_shifted(f, alpha, n, 3);
      REQUIRE(s.has_value());
      Poly shifted =
          Poly::iterate(f, n).compose(Poly({Rat(*s), Rat(1)})) - Poly::constant(alpha);
      NewtonPolygon np = newton_polygon(shifted, 3);
      REQUIRE(np.segments.size() == 1);
      CHECK(np.segments[0].slope == Rat(-1, shifted.degree()));
      CHECK(np.segments[0].length == shifted.degree());
    }
  }
}

TEST_CASE("ramification report") {
  RamificationReport r1 = ramification_report(Rat(3), 1);
  CHECK(r1.condition.ok);
  CHECK(r1.eisenstein_shift3.has_value());
  CHECK(r1.has_len2_height1_segment);
  CHECK(r1.e2 == 2);
  CHECK(r1.e3 == 3);
  CHECK(r1.degree_divisor == 6);

  RamificationReport r2 = ramification_report(Rat(3), 2);
  CHECK(r2.e2 == 4);
  CHECK(r2.e3 == 9);
  CHECK(r2.eisenstein_shift3.has_value());

  CHECK_THROWS_AS(ramification_report(Rat(5), 1), std::invalid_argument);
}

TEST_CASE("Eisenstein shifts exist for a fuzz corpus of condition-passing base points") {
  const Poly f = belyi_like_cubic();
  int tested = 0;
  for (long num = -40; num <= 40; ++num) {
    for (long den : {1L, 2L, 5L}) {
      if (num == 0 || num == den) continue;
      Rat alpha(num, den);
      alpha.canonicalize();
      if (!condition_check(alpha).ok) continue;
      ++tested;
      for (int n = 1; n <= 3; ++n) {
        auto s = eisenstein_shifted(f, alpha, n, 3);
        CAPTURE(rat_to_string(alpha));
        CAPTURE(n);
        CHECK(s.has_value());
      }
    }
  }
  CHECK(tested >= 8);
}

TEST_CASE("newton polygon is invariant under multiplying by a p-unit") {
  const Poly f = Poly::parse("6,4,0,2,1");
  for (std::uint64_t p : {2ull, 3ull}) {
    NewtonPolygon base = newton_polygon(f, p);
    NewtonPolygon scaled = newton_polygon(f * Rat(p == 2 ? 5 : 7), p);
    REQUIRE(base.segments.size() == scaled.segments.size());
    for (std::size_t i = 0; i < base.segments.size(); ++i)
      CHECK(base.segments[i] == scaled.segments[i]);
  }
}
