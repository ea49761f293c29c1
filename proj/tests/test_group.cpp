#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "arbor/errors.hpp"
#include "arbor/group.hpp"
#include "doctest.h"

using namespace arbor;

namespace {

// Exhaustive closure oracle for small generated groups.
std::set<Perm> closure_oracle(std::size_t degree, const std::vector<Perm>& gens) {
  std::set<Perm> elems{Perm::identity(degree)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> snapshot(elems.begin(), elems.end());
    for (const Perm& a : snapshot)
      for (const Perm& g : gens)
        if (elems.insert(a * g).second) grew = true;
  }
  return elems;
}

PermGroup symmetric(std::size_t n) {
  std::vector<std::uint32_t> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<std::uint32_t>(i + 1);
  return PermGroup(n, {Perm::from_cycles(n, {{1, 2}}), Perm::from_cycles(n, {cyc})});
}

}  // namespace

TEST_CASE("certified order matches exhaustive closure on random small groups") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t degree = 5 + (rng() % 4);
    std::vector<Perm> gens;
    int ngens = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < ngens; ++i) {
      std::vector<std::uint32_t> img(degree);
      for (std::size_t j = 0; j < degree; ++j) img[j] = static_cast<std::uint32_t>(j + 1);
      for (std::size_t j = degree - 1; j > 0; --j)
        std::swap(img[j], img[rng() % (j + 1)]);
      gens.push_back(Perm::from_images1(img));
    }
    auto oracle = closure_oracle(degree, gens);
    PermGroup g(degree, gens);
    CHECK(g.order() == Int(static_cast<unsigned long>(oracle.size())));
    // membership agrees with the oracle on random perms
    for (int t = 0; t < 20; ++t) {
      std::vector<std::uint32_t> img(degree);
      for (std::size_t j = 0; j < degree; ++j) img[j] = static_cast<std::uint32_t>(j + 1);
      for (std::size_t j = degree - 1; j > 0; --j)
        std::swap(img[j], img[rng() % (j + 1)]);
      Perm p = Perm::from_images1(img);
      CHECK(g.contains(p) == (oracle.count(p) > 0));
    }
    // enumeration yields exactly the closure
    auto elems = g.elements(100000);
    CHECK(elems.size() == oracle.size());
    for (const auto& e : elems) CHECK(oracle.count(e) == 1);
  }
}

TEST_CASE("S_3 basics") {
  PermGroup s3 = symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(s3.is_transitive());
  CHECK(s3.contains(Perm::from_cycles(3, {{1, 3}})));
}

TEST_CASE("orbits") {
  PermGroup c3(4, {Perm::from_cycles(4, {{1, 2, 3}})});
  CHECK(c3.orbit1(4) == std::vector<std::uint32_t>{4});
  CHECK(c3.orbit1(1) == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(!c3.is_transitive());
  PermGroup trivial(5);
  CHECK(trivial.orbit1(1) == std::vector<std::uint32_t>{1});
  CHECK_THROWS_AS(trivial.orbit1(6), std::invalid_argument);
}

TEST_CASE("random elements are members and deterministic under seed") {
  PermGroup s5 = symmetric(5);
  std::mt19937_64 a(7), b(7);
  for (int t = 0; t < 50; ++t) {
    Perm x = s5.random_element(a);
    CHECK(s5.contains(x));
    CHECK(x == s5.random_element(b));
  }
}

TEST_CASE("normal closure and derived subgroup") {
  PermGroup s3 = symmetric(3);
  PermGroup a3 = normal_closure(s3, {Perm::from_cycles(3, {{1, 2, 3}})});
  CHECK(a3.order() == 3);
  CHECK(is_normal_in(a3, s3));
  CHECK(derived_subgroup(s3).order() == 3);

  PermGroup c2xc2(4, {Perm::from_cycles(4, {{1, 2}}), Perm::from_cycles(4, {{3, 4}})});
  CHECK(derived_subgroup(c2xc2).order() == 1);
  CHECK_THROWS_AS(normal_closure(a3, {Perm::from_cycles(3, {{1, 2}})}), std::invalid_argument);
}

TEST_CASE("abelianization invariants") {
  CHECK(abelianization_invariants(symmetric(3)) == std::vector<Int>{2});
  CHECK(abelianization_invariants(symmetric(4)) == std::vector<Int>{2});
  PermGroup c2xc2(4, {Perm::from_cycles(4, {{1, 2}}), Perm::from_cycles(4, {{3, 4}})});
  CHECK(abelianization_invariants(c2xc2) == std::vector<Int>{2, 2});
  PermGroup c6(6, {Perm::from_cycles(6, {{1, 2, 3, 4, 5, 6}})});
  CHECK(abelianization_invariants(c6) == std::vector<Int>{2, 3});
  PermGroup c4(4, {Perm::from_cycles(4, {{1, 2, 3, 4}})});
  CHECK(abelianization_invariants(c4) == std::vector<Int>{4});
}

TEST_CASE("minimal normal subgroups") {
  auto mins_s3 = minimal_normal_subgroups(symmetric(3), 10000);
  REQUIRE(mins_s3.size() == 1);
  CHECK(mins_s3[0].order() == 3);

  PermGroup c2xc2(4, {Perm::from_cycles(4, {{1, 2}}), Perm::from_cycles(4, {{3, 4}})});
  auto mins_v4 = minimal_normal_subgroups(c2xc2, 10000);
  CHECK(mins_v4.size() == 3);
  for (const auto& m : mins_v4) CHECK(m.order() == 2);

  CHECK_THROWS_AS(minimal_normal_subgroups(symmetric(3), 2), ResourceLimitError);
}

TEST_CASE("chief series") {
  auto series_s3 = chief_series(symmetric(3), 10000);
  REQUIRE(series_s3.size() == 1);
  CHECK(series_s3[0].factor_orders == std::vector<Int>{3, 2});
  CHECK(is_unique_chief_series(symmetric(3), 10000));

  PermGroup c2xc2(4, {Perm::from_cycles(4, {{1, 2}}), Perm::from_cycles(4, {{3, 4}})});
  CHECK(chief_series(c2xc2, 10000).size() == 3);
  CHECK(!is_unique_chief_series(c2xc2, 10000));

  auto series_s4 = chief_series(symmetric(4), 10000);
  REQUIRE(series_s4.size() == 1);  // 1 < V4 < A4 < S4
  CHECK(series_s4[0].factor_orders == std::vector<Int>{4, 3, 2});
}

TEST_CASE("rank-2 witnesses") {
  auto w = rank2_witness(symmetric(3), 1000, 1);
  REQUIRE(w.has_value());
  PermGroup h(3, {w->first, w->second});
  CHECK(h.order() == 6);
  CHECK_THROWS_AS(rank2_witness(PermGroup(4), 10, 1), std::invalid_argument);
}

TEST_CASE("chief factors are characteristically simple (elementary abelian at this scale)") {
  // every factor M/N of a chief series has prime-power order p^k with x^p in N
  auto check_series = [](const PermGroup& g) {
    for (const ChiefSeries& s : chief_series(g, 10000)) {
      for (std::size_t i = 0; i + 1 < s.subgroups.size(); ++i) {
        const PermGroup& lower = s.subgroups[i];
        const PermGroup& upper = s.subgroups[i + 1];
        Int factor = upper.order() / lower.order();
        // extract the prime
        unsigned long p = 2;
        while (factor % p != 0) ++p;
        Int pp(p);
        Int rest = factor;
        while (rest % pp == 0) rest /= pp;
        CHECK(rest == 1);  // prime power
        upper.for_each_element(
            [&](const Perm& x) {
              Perm xp = Perm::identity(x.degree());
              for (unsigned long t = 0; t < p; ++t) xp = xp * x;
              CHECK(lower.contains(xp));
            },
            10000);
      }
    }
  };
  check_series(symmetric(3));
  check_series(symmetric(4));
}
