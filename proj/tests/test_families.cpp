#include <random>
#include <stdexcept>

#include "arbor/errors.hpp"
#include "arbor/families.hpp"
#include "doctest.h"

using namespace arbor;

namespace {

WreathElement paper_element() {
  // (((12),(12),1);(12)) at d=3, n=2
  TreeShape sh(3, 2);
  WreathElement w(sh);
  w.set_vertex_perm(0, 0, Perm::from_cycles(3, {{1, 2}}));
  w.set_vertex_perm(1, 0, Perm::from_cycles(3, {{1, 2}}));
  w.set_vertex_perm(1, 1, Perm::from_cycles(3, {{1, 2}}));
  return w;
}

}  // namespace

TEST_CASE("closed-form orders") {
  CHECK(closed_form_order(TreeShape(3, 2), Family::full()) == 1296);
  CHECK(closed_form_order(TreeShape(3, 2), Family::E(2)) == 648);
  CHECK(closed_form_order(TreeShape(3, 2), Family::F(2, 1)) == 648);
  CHECK(closed_form_order(TreeShape(3, 3), Family::E(2)) == Int("816293376"));
  CHECK(closed_form_order(TreeShape(3, 3), Family::full()) == Int("13060694016"));
  CHECK(closed_form_order(TreeShape(3, 2), Family::E(3)) == 1296);  // n < m
  CHECK(closed_form_order(TreeShape(3, 2), Family::E(1)) == Int(81));  // [A_3]^4
}

TEST_CASE("harvested groups certify their closed-form orders") {
  auto full = harvest_group(TreeShape(3, 2), Family::full(), 1);
  CHECK(full.group.order() == 1296);

  auto e22 = harvest_group(TreeShape(3, 2), Family::E(2), 1);
  CHECK(e22.group.order() == 648);
  CHECK(e22.group.is_transitive());

  auto f221 = harvest_group(TreeShape(3, 2), Family::F(2, 1), 1);
  CHECK(f221.group.order() == 648);

  // the separating element lies in F_2^(2,1) but not in E_2^2
  Perm probe = paper_element().to_flat();
  CHECK(f221.group.contains(probe));
  CHECK(!e22.group.contains(probe));

  // every generator and random element passes the membership predicate
  std::mt19937_64 rng(9);
  for (const auto& w : e22.wreath_generators) CHECK(is_member(w, Family::E(2)));
  for (int t = 0; t < 25; ++t) {
    WreathElement w = random_member(TreeShape(3, 2), Family::E(2), rng);
    CHECK(is_member_E(w, 2));
    CHECK(e22.group.contains(w.to_flat()));
    WreathElement v = random_member(TreeShape(3, 2), Family::F(2, 1), rng);
    CHECK(is_member_F(v, 2, 1));
    CHECK(f221.group.contains(v.to_flat()));
  }
}

TEST_CASE("harvest at depth 3 and at even arity") {
  auto e32 = harvest_group(TreeShape(3, 3), Family::E(2), 1);
  CHECK(e32.group.order() == Int("816293376"));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t)
    CHECK(is_member_E(random_member(TreeShape(3, 3), Family::E(2), rng), 2));

  // F_3^(3,1) at d=2: one sign condition at the root, order 2^7 / 2
  auto f2 = harvest_group(TreeShape(2, 3), Family::F(3, 1), 1);
  CHECK(f2.group.order() == 64);
  for (int t = 0; t < 10; ++t)
    CHECK(is_member_F(random_member(TreeShape(2, 3), Family::F(3, 1), rng), 3, 1));
}

TEST_CASE("E acts transitively and pairs of indices can be swapped") {
  auto e22 = harvest_group(TreeShape(3, 2), Family::E(2), 1);
  CHECK(e22.group.orbit1(1).size() == 9);
  auto e21 = harvest_group(TreeShape(3, 2), Family::E(1), 1);
  CHECK(e21.group.is_transitive());
}

TEST_CASE("tower 1 < M_n < ker(res) < E_n^2") {
  NormalTower t2 = tower_E(TreeShape(3, 2), 1);
  REQUIRE(t2.subgroups.size() == 4);
  CHECK(t2.subgroups[0].order() == 1);
  CHECK(t2.subgroups[1].order() == 27);
  CHECK(t2.subgroups[2].order() == 108);
  CHECK(t2.subgroups[3].order() == 648);
  CHECK(t2.normality_verified);

  // M_2 equals the unique minimal normal subgroup of E_2^2
  auto mins = minimal_normal_subgroups(t2.subgroups[3], 10000);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].order() == 27);
  CHECK(is_subgroup_of(mins[0], t2.subgroups[1]));
  CHECK(is_subgroup_of(t2.subgroups[1], mins[0]));

  NormalTower t3 = tower_E(TreeShape(3, 3), 1);
  CHECK(t3.subgroups[1].order() == Int("19683"));       // 3^9
  CHECK(t3.subgroups[2].order() == Int("1259712"));     // 108^3
  CHECK(t3.subgroups[3].order() == Int("816293376"));
  CHECK(t3.normality_verified);

  CHECK_THROWS_AS(tower_E(TreeShape(2, 2), 1), std::invalid_argument);
  CHECK_THROWS_AS(tower_E(TreeShape(3, 1), 1), std::invalid_argument);
}

TEST_CASE("conjugating inverter: pinned cases and random property") {
  // d=3, n=1, sigma = (1 2 3): conjugation by tau gives (1 3 2)
  TreeShape sh1(3, 1);
  WreathElement s1(sh1);
  s1.set_vertex_perm(0, 0, Perm::from_cycles(3, {{1, 2, 3}}));
  WreathElement t1 = conjugating_inverter(s1);
  CHECK((t1 * s1 * t1.inverse()) == s1.inverse());

  WreathElement id(sh1);
  WreathElement tid = conjugating_inverter(id);
  CHECK((tid * id * tid.inverse()).is_identity());

  TreeShape sh(3, 3);
  std::mt19937_64 rng(77);
  for (int t = 0; t < 1000; ++t) {
    WreathElement s = WreathElement::random(sh, rng);
    WreathElement tau = conjugating_inverter(s);
    CHECK((tau * s * tau.inverse() * s).is_identity());
  }
}

TEST_CASE("commutator separation: ker(res_1) witnesses every nontrivial element") {
  // For each nontrivial sigma in E_2^2 there is c in ker(res_1) with [sigma,c] != 1.
  NormalTower t2 = tower_E(TreeShape(3, 2), 1);
  const PermGroup& e22 = t2.subgroups[3];
  const PermGroup& ker = t2.subgroups[2];
  auto kernel_elems = ker.elements(1000);
  std::size_t checked = 0;
  e22.for_each_element(
      [&](const Perm& sigma) {
        if (sigma.is_identity()) return;
        ++checked;
        for (const Perm& c : kernel_elems) {
          if (!(sigma * c == c * sigma)) return;
        }
        FAIL("element commutes with all of ker(res_1): " << sigma.cycle_string());
      },
      10000);
  CHECK(checked == 647);
}

TEST_CASE("parity tuple reduction: pinned examples") {
  ReduceTrace t0 = reduce_parity_tuple(ParityTuple({-1, -1, 1}));
  CHECK(t0.steps.empty());
  CHECK(t0.final_tuple() == ParityTuple({-1, -1, 1}));

  ReduceTrace t1 = reduce_parity_tuple(ParityTuple({1, -1, -1}));
  CHECK(t1.final_tuple() == ParityTuple({-1, -1, 1}));
  CHECK(validate_reduce_trace(t1));

  CHECK_THROWS_AS(reduce_parity_tuple(ParityTuple({1, 1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(reduce_parity_tuple(ParityTuple({1, -1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(reduce_parity_tuple(ParityTuple({1, 1, 1, 1})), std::invalid_argument);
}

TEST_CASE("parity tuple reduction: exhaustive termination for d in {3,5,7}") {
  for (int d : {3, 5, 7}) {
    int seen = 0;
    for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
      // even tuples: the last entry is forced by the parity of the mask
      std::vector<int> e(d, 1);
      int minus = 0;
      for (int i = 0; i + 1 < d; ++i)
        if (mask & (1u << i)) {
          e[i] = -1;
          ++minus;
        }
      if (minus % 2 == 1) {
        e[d - 1] = -1;
        ++minus;
      }
      if (minus == 0) continue;
      ++seen;
      ReduceTrace tr = reduce_parity_tuple(ParityTuple(e));
      std::vector<int> target(d, 1);
      target[0] = target[1] = -1;
      CHECK(tr.final_tuple() == ParityTuple(target));
      CHECK(validate_reduce_trace(tr));
    }
    CHECK(seen == (1 << (d - 1)) - 1);
  }
}

TEST_CASE("literal Algorithm 1 diverges on (1,-1,-1)") {
  CHECK_THROWS_AS(literal_algorithm1(ParityTuple({1, -1, -1}), 1000), NonTerminationError);
  // but the corrected procedure reduces the same input fine
  CHECK(reduce_parity_tuple(ParityTuple({1, -1, -1})).final_tuple() ==
        ParityTuple({-1, -1, 1}));
  // on an input that is already in block form the literal version also works
  CHECK(literal_algorithm1(ParityTuple({-1, -1, 1}), 1000).final_tuple() ==
        ParityTuple({-1, -1, 1}));
}

TEST_CASE("derived subgroup of the full (3,2) wreath group has order 324") {
  auto full = harvest_group(TreeShape(3, 2), Family::full(), 1);
  PermGroup der = derived_subgroup(full.group);
  CHECK(der.order() == 324);
  CHECK(abelianization_invariants(full.group) == std::vector<Int>{2, 2});
}

TEST_CASE("chief factors of E_2^2 are elementary abelian") {
  auto e22 = harvest_group(TreeShape(3, 2), Family::E(2), 1);
  auto series = chief_series(e22.group, 100000);
  REQUIRE(series.size() == 1);
  const ChiefSeries& s = series[0];
  std::vector<unsigned long> primes{3, 2, 3, 2};  // factors 27, 4, 3, 2
  for (std::size_t i = 0; i + 1 < s.subgroups.size(); ++i) {
    const PermGroup& lower = s.subgroups[i];
    const PermGroup& upper = s.subgroups[i + 1];
    unsigned long p = primes[i];
    upper.for_each_element(
        [&](const Perm& x) {
          Perm xp = Perm::identity(x.degree());
          for (unsigned long t = 0; t < p; ++t) xp = xp * x;
          CHECK(lower.contains(xp));
        },
        100000);
  }
}

TEST_CASE("harvest at larger levels and even arity") {
  // one condition vertex only: |E_3^3(3)| = 6^13 / 2
  auto e33 = harvest_group(TreeShape(3, 3), Family::E(3), 1);
  CHECK(e33.group.order() == Int("6530347008"));
  // even arity: |E_3^2(2)| = 2^7 / 2^3
  auto e2 = harvest_group(TreeShape(2, 3), Family::E(2), 1);
  CHECK(e2.group.order() == 16);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t)
    CHECK(is_member_E(random_member(TreeShape(2, 3), Family::E(2), rng), 2));
}
