#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "homcount/group.hpp"
#include "homcount/subgroup.hpp"
#include "test_util.hpp"

using namespace homcount;
using homcount::testing::shared_catalog;

TEST_CASE("subgroup counts for small groups") {
  REQUIRE(all_subgroups(cyclic_group(5)).size() == 2);
  REQUIRE(all_subgroups(cyclic_group(7)).size() == 2);

  auto s3_subs = all_subgroups(symmetric_group(3));
  REQUIRE(s3_subs.size() == 6);
  std::multiset<int> orders;
  for (const auto& s : s3_subs) orders.insert(s.size());
  REQUIRE(orders == std::multiset<int>{1, 2, 2, 2, 3, 6});

  REQUIRE(all_subgroups(abelian_group(AbelianFactors{{2, 2}})).size() == 5);
}

TEST_CASE("every enumerated subgroup passes the axioms") {
  for (const FiniteGroup* g : shared_catalog().groups()) {
    if (g->order > 16) continue;
    auto subs = all_subgroups(*g);
    REQUIRE(subs.front().size() == 1);
    REQUIRE(subs.back().size() == g->order);
    for (const auto& s : subs) validate_subgroup(s);
  }
}

TEST_CASE("subgroup list is closed under conjugation") {
  for (const FiniteGroup* g : shared_catalog().groups()) {
    if (g->order > 16) continue;
    auto subs = all_subgroups(*g);
    std::unordered_set<Bitset, BitsetHash> set;
    for (const auto& s : subs) set.insert(s.members);
    for (const auto& s : subs)
      for (int x = 0; x < g->order; ++x) {
        Bitset conj(g->order);
        for (int m : s.elements()) conj.set(g->conj(m, x));
        REQUIRE(set.count(conj) == 1);
      }
  }
}

TEST_CASE("sylow subgroups") {
  REQUIRE(sylow_subgroup(cyclic_group(12), 2).size() == 4);
  REQUIRE(sylow_subgroup(symmetric_group(3), 2).size() == 2);
  REQUIRE(sylow_subgroup(symmetric_group(3), 5).size() == 1);
  REQUIRE(sylow_subgroup(symmetric_group(4), 2).size() == 8);
  REQUIRE(sylow_subgroup(alternating_group(4), 2).size() == 4);
  REQUIRE_THROWS_AS(sylow_subgroup(symmetric_group(3), 4), spec_error);
}

TEST_CASE("gcd_group examples") {
  auto s3 = symmetric_group(3);
  REQUIRE(gcd_group(s3, 1) == 1);
  REQUIRE(gcd_group(s3, 4) == 2);
  REQUIRE(gcd_group(s3, 0) == 6);
  REQUIRE(gcd_group(cyclic_group(12), 8) == 4);
}

TEST_CASE("gcd_group coincides with gcd of orders") {
  for (const FiniteGroup* g : shared_catalog().groups()) {
    if (g->order > 16) continue;
    SubgroupOrderCache cache;
    for (long long n = 1; n <= 24; ++n)
      REQUIRE(gcd_group(*g, n, &cache.get(*g)) == gcd_ll(g->order, n));
  }
}

TEST_CASE("centralizers") {
  auto s3 = symmetric_group(3);
  REQUIRE(centralizer(s3, {}).size() == 6);
  int transposition = -1;
  for (int x = 0; x < 6; ++x)
    if (s3.element_orders[x] == 2) transposition = x;
  REQUIRE(centralizer(s3, {transposition}).size() == 2);

  std::vector<int> all(s3.order);
  for (int i = 0; i < s3.order; ++i) all[i] = i;
  REQUIRE(centralizer(s3, all).members == center(s3).members);
}

TEST_CASE("subgroup_as_group round trip") {
  auto d8 = dihedral_group(8);
  for (const auto& s : all_subgroups(d8)) {
    auto sg = subgroup_as_group(s);
    REQUIRE(sg.group.order == s.size());
    for (int i = 0; i < sg.group.order; ++i) {
      REQUIRE(sg.from_parent[sg.to_parent[i]] == i);
      REQUIRE(sg.group.element_orders[i] == d8.element_orders[sg.to_parent[i]]);
    }
  }
}

TEST_CASE("subgroup enumeration bound") {
  Catalog big(128);
  REQUIRE_THROWS_AS(all_subgroups(big.get("abelian:2,2,2,2,2,2,2")), bound_error);
}
