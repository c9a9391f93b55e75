#include <doctest.h>

#include "omegacore/morphisms.hpp"
#include "omegacore/structures.hpp"
#include "oracles.hpp"

using namespace omegacore;

namespace {

bool has_violation(const RawStructure& raw, const std::string& needle) {
  for (const auto& v : validate(raw))
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate reports broken invariants") {
  Signature sig({{"E", 2}});
  CHECK(validate(complete_graph(2).raw()).empty());

  RawStructure bad{sig, 2, {{"E", {{0, 5}}}}};
  CHECK(has_violation(bad, "tuple entry 5 out of domain"));

  RawStructure missing{sig, 3, {}};
  CHECK(has_violation(missing, "missing relation E"));

  RawStructure dup{sig, 2, {{"E", {{0, 1}, {0, 1}}}}};
  CHECK(has_violation(dup, "duplicate tuple"));

  RawStructure arity{sig, 2, {{"E", {{0}}}}};
  CHECK_FALSE(validate(arity).empty());
  CHECK_THROWS_AS(FinStructure::from(bad), Error);
}

TEST_CASE("signature rejects bad symbols") {
  CHECK_THROWS_AS(Signature({{"", 1}}), Error);
  CHECK_THROWS_AS(Signature({{"E", 0}}), Error);
  CHECK_THROWS_AS(Signature({{"E", 2}, {"E", 1}}), Error);
}

TEST_CASE("induced substructures") {
  CHECK(induced_substructure(complete_graph(3), std::vector<int>{0, 1}) == complete_graph(2));
  auto p3 = path_graph(3);
  CHECK(induced_substructure(p3, std::vector<int>{0, 1, 2}) == p3);
  auto ends = induced_substructure(p3, std::vector<int>{0, 2});
  CHECK(ends.size() == 2);
  CHECK(ends.relation("E").empty());
  CHECK_THROWS_AS(induced_substructure(p3, std::vector<int>{0, 3}), Error);
  CHECK_THROWS_AS(induced_substructure(p3, std::vector<int>{1, 1}), Error);
}

TEST_CASE("induced substructure composes") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = oracle::random_binary(rng, 6, {"E", "F"}, 0.4);
    std::vector<int> a = {5, 1, 3, 0, 4};
    std::vector<int> b = {4, 0, 2};
    std::vector<int> ab;
    for (int i : b) ab.push_back(a[i]);
    CHECK(induced_substructure(induced_substructure(s, a), b) == induced_substructure(s, ab));
  }
}

TEST_CASE("expand") {
  auto k2c = expand(complete_graph(2), "C", 1, {{0}});
  CHECK(k2c.signature().size() == 2);
  CHECK(k2c.relation("C").tuples() == std::vector<Tuple>{{0}});
  CHECK(k2c.relation("E") == complete_graph(2).relation("E"));

  auto empty = expand(complete_graph(2), "U", 1, {});
  CHECK(empty.relation("U").empty());

  auto diag = expand(complete_graph(3), "D", 2, {{0, 0}, {1, 1}, {2, 2}});
  CHECK(diag.relation("D").size() == 3);

  CHECK_THROWS_AS(expand(complete_graph(2), "E", 1, {}), Error);
  CHECK_THROWS_AS(expand(complete_graph(2), "C", 1, {{2}}), Error);
  CHECK_THROWS_AS(expand(complete_graph(2), "C", 1, {{0, 1}}), Error);
}

TEST_CASE("direct powers") {
  auto k2 = complete_graph(2);
  CHECK(direct_power(k2, 1) == k2);
  CHECK(direct_power(k2, 3).size() == 8);

  // coordinatewise check on all 16 pairs
  auto p = direct_power(k2, 2);
  REQUIRE(p.size() == 4);
  auto e = oracle::tuple_sets(k2)["E"];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          bool expected = e.count({a, c}) && e.count({b, d});
          std::vector<int> x = {a, b}, y = {c, d};
          Tuple t = {power_index(x, 2), power_index(y, 2)};
          CHECK(p.relation("E").contains(t) == expected);
        }
  // two disjoint edges: (0,0)-(1,1) and (0,1)-(1,0)
  CHECK(p.relation("E").size() == 4);
  CHECK(oracle::isomorphic(p, disjoint_union(k2, k2)));

  Caps tiny;
  tiny.power_domain = 7;
  CHECK_THROWS_AS(direct_power(k2, 3, tiny), CapacityError);
}

TEST_CASE("coordinate projections of a power are homomorphisms") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = oracle::random_binary(rng, 3, {"E"}, 0.5);
    auto p = direct_power(s, 3);
    for (int coord = 0; coord < 3; ++coord) {
      std::vector<int> proj(p.size());
      for (int i = 0; i < p.size(); ++i) {
        int rest = i;
        for (int c = 2; c > coord; --c) rest /= 3;
        proj[i] = rest % 3;
      }
      CHECK(oracle::is_hom(p, s, proj));
    }
  }
}

TEST_CASE("graph builders") {
  CHECK(complete_graph(3).relation("E").size() == 6);
  CHECK(cycle_graph(5).relation("E").size() == 10);
  CHECK(path_graph(3).relation("E").size() == 4);
  CHECK(disjoint_union(complete_graph(2), complete_graph(3)).size() == 5);
}
