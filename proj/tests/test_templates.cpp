#include <doctest.h>

#include <numeric>

#include "omegacore/templates.hpp"
#include "oracles.hpp"

using namespace omegacore;

namespace {

std::vector<std::string> letters(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

FinStructure digraph(int n, const std::vector<std::pair<int, int>>& arcs) {
  return graph(n, arcs, false);
}

}  // namespace

TEST_CASE("triangle-freeness") {
  auto k3 = solve_triangle_free(complete_graph(3));
  CHECK_FALSE(k3.satisfiable);
  CHECK(k3.witness == std::vector<int>{0, 1, 2});
  CHECK(solve_triangle_free(cycle_graph(5)).satisfiable);
  auto loop = solve_triangle_free(graph(1, {{0, 0}}));
  CHECK_FALSE(loop.satisfiable);
  CHECK(loop.witness == std::vector<int>{0});

  oracle::Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = oracle::random_graph(rng, oracle::uniform(rng, 0, 7), oracle::uniform01(rng) * 0.6);
    auto r = solve_triangle_free(g);
    CHECK(r.satisfiable == exhaustive::triangle_free(g));
    CHECK(r.satisfiable == !oracle::has_triangle(oracle::adjacency(g)));
    if (!r.satisfiable) {
      auto adj = oracle::adjacency(g);
      REQUIRE(r.witness.size() == 3);
      CHECK(adj[r.witness[0]][r.witness[1]]);
      CHECK(adj[r.witness[1]][r.witness[2]]);
      CHECK(adj[r.witness[0]][r.witness[2]]);
    }
  }
}

TEST_CASE("triangle-free graphs embed into a triangle-free supergraph") {
  // g maps into T = g plus an isolated C5; T stays triangle-free exactly
  // when g is, and the homomorphism exists trivially in that case.
  oracle::Rng rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = oracle::random_graph(rng, oracle::uniform(rng, 1, 6), 0.4);
    auto t = disjoint_union(g, cycle_graph(5));
    bool tf = solve_triangle_free(g).satisfiable;
    CHECK(solve_triangle_free(t).satisfiable == tf);
    if (tf) CHECK(oracle::hom_exists(g, t));
  }
}

TEST_CASE("no monochromatic triangle") {
  auto k4 = solve_no_mono_tri(complete_graph(4));
  CHECK(k4.satisfiable);
  CHECK(verify_no_mono_tri(complete_graph(4), k4.part));
  CHECK(std::accumulate(k4.part.begin(), k4.part.end(), 0) == 2);
  CHECK_FALSE(solve_no_mono_tri(complete_graph(5)).satisfiable);
  auto tf = solve_no_mono_tri(cycle_graph(7));
  CHECK(tf.satisfiable);
  CHECK(tf.part == std::vector<int>(7, 0));
  auto loop = solve_no_mono_tri(graph(2, {{0, 1}, {1, 1}}));
  CHECK_FALSE(loop.satisfiable);
  CHECK(loop.loop == 1);

  oracle::Rng rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    auto g = oracle::random_graph(rng, oracle::uniform(rng, 0, 8), 0.4 + oracle::uniform01(rng) * 0.6);
    auto r = solve_no_mono_tri(g);
    CHECK(r.satisfiable == exhaustive::no_mono_tri(g));
    if (r.satisfiable) CHECK(verify_no_mono_tri(g, r.part));
  }
}

TEST_CASE("betweenness") {
  BetweennessInstance one{{"1", "2", "3"}, {{0, 1, 2}}};
  auto r = solve_betweenness(one);
  REQUIRE(r);
  CHECK(verify_betweenness(one, *r));
  CHECK_FALSE(solve_betweenness({{"1", "2", "3"}, {{0, 1, 2}, {1, 0, 2}}}));
  CHECK(solve_betweenness({{"1", "2", "3"}, {{0, 1, 2}, {2, 1, 0}}}));
  CHECK_THROWS_AS(solve_betweenness({{"1", "2"}, {{0, 1, 0}}}), Error);

  oracle::Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    int n = oracle::uniform(rng, 3, 7);
    BetweennessInstance inst{letters(n), {}};
    int m = oracle::uniform(rng, 0, 2 * n);
    for (int i = 0; i < m; ++i) {
      std::array<int, 3> t{};
      do {
        t = {oracle::uniform(rng, 0, n - 1), oracle::uniform(rng, 0, n - 1), oracle::uniform(rng, 0, n - 1)};
      } while (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]);
      inst.triples.push_back(t);
    }
    auto got = solve_betweenness(inst);
    CHECK(got.has_value() == exhaustive::betweenness(inst));
    if (got) CHECK(verify_betweenness(inst, *got));
  }
}

TEST_CASE("switching acyclicity") {
  CHECK(solve_switching_acyclic(digraph(2, {{0, 1}})).satisfiable);
  CHECK_FALSE(solve_switching_acyclic(digraph(2, {{0, 1}, {1, 0}})).satisfiable);
  auto tri = solve_switching_acyclic(digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  REQUIRE(tri.satisfiable);
  CHECK(tri.part == std::vector<int>{1, 0, 0});
  CHECK(verify_switching(digraph(3, {{0, 1}, {1, 2}, {2, 0}}), tri.part));
  auto loop = solve_switching_acyclic(digraph(2, {{0, 0}}));
  CHECK_FALSE(loop.satisfiable);
  CHECK(loop.loop == 0);

  oracle::Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    auto d = oracle::random_binary(rng, oracle::uniform(rng, 0, 7), {"E"}, oracle::uniform01(rng) * 0.5, false);
    auto r = solve_switching_acyclic(d);
    auto s = solve_switching_acyclic_serial(d);
    CHECK(r.satisfiable == exhaustive::switching_acyclic(d));
    CHECK(r.part == s.part);
    CHECK(r.satisfiable == s.satisfiable);
    if (r.satisfiable) CHECK(verify_switching(d, r.part));
  }
}

TEST_CASE("rooted triples") {
  TripleSet one{letters(3), {{2, 0, 1}}};
  auto t = solve_rooted_triples(one);
  REQUIRE(t);
  CHECK(to_newick(*t, one.leaves) == "((a,b),c)");
  CHECK(verify_rooted_triples(one, *t));

  CHECK_FALSE(solve_rooted_triples({letters(3), {{0, 1, 2}, {1, 0, 2}}}));

  TripleSet two{letters(4), {{3, 0, 1}, {0, 2, 3}}};
  auto t2 = solve_rooted_triples(two);
  REQUIRE(t2);
  CHECK(to_newick(*t2, two.leaves) == "((a,b),(c,d))");

  auto star = solve_rooted_triples({letters(3), {}});
  REQUIRE(star);
  CHECK(to_newick(*star, letters(3)) == "(a,b,c)");
  CHECK_THROWS_AS(solve_rooted_triples({letters(3), {{0, 0, 1}}}), Error);
}

TEST_CASE("BUILD agrees with exhaustive search") {
  for (int n = 3; n <= 4; ++n) {
    // every triple set over n leaves
    std::vector<std::array<int, 3>> all;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = y + 1; z < n; ++z)
          if (x != y && x != z) all.push_back({x, y, z});
    const std::size_t m = all.size();
    std::function<void(std::size_t, std::vector<std::array<int, 3>>&)> rec =
        [&](std::size_t from, std::vector<std::array<int, 3>>& cur) {
          TripleSet ts{letters(n), cur};
          auto tree = solve_rooted_triples(ts);
          CHECK(tree.has_value() == exhaustive::rooted_triples(ts));
          if (tree) CHECK(verify_rooted_triples(ts, *tree));
          for (std::size_t i = from; i < m; ++i) {
            cur.push_back(all[i]);
            rec(i + 1, cur);
            cur.pop_back();
          }
        };
    std::vector<std::array<int, 3>> cur;
    rec(0, cur);
  }
}

TEST_CASE("quartets") {
  auto abcd = letters(4);
  auto t = solve_quartets({abcd, {{0, 1, 2, 3}}});
  REQUIRE(t);
  CHECK(verify_quartets({abcd, {{0, 1, 2, 3}}}, *t));
  CHECK_FALSE(solve_quartets({abcd, {{0, 1, 2, 3}, {0, 2, 1, 3}}}));
  auto five = solve_quartets({letters(5), {{0, 1, 2, 3}, {0, 1, 2, 4}}});
  REQUIRE(five);
  CHECK(verify_quartets({letters(5), {{0, 1, 2, 3}, {0, 1, 2, 4}}}, *five));
  CHECK_THROWS_AS(solve_quartets({letters(9), {}}), CapacityError);

  oracle::Rng rng(6);
  for (int trial = 0; trial < 120; ++trial) {
    int n = oracle::uniform(rng, 4, 6);
    QuartetSet qs{letters(n), {}};
    int m = oracle::uniform(rng, 1, 6);
    for (int i = 0; i < m; ++i) {
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      qs.quartets.push_back({p[0], p[1], p[2], p[3]});
    }
    auto got = solve_quartets(qs);
    CHECK(got.has_value() == exhaustive::quartets(qs));
    if (got) CHECK(verify_quartets(qs, *got));
  }
}

TEST_CASE("partial tree descriptions") {
  TreeDescription ab{{"a", "b"}, {{0, 1}}, {}};
  auto f = solve_tree_description(ab);
  REQUIRE(f);
  CHECK(*f == std::vector<int>{-1, 0});
  CHECK_FALSE(solve_tree_description({{"a", "b"}, {{0, 1}, {1, 0}}, {}}));
  CHECK_FALSE(solve_tree_description({{"a", "b"}, {{0, 1}}, {{0, 1}}}));
  CHECK_THROWS_AS(solve_tree_description({letters(8), {}, {}}), CapacityError);

  oracle::Rng rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    int n = oracle::uniform(rng, 2, 5);
    TreeDescription td{letters(n), {}, {}};
    for (int i = oracle::uniform(rng, 0, 4); i > 0; --i)
      td.anc.emplace_back(oracle::uniform(rng, 0, n - 1), oracle::uniform(rng, 0, n - 1));
    for (int i = oracle::uniform(rng, 0, 4); i > 0; --i)
      td.nonanc.emplace_back(oracle::uniform(rng, 0, n - 1), oracle::uniform(rng, 0, n - 1));
    auto got = solve_tree_description(td);
    CHECK(got.has_value() == exhaustive::tree_description(td));
    if (got) CHECK(verify_tree_description(td, *got));
  }
}

TEST_CASE("adding constraints never restores satisfiability") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 5;
    TripleSet ts{letters(n), {}};
    QuartetSet qs{letters(n), {}};
    BetweennessInstance bi{letters(n), {}};
    bool t_sat = true, q_sat = true, b_sat = true;
    for (int step = 0; step < 8; ++step) {
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      ts.triples.push_back({p[0], std::min(p[1], p[2]), std::max(p[1], p[2])});
      qs.quartets.push_back({p[0], p[1], p[2], p[3]});
      bi.triples.push_back({p[0], p[1], p[2]});
      bool t = solve_rooted_triples(ts).has_value();
      bool q = solve_quartets(qs).has_value();
      bool b = solve_betweenness(bi).has_value();
      CHECK((t_sat || !t));
      CHECK((q_sat || !q));
      CHECK((b_sat || !b));
      t_sat = t;
      q_sat = q;
      b_sat = b;
    }
  }
}

TEST_CASE("random triple sets over five leaves") {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    TripleSet ts{letters(5), {}};
    for (int i = oracle::uniform(rng, 1, 6); i > 0; --i) {
      std::vector<int> p = {0, 1, 2, 3, 4};
      std::shuffle(p.begin(), p.end(), rng);
      ts.triples.push_back({p[0], p[1], p[2]});
    }
    auto tree = solve_rooted_triples(ts);
    CHECK(tree.has_value() == exhaustive::rooted_triples(ts));
    if (tree) CHECK(verify_rooted_triples(ts, *tree));
  }
}
