// Brute-force reference implementations and random generators for tests.
// Nothing here calls into the search kernels.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "omegacore/structures.hpp"

namespace oracle {

using omegacore::FinStructure;
using omegacore::Tuple;

using TupleSets = std::map<std::string, std::set<Tuple>>;

inline TupleSets tuple_sets(const FinStructure& s) {
  TupleSets out;
  for (std::size_t i = 0; i < s.signature().size(); ++i)
    for (const auto& t : s.relation(i)) out[s.signature()[i].name].insert(t);
  for (const auto& sym : s.signature()) out[sym.name];
  return out;
}

inline bool is_hom(const FinStructure& a, const FinStructure& b, const std::vector<int>& f) {
  auto target = tuple_sets(b);
  for (std::size_t i = 0; i < a.signature().size(); ++i) {
    const auto& rel = target[a.signature()[i].name];
    for (const auto& t : a.relation(i)) {
      Tuple image;
      for (int x : t) image.push_back(f[x]);
      if (!rel.count(image)) return false;
    }
  }
  return true;
}

/// Visits every map n_a -> n_b in lexicographic order.
inline void for_each_map(int na, int nb, const std::function<bool(const std::vector<int>&)>& visit) {
  if (na > 0 && nb == 0) return;
  std::vector<int> f(na, 0);
  while (true) {
    if (!visit(f)) return;
    int p = na - 1;
    while (p >= 0 && f[p] == nb - 1) f[p--] = 0;
    if (p < 0) return;
    ++f[p];
  }
}

inline std::vector<std::vector<int>> all_homs(const FinStructure& a, const FinStructure& b) {
  std::vector<std::vector<int>> out;
  for_each_map(a.size(), b.size(), [&](const std::vector<int>& f) {
    if (is_hom(a, b, f)) out.push_back(f);
    return true;
  });
  return out;
}

inline bool hom_exists(const FinStructure& a, const FinStructure& b) {
  bool found = false;
  for_each_map(a.size(), b.size(), [&](const std::vector<int>& f) {
    found = is_hom(a, b, f);
    return !found;
  });
  return found;
}

inline bool is_iso(const FinStructure& a, const FinStructure& b, const std::vector<int>& perm) {
  if (a.size() != b.size()) return false;
  auto sa = tuple_sets(a), sb = tuple_sets(b);
  for (auto& [name, tuples] : sa) {
    if (tuples.size() != sb[name].size()) return false;
    for (const auto& t : tuples) {
      Tuple image;
      for (int x : t) image.push_back(perm[x]);
      if (!sb[name].count(image)) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<int>> all_automorphisms(const FinStructure& s) {
  std::vector<int> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    if (is_iso(s, s, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline bool isomorphic(const FinStructure& a, const FinStructure& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (is_iso(a, b, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Core test straight from the definition: no endomorphism misses an element.
inline bool is_core(const FinStructure& s) {
  bool core = true;
  for_each_map(s.size(), s.size(), [&](const std::vector<int>& f) {
    std::set<int> image(f.begin(), f.end());
    if (static_cast<int>(image.size()) < s.size() && is_hom(s, s, f)) core = false;
    return core;
  });
  return core;
}

/// Orbit of tuple t under the brute-force automorphism group.
inline std::set<Tuple> orbit(const FinStructure& s, const Tuple& t) {
  std::set<Tuple> out;
  for (const auto& g : all_automorphisms(s)) {
    Tuple image;
    for (int x : t) image.push_back(g[x]);
    out.insert(image);
  }
  return out;
}

// --- generators -----------------------------------------------------------

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// Random structure with the given binary symbols; each ordered pair
/// (loops included when `loops`) is present with probability `density`.
inline FinStructure random_binary(Rng& rng, int n, const std::vector<std::string>& symbols,
                                  double density, bool loops = true) {
  std::vector<omegacore::Symbol> syms;
  std::vector<omegacore::Relation> rels;
  for (const auto& name : symbols) {
    syms.push_back({name, 2});
    std::vector<Tuple> tuples;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if ((loops || a != b) && uniform01(rng) < density) tuples.push_back({a, b});
    rels.emplace_back(2, std::move(tuples));
  }
  return FinStructure(omegacore::Signature(std::move(syms)), n, std::move(rels));
}

inline FinStructure random_graph(Rng& rng, int n, double density) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (uniform01(rng) < density) edges.emplace_back(a, b);
  return omegacore::graph(n, edges);
}

/// Random instance over the signature of `like`, with `tuples_per_symbol`
/// random tuples per symbol.
inline FinStructure random_instance(Rng& rng, const omegacore::Signature& sig, int n,
                                    int tuples_per_symbol) {
  std::vector<omegacore::Relation> rels;
  for (const auto& sym : sig) {
    std::vector<Tuple> tuples;
    if (n > 0)
      for (int i = 0; i < tuples_per_symbol; ++i) {
        Tuple t;
        for (int a = 0; a < sym.arity; ++a) t.push_back(uniform(rng, 0, n - 1));
        tuples.push_back(t);
      }
    rels.emplace_back(sym.arity, std::move(tuples));
  }
  return FinStructure(sig, n, std::move(rels));
}

// --- graphs ---------------------------------------------------------------

using Adjacency = std::vector<std::vector<char>>;

inline Adjacency adjacency(const FinStructure& g) {
  Adjacency adj(g.size(), std::vector<char>(g.size(), 0));
  for (const auto& t : g.relation("E")) adj[t[0]][t[1]] = 1;
  return adj;
}

/// Length of a shortest cycle, 0 if acyclic; loops count as length 1 and
/// symmetric pairs are plain edges.
inline int girth(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  int best = 0;
  auto better = [&](int len) {
    if (best == 0 || len < best) best = len;
  };
  for (int v = 0; v < n; ++v)
    if (adj[v][v]) better(1);
  // simple cycles of length >= 3 through a least vertex, by DFS
  std::vector<char> on(n, 0);
  std::function<void(int, int, int)> dfs = [&](int start, int v, int len) {
    for (int w = start; w < n; ++w) {
      if (!adj[v][w]) continue;
      if (w == start && len >= 3) better(len);
      if (on[w] || w == start) continue;
      on[w] = 1;
      dfs(start, w, len + 1);
      on[w] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    on[s] = 1;
    dfs(s, s, 1);
    on[s] = 0;
  }
  return best;
}

inline bool has_triangle(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (adj[a][b] && adj[b][c] && adj[a][c]) return true;
  return false;
}

/// Every injective map from 0..k-1 into 0..n-1.
inline void for_each_injection(int k, int n, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> f;
  std::vector<char> used(n, 0);
  bool stop = false;
  std::function<void()> rec = [&] {
    if (stop) return;
    if (static_cast<int>(f.size()) == k) {
      stop = !visit(f);
      return;
    }
    for (int v = 0; v < n && !stop; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      f.push_back(v);
      rec();
      f.pop_back();
      used[v] = 0;
    }
  };
  rec();
}

inline bool embeds_as(const Adjacency& small, const Adjacency& big, const std::vector<int>& f) {
  for (std::size_t a = 0; a < small.size(); ++a)
    for (std::size_t b = 0; b < small.size(); ++b)
      if (small[a][b] != big[f[a]][f[b]]) return false;
  return true;
}

/// Exhaustive amalgam search over every simple graph C with at most
/// max_size vertices: is there C in the class with embeddings f1, f2 and
/// f1 e1 = f2 e2?
inline bool graph_amalgam_exists(const FinStructure& b1, const FinStructure& b2,
                                 const std::vector<int>& e1, const std::vector<int>& e2,
                                 const std::function<bool(const Adjacency&)>& member,
                                 int max_size) {
  auto a1 = adjacency(b1), a2 = adjacency(b2);
  for (int n = std::max(b1.size(), b2.size()); n <= max_size; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      Adjacency c(n, std::vector<char>(n, 0));
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if ((mask >> p) & 1) c[pairs[p].first][pairs[p].second] = c[pairs[p].second][pairs[p].first] = 1;
      if (!member(c)) continue;
      bool found = false;
      for_each_injection(b1.size(), n, [&](const std::vector<int>& f1) {
        if (!embeds_as(a1, c, f1)) return true;
        for_each_injection(b2.size(), n, [&](const std::vector<int>& f2) {
          for (std::size_t x = 0; x < e1.size(); ++x)
            if (f1[e1[x]] != f2[e2[x]]) return true;
          found = embeds_as(a2, c, f2);
          return !found;
        });
        return !found;
      });
      if (found) return true;
    }
  }
  return false;
}

}  // namespace oracle
