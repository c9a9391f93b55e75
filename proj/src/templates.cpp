#include "omegacore/templates.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

namespace omegacore {

namespace {

using Matrix = std::vector<std::vector<char>>;

std::size_t graph_symbol(const FinStructure& g) {
  if (auto e = g.signature().index_of("E"); e && g.signature()[*e].arity == 2) return *e;
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < g.signature().size(); ++i)
    if (g.signature()[i].arity == 2) {
      if (found) throw Error("graph input needs a symbol E or a single binary symbol");
      found = i;
    }
  if (!found) throw Error("graph input needs a binary symbol");
  return *found;
}

Matrix arcs(const FinStructure& g) {
  Matrix m(g.size(), std::vector<char>(g.size(), 0));
  for (const auto& t : g.relation(graph_symbol(g))) m[t[0]][t[1]] = 1;
  return m;
}

Matrix undirected(const FinStructure& g) {
  auto m = arcs(g);
  for (int u = 0; u < g.size(); ++u)
    for (int v = 0; v < g.size(); ++v)
      if (m[u][v]) m[v][u] = 1;
  return m;
}

std::optional<int> first_loop(const Matrix& m) {
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v][v]) return static_cast<int>(v);
  return std::nullopt;
}

void check_vertex_cap(int n, std::size_t cap) {
  if (static_cast<std::size_t>(n) > cap)
    throw CapacityError("instance has " + std::to_string(n) + " vertices, cap is " +
                        std::to_string(cap));
}

bool acyclic_after_switch(const Matrix& m, std::uint64_t switched) {
  const int n = static_cast<int>(m.size());
  std::vector<int> indegree(n, 0);
  auto arc = [&](int u, int v) {
    bool cross = ((switched >> u) & 1) != ((switched >> v) & 1);
    return cross ? m[v][u] != 0 : m[u][v] != 0;
  };
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && arc(u, v)) ++indegree[v];
  std::vector<int> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  int removed = 0;
  while (!ready.empty()) {
    int u = ready.back();
    ready.pop_back();
    ++removed;
    for (int v = 0; v < n; ++v)
      if (u != v && arc(u, v) && --indegree[v] == 0) ready.push_back(v);
  }
  return removed == n;
}

/// (|X|, lexicographic members) order on vertex sets.
bool switch_set_less(std::uint64_t a, std::uint64_t b) {
  int ca = std::popcount(a), cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  std::uint64_t d = a ^ b;
  if (d == 0) return false;
  return (a & (d & (~d + 1))) != 0;
}

PartitionResult switching_result(int n, std::optional<std::uint64_t> mask) {
  PartitionResult r;
  if (!mask) return r;
  r.satisfiable = true;
  r.part.resize(n);
  for (int v = 0; v < n; ++v) r.part[v] = static_cast<int>((*mask >> v) & 1);
  return r;
}

std::vector<int> depths(const RootedTree& t) {
  std::vector<int> depth(t.parent.size(), -1);
  std::function<int(int)> get = [&](int v) {
    if (depth[v] >= 0) return depth[v];
    return depth[v] = t.parent[v] < 0 ? 0 : get(t.parent[v]) + 1;
  };
  for (std::size_t v = 0; v < t.parent.size(); ++v) get(static_cast<int>(v));
  return depth;
}

int lca(const RootedTree& t, const std::vector<int>& depth, int a, int b) {
  while (depth[a] > depth[b]) a = t.parent[a];
  while (depth[b] > depth[a]) b = t.parent[b];
  while (a != b) {
    a = t.parent[a];
    b = t.parent[b];
  }
  return a;
}

std::vector<int> tree_path(const UnrootedTree& t, int from, int to) {
  std::vector<std::vector<int>> adj(t.node_count);
  for (auto [u, v] : t.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> prev(t.node_count, -2);
  std::queue<int> q;
  q.push(from);
  prev[from] = -1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (prev[v] == -2) {
        prev[v] = u;
        q.push(v);
      }
  }
  std::vector<int> path;
  if (prev[to] == -2) return path;
  for (int v = to; v != -1; v = prev[v]) path.push_back(v);
  return path;
}

int leaf_node(const UnrootedTree& t, int leaf) {
  for (int v = 0; v < t.node_count; ++v)
    if (t.leaf[v] == leaf) return v;
  return -1;
}

/// Follows assigned parents from v. Returns the ancestor list if the chain
/// reaches a root, nullopt if it hits an unassigned vertex; sets `cycle`.
std::optional<std::vector<int>> ancestors(const std::vector<int>& parent,
                                          const std::vector<char>& assigned, int v, bool& cycle) {
  std::vector<int> chain;
  int cur = v;
  const std::size_t n = parent.size();
  while (true) {
    if (!assigned[cur]) return std::nullopt;
    int p = parent[cur];
    if (p < 0) return chain;
    if (p == v || chain.size() > n) {
      cycle = true;
      return std::nullopt;
    }
    chain.push_back(p);
    cur = p;
  }
}

}  // namespace

int RootedTree::root() const {
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (parent[v] < 0) return static_cast<int>(v);
  return -1;
}

int RootedTree::node_of_leaf(int leaf_index) const {
  for (std::size_t v = 0; v < leaf.size(); ++v)
    if (leaf[v] == leaf_index) return static_cast<int>(v);
  return -1;
}

std::string to_newick(const RootedTree& tree, const std::vector<std::string>& names) {
  std::function<std::string(int)> render = [&](int v) -> std::string {
    if (tree.leaf[v] >= 0) return names[tree.leaf[v]];
    std::string s = "(";
    for (std::size_t i = 0; i < tree.children[v].size(); ++i) {
      if (i) s += ",";
      s += render(tree.children[v][i]);
    }
    return s + ")";
  };
  int r = tree.root();
  return r < 0 ? "()" : render(r);
}

TriangleFreeResult solve_triangle_free(const FinStructure& g) {
  auto m = undirected(g);
  if (auto v = first_loop(m)) return {false, {*v}};
  const int n = g.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (!m[a][b]) continue;
      for (int c = b + 1; c < n; ++c)
        if (m[a][c] && m[b][c]) return {false, {a, b, c}};
    }
  return {true, {}};
}

PartitionResult solve_no_mono_tri(const FinStructure& g, const Caps& caps) {
  auto m = undirected(g);
  PartitionResult r;
  if (auto v = first_loop(m)) {
    r.loop = *v;
    return r;
  }
  const int n = g.size();
  check_vertex_cap(n, caps.exhaustive_vertices);
  // closing[v]: pairs (u, w), u < w < v, forming a triangle with v
  std::vector<std::vector<std::pair<int, int>>> closing(n);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < v; ++u)
      for (int w = u + 1; w < v; ++w)
        if (m[u][v] && m[w][v] && m[u][w]) closing[v].emplace_back(u, w);
  std::vector<int> part(n, -1);
  std::function<bool(int)> place = [&](int v) {
    if (v == n) return true;
    for (int colour = 0; colour < 2; ++colour) {
      bool ok = std::none_of(closing[v].begin(), closing[v].end(), [&](auto uw) {
        return part[uw.first] == colour && part[uw.second] == colour;
      });
      if (!ok) continue;
      part[v] = colour;
      if (place(v + 1)) return true;
    }
    part[v] = -1;
    return false;
  };
  if (place(0)) {
    r.satisfiable = true;
    r.part = std::move(part);
  }
  return r;
}

std::optional<std::vector<int>> solve_betweenness(const BetweennessInstance& inst,
                                                  const Caps& caps) {
  const int n = static_cast<int>(inst.elements.size());
  for (const auto& t : inst.triples) {
    for (int e : t)
      if (e < 0 || e >= n) throw Error("betweenness triple element out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw Error("betweenness triple with a repeated element");
  }
  check_vertex_cap(n, caps.exhaustive_vertices);
  std::vector<std::vector<int>> involving(n);
  for (std::size_t i = 0; i < inst.triples.size(); ++i)
    for (int e : inst.triples[i]) involving[e].push_back(static_cast<int>(i));

  // Positions are handed out in increasing order, so an unplaced element
  // will end up after every placed one.
  std::vector<int> pos(n, -1);
  auto violated = [&](const std::array<int, 3>& t) {
    int pa = pos[t[0]], pb = pos[t[1]], pc = pos[t[2]];
    if (pb < 0) return pa >= 0 && pc >= 0;
    if (pa < 0 && pc < 0) return true;
    if (pa >= 0 && pc >= 0) return !((pa < pb && pb < pc) || (pc < pb && pb < pa));
    int placed = pa >= 0 ? pa : pc;
    return placed > pb;
  };
  std::function<bool(int)> fill = [&](int position) {
    if (position == n) return true;
    for (int e = 0; e < n; ++e) {
      if (pos[e] >= 0) continue;
      pos[e] = position;
      bool ok = std::none_of(involving[e].begin(), involving[e].end(),
                             [&](int i) { return violated(inst.triples[i]); });
      if (ok && fill(position + 1)) return true;
      pos[e] = -1;
    }
    return false;
  };
  if (!fill(0)) return std::nullopt;
  for (int& p : pos) ++p;
  return pos;
}

PartitionResult solve_switching_acyclic_serial(const FinStructure& d, const Caps& caps) {
  auto m = arcs(d);
  if (auto v = first_loop(m)) {
    PartitionResult r;
    r.loop = *v;
    return r;
  }
  const int n = d.size();
  check_vertex_cap(n, caps.exhaustive_vertices);
  for (int size = 0; size <= n / 2; ++size) {
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::uint64_t mask = 0;
      for (int v : pick) mask |= std::uint64_t{1} << v;
      if (acyclic_after_switch(m, mask)) return switching_result(n, mask);
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return switching_result(n, std::nullopt);
}

PartitionResult solve_switching_acyclic(const FinStructure& d, const Caps& caps) {
  auto m = arcs(d);
  if (auto v = first_loop(m)) {
    PartitionResult r;
    r.loop = *v;
    return r;
  }
  const int n = d.size();
  check_vertex_cap(n, caps.exhaustive_vertices);
  const long long total = 1LL << n;
  bool found = false;
  std::uint64_t best = 0;
#pragma omp parallel
  {
    bool local_found = false;
    std::uint64_t local_best = 0;
#pragma omp for schedule(static)
    for (long long raw = 0; raw < total; ++raw) {
      auto mask = static_cast<std::uint64_t>(raw);
      if (std::popcount(mask) > n / 2) continue;
      if (local_found && !switch_set_less(mask, local_best)) continue;
      if (acyclic_after_switch(m, mask)) {
        local_found = true;
        local_best = mask;
      }
    }
#pragma omp critical
    if (local_found && (!found || switch_set_less(local_best, best))) {
      found = true;
      best = local_best;
    }
  }
  return switching_result(n, found ? std::optional<std::uint64_t>(best) : std::nullopt);
}

std::optional<RootedTree> solve_rooted_triples(const TripleSet& ts) {
  const int n = static_cast<int>(ts.leaves.size());
  for (const auto& t : ts.triples) {
    for (int e : t)
      if (e < 0 || e >= n) throw Error("triple leaf out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw Error("rooted triple needs three distinct leaves");
  }
  RootedTree tree;
  if (n == 0) return tree;

  auto by_name = [&](int a, int b) {
    return std::tie(ts.leaves[a], a) < std::tie(ts.leaves[b], b);
  };
  auto new_node = [&](int parent, int leaf) {
    int id = static_cast<int>(tree.parent.size());
    tree.parent.push_back(parent);
    tree.leaf.push_back(leaf);
    tree.children.emplace_back();
    if (parent >= 0) tree.children[parent].push_back(id);
    return id;
  };

  std::vector<int> component(n);
  std::function<bool(std::vector<int>, int)> build = [&](std::vector<int> leaves, int parent) {
    if (leaves.size() == 1) {
      new_node(parent, leaves.front());
      return true;
    }
    std::vector<char> present(n, 0);
    for (int l : leaves) present[l] = 1;
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> root = [&](int x) { return uf[x] == x ? x : uf[x] = root(uf[x]); };
    for (const auto& t : ts.triples)
      if (present[t[0]] && present[t[1]] && present[t[2]]) uf[root(t[1])] = root(t[2]);
    std::map<int, std::vector<int>> groups;
    for (int l : leaves) groups[root(l)].push_back(l);
    if (groups.size() == 1) return false;
    std::vector<std::vector<int>> parts;
    for (auto& [r, members] : groups) {
      std::sort(members.begin(), members.end(), by_name);
      parts.push_back(std::move(members));
    }
    std::sort(parts.begin(), parts.end(),
              [&](const auto& a, const auto& b) { return by_name(a.front(), b.front()); });
    int node = new_node(parent, -1);
    for (auto& p : parts)
      if (!build(std::move(p), node)) return false;
    return true;
  };
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::sort(all.begin(), all.end(), by_name);
  if (!build(all, -1)) return std::nullopt;
  return tree;
}

std::optional<UnrootedTree> solve_quartets(const QuartetSet& qs, const Caps& caps) {
  const int n = static_cast<int>(qs.leaves.size());
  check_vertex_cap(n, caps.quartet_leaves);
  for (const auto& q : qs.quartets) {
    for (int e : q)
      if (e < 0 || e >= n) throw Error("quartet leaf out of range");
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (q[i] == q[j]) throw Error("quartet needs four distinct leaves");
  }
  UnrootedTree tree;
  tree.node_count = n;
  tree.leaf.resize(n);
  std::iota(tree.leaf.begin(), tree.leaf.end(), 0);
  if (n <= 3) {
    if (n == 2) tree.edges.emplace_back(0, 1);
    if (n == 3) {
      tree.node_count = 4;
      tree.leaf.push_back(-1);
      for (int l = 0; l < 3; ++l) tree.edges.emplace_back(l, 3);
    }
    return tree;  // no quartet fits on fewer than four leaves
  }
  // quartets become checkable once their largest leaf is inserted
  std::vector<std::vector<int>> due(n);
  for (std::size_t i = 0; i < qs.quartets.size(); ++i) {
    const auto& q = qs.quartets[i];
    due[*std::max_element(q.begin(), q.end())].push_back(static_cast<int>(i));
  }
  tree.node_count = n + 1;
  tree.leaf.push_back(-1);
  for (int l = 0; l < 3; ++l) tree.edges.emplace_back(l, n);

  std::function<bool(int)> insert = [&](int next) {
    if (next == n) return true;
    const std::size_t edge_count = tree.edges.size();
    for (std::size_t e = 0; e < edge_count; ++e) {
      auto [u, v] = tree.edges[e];
      int w = tree.node_count++;
      tree.leaf.push_back(-1);
      tree.edges[e] = {u, w};
      tree.edges.emplace_back(w, v);
      tree.edges.emplace_back(w, next);
      bool ok = std::all_of(due[next].begin(), due[next].end(),
                            [&](int i) { return quartet_holds(tree, qs.quartets[i]); });
      if (ok && insert(next + 1)) return true;
      tree.edges.pop_back();
      tree.edges.pop_back();
      tree.edges[e] = {u, v};
      tree.leaf.pop_back();
      --tree.node_count;
    }
    return false;
  };
  if (!insert(3)) return std::nullopt;
  return tree;
}

std::optional<std::vector<int>> solve_tree_description(const TreeDescription& td,
                                                       const Caps& caps) {
  const int n = static_cast<int>(td.vertices.size());
  check_vertex_cap(n, caps.tree_description_vertices);
  for (const auto* arcs : {&td.anc, &td.nonanc})
    for (auto [u, v] : *arcs)
      if (u < 0 || u >= n || v < 0 || v >= n) throw Error("tree description arc out of range");

  std::vector<int> parent(n, -1);
  std::vector<char> assigned(n, 0);
  auto consistent = [&]() {
    for (int v = 0; v < n; ++v) {
      bool cycle = false;
      ancestors(parent, assigned, v, cycle);
      if (cycle) return false;
    }
    auto decided = [&](int v, std::vector<int>& chain) {
      bool cycle = false;
      auto c = ancestors(parent, assigned, v, cycle);
      if (!c) return false;
      chain = std::move(*c);
      return true;
    };
    std::vector<int> chain;
    for (auto [u, v] : td.anc)
      if (decided(v, chain) && std::find(chain.begin(), chain.end(), u) == chain.end())
        return false;
    for (auto [u, v] : td.nonanc)
      if (decided(v, chain) && std::find(chain.begin(), chain.end(), u) != chain.end())
        return false;
    return true;
  };
  std::function<bool(int)> assign = [&](int v) {
    if (v == n) return true;
    assigned[v] = 1;
    for (int p = -1; p < n; ++p) {
      if (p == v) continue;
      parent[v] = p;
      if (consistent() && assign(v + 1)) return true;
    }
    assigned[v] = 0;
    parent[v] = -1;
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return parent;
}

bool triple_holds(const RootedTree& tree, const std::array<int, 3>& t) {
  auto depth = depths(tree);
  int x = tree.node_of_leaf(t[0]), y = tree.node_of_leaf(t[1]), z = tree.node_of_leaf(t[2]);
  if (x < 0 || y < 0 || z < 0) return false;
  int yz = lca(tree, depth, y, z);
  return yz != lca(tree, depth, yz, x);
}

bool verify_rooted_triples(const TripleSet& ts, const RootedTree& tree) {
  for (std::size_t l = 0; l < ts.leaves.size(); ++l)
    if (tree.node_of_leaf(static_cast<int>(l)) < 0) return false;
  return std::all_of(ts.triples.begin(), ts.triples.end(),
                     [&](const auto& t) { return triple_holds(tree, t); });
}

bool quartet_holds(const UnrootedTree& tree, const std::array<int, 4>& q) {
  int x = leaf_node(tree, q[0]), y = leaf_node(tree, q[1]);
  int u = leaf_node(tree, q[2]), v = leaf_node(tree, q[3]);
  if (x < 0 || y < 0 || u < 0 || v < 0) return false;
  auto p1 = tree_path(tree, x, y), p2 = tree_path(tree, u, v);
  if (p1.empty() || p2.empty()) return false;
  for (int a : p1)
    if (std::find(p2.begin(), p2.end(), a) != p2.end()) return false;
  return true;
}

bool verify_quartets(const QuartetSet& qs, const UnrootedTree& tree) {
  return std::all_of(qs.quartets.begin(), qs.quartets.end(),
                     [&](const auto& q) { return quartet_holds(tree, q); });
}

bool verify_betweenness(const BetweennessInstance& inst, const std::vector<int>& f) {
  const int n = static_cast<int>(inst.elements.size());
  if (static_cast<int>(f.size()) != n) return false;
  std::vector<int> sorted = f;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i + 1) return false;
  return std::all_of(inst.triples.begin(), inst.triples.end(), [&](const auto& t) {
    int a = f[t[0]], b = f[t[1]], c = f[t[2]];
    return (a < b && b < c) || (c < b && b < a);
  });
}

bool verify_switching(const FinStructure& d, const std::vector<int>& part) {
  auto m = arcs(d);
  if (static_cast<int>(part.size()) != d.size() || first_loop(m)) return false;
  std::uint64_t mask = 0;
  for (std::size_t v = 0; v < part.size(); ++v)
    if (part[v]) mask |= std::uint64_t{1} << v;
  return acyclic_after_switch(m, mask);
}

bool verify_no_mono_tri(const FinStructure& g, const std::vector<int>& part) {
  auto m = undirected(g);
  const int n = g.size();
  if (static_cast<int>(part.size()) != n || first_loop(m)) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (m[a][b] && m[b][c] && m[a][c] && part[a] == part[b] && part[b] == part[c])
          return false;
  return true;
}

bool verify_tree_description(const TreeDescription& td, const std::vector<int>& parent) {
  const int n = static_cast<int>(td.vertices.size());
  if (static_cast<int>(parent.size()) != n) return false;
  std::vector<char> all(n, 1);
  std::vector<std::vector<int>> chains(n);
  for (int v = 0; v < n; ++v) {
    if (parent[v] == v || parent[v] < -1 || parent[v] >= n) return false;
    bool cycle = false;
    auto c = ancestors(parent, all, v, cycle);
    if (!c) return false;
    chains[v] = std::move(*c);
  }
  auto is_anc = [&](int u, int v) {
    return std::find(chains[v].begin(), chains[v].end(), u) != chains[v].end();
  };
  return std::all_of(td.anc.begin(), td.anc.end(), [&](auto a) { return is_anc(a.first, a.second); }) &&
         std::none_of(td.nonanc.begin(), td.nonanc.end(),
                      [&](auto a) { return is_anc(a.first, a.second); });
}

namespace exhaustive {

bool triangle_free(const FinStructure& g) {
  const auto& rel = g.relation(graph_symbol(g));
  auto edge = [&](int a, int b) { return rel.contains(Tuple{a, b}) || rel.contains(Tuple{b, a}); };
  const int n = g.size();
  for (int a = 0; a < n; ++a) {
    if (edge(a, a)) return false;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (a != b && b != c && a != c && edge(a, b) && edge(b, c) && edge(a, c)) return false;
  }
  return true;
}

bool no_mono_tri(const FinStructure& g) {
  const auto& rel = g.relation(graph_symbol(g));
  auto edge = [&](int a, int b) { return rel.contains(Tuple{a, b}) || rel.contains(Tuple{b, a}); };
  const int n = g.size();
  for (int a = 0; a < n; ++a)
    if (edge(a, a)) return false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b)
        for (int c = b + 1; c < n && ok; ++c) {
          bool same = ((mask >> a) & 1) == ((mask >> b) & 1) && ((mask >> b) & 1) == ((mask >> c) & 1);
          if (same && edge(a, b) && edge(b, c) && edge(a, c)) ok = false;
        }
    if (ok) return true;
  }
  return false;
}

bool betweenness(const BetweennessInstance& inst) {
  const int n = static_cast<int>(inst.elements.size());
  std::vector<int> f(n);
  std::iota(f.begin(), f.end(), 1);
  do {
    bool ok = std::all_of(inst.triples.begin(), inst.triples.end(), [&](const auto& t) {
      int a = f[t[0]], b = f[t[1]], c = f[t[2]];
      return (a < b && b < c) || (c < b && b < a);
    });
    if (ok) return true;
  } while (std::next_permutation(f.begin(), f.end()));
  return false;
}

bool switching_acyclic(const FinStructure& d) {
  const auto& rel = d.relation(graph_symbol(d));
  const int n = d.size();
  for (const auto& t : rel)
    if (t[0] == t[1]) return false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    // switched arc list, then repeated sink removal
    std::vector<std::pair<int, int>> arcs_after;
    for (const auto& t : rel) {
      bool cross = ((mask >> t[0]) & 1) != ((mask >> t[1]) & 1);
      arcs_after.emplace_back(cross ? t[1] : t[0], cross ? t[0] : t[1]);
    }
    std::vector<char> alive(n, 1);
    bool progress = true;
    int remaining = n;
    while (progress) {
      progress = false;
      for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        bool has_out = std::any_of(arcs_after.begin(), arcs_after.end(), [&](auto a) {
          return a.first == v && alive[a.second];
        });
        if (!has_out) {
          alive[v] = 0;
          --remaining;
          progress = true;
        }
      }
    }
    if (remaining == 0) return true;
  }
  return false;
}

bool rooted_triples(const TripleSet& ts) {
  const int n = static_cast<int>(ts.leaves.size());
  if (n <= 2) return ts.triples.empty();
  using Mask = std::uint32_t;
  // clusters(S): every cluster family of a rooted tree on S (S included)
  std::map<Mask, std::vector<std::vector<Mask>>> memo;
  std::function<const std::vector<std::vector<Mask>>&(Mask)> trees =
      [&](Mask s) -> const std::vector<std::vector<Mask>>& {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    std::vector<std::vector<Mask>> out;
    if (std::popcount(s) == 1) {
      out.push_back({s});
      return memo[s] = out;
    }
    // set partitions of s into >= 2 blocks, block containing lowest bit first
    std::function<void(Mask, std::vector<Mask>&)> split = [&](Mask rest, std::vector<Mask>& blocks) {
      if (rest == 0) {
        if (blocks.size() < 2) return;
        std::vector<std::vector<Mask>> acc{{s}};
        for (Mask b : blocks) {
          std::vector<std::vector<Mask>> next;
          for (const auto& partial : acc)
            for (const auto& sub : trees(b)) {
              auto merged = partial;
              merged.insert(merged.end(), sub.begin(), sub.end());
              next.push_back(std::move(merged));
            }
          acc = std::move(next);
        }
        for (auto& a : acc) out.push_back(std::move(a));
        return;
      }
      Mask low = rest & (~rest + 1);
      Mask others = rest & ~low;
      // every subset of `others` joins `low` in the next block
      for (Mask sub = others;; sub = (sub - 1) & others) {
        blocks.push_back(low | sub);
        split(rest & ~(low | sub), blocks);
        blocks.pop_back();
        if (sub == 0) break;
      }
    };
    std::vector<Mask> blocks;
    split(s, blocks);
    return memo[s] = out;
  };
  for (const auto& clusters : trees((Mask{1} << n) - 1)) {
    bool ok = std::all_of(ts.triples.begin(), ts.triples.end(), [&](const auto& t) {
      Mask yz = (Mask{1} << t[1]) | (Mask{1} << t[2]);
      return std::any_of(clusters.begin(), clusters.end(), [&](Mask c) {
        return (c & yz) == yz && !((c >> t[0]) & 1);
      });
    });
    if (ok) return true;
  }
  return false;
}

bool quartets(const QuartetSet& qs) {
  const int n = static_cast<int>(qs.leaves.size());
  using Mask = std::uint32_t;
  const Mask full = (Mask{1} << n) - 1;
  std::vector<Mask> splits;  // side not containing leaf 0
  for (Mask side = 1; side < full; ++side) {
    if (side & 1) continue;
    int c = std::popcount(side);
    if (c >= 2 && c <= n - 2) splits.push_back(side);
  }
  auto compatible = [&](Mask a, Mask b) {
    Mask ac = full & ~a, bc = full & ~b;
    return (a & b) == 0 || (a & bc) == 0 || (ac & b) == 0 || (ac & bc) == 0;
  };
  auto displays = [&](Mask side, const std::array<int, 4>& q) {
    auto in = [&](int l) { return ((side >> l) & 1) != 0; };
    return (in(q[0]) && in(q[1]) && !in(q[2]) && !in(q[3])) ||
           (!in(q[0]) && !in(q[1]) && in(q[2]) && in(q[3]));
  };
  std::vector<Mask> chosen;
  std::function<bool(std::size_t)> cover = [&](std::size_t i) {
    if (i == qs.quartets.size()) return true;
    const auto& q = qs.quartets[i];
    if (std::any_of(chosen.begin(), chosen.end(), [&](Mask s) { return displays(s, q); }))
      return cover(i + 1);
    for (Mask s : splits) {
      if (!displays(s, q)) continue;
      if (!std::all_of(chosen.begin(), chosen.end(), [&](Mask c) { return compatible(c, s); }))
        continue;
      chosen.push_back(s);
      bool ok = cover(i + 1);
      chosen.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return cover(0);
}

bool tree_description(const TreeDescription& td) {
  const int n = static_cast<int>(td.vertices.size());
  std::vector<int> parent(n, -1);
  std::function<bool(int)> all = [&](int v) {
    if (v == n) return verify_tree_description(td, parent);
    for (int p = -1; p < n; ++p) {
      parent[v] = p;
      if (all(v + 1)) return true;
    }
    return false;
  };
  return all(0);
}

}  // namespace exhaustive

}  // namespace omegacore
