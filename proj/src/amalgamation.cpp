#include "omegacore/amalgamation.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "omegacore/io.hpp"

namespace omegacore {

namespace {

bool is_graph_symbol(const ClassSpec& spec, std::size_t i) {
  return spec.graph_mode && spec.signature[i].arity == 2;
}

void sort_canonically(std::vector<FinStructure>& v) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < v.size(); ++i) keys.emplace_back(io::canonical_text(v[i]), i);
  std::stable_sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
    auto sx = v[x.second].size(), sy = v[y.second].size();
    return std::tie(sx, x.first) < std::tie(sy, y.first);
  });
  std::vector<FinStructure> out;
  for (const auto& k : keys) out.push_back(std::move(v[k.second]));
  v = std::move(out);
}

void add_if_new(std::vector<FinStructure>& reps, FinStructure s) {
  for (const auto& r : reps)
    if (find_isomorphism(r, s)) return;
  reps.push_back(std::move(s));
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

/// Indices of orbit representatives (least element of each orbit) of a set
/// of mappings under left multiplication by `left` and right by `right`.
std::vector<int> orbit_representatives(const std::vector<Mapping>& maps,
                                       const std::vector<Mapping>& left,
                                       const std::vector<Mapping>& right) {
  std::map<Mapping, int> index;
  for (std::size_t i = 0; i < maps.size(); ++i) index.emplace(maps[i], static_cast<int>(i));
  std::vector<int> parent(maps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int i, const Mapping& other) {
    auto it = index.find(other);
    if (it == index.end()) return;
    int a = find_root(parent, i), b = find_root(parent, it->second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (const auto& beta : left) unite(static_cast<int>(i), compose(beta, maps[i]));
    for (const auto& alpha : right) unite(static_cast<int>(i), compose(maps[i], alpha));
  }
  std::vector<int> reps;
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (find_root(parent, static_cast<int>(i)) == static_cast<int>(i))
      reps.push_back(static_cast<int>(i));
  return reps;
}

struct CaseKey {
  int total, a_size, b1_size;
  std::size_t a_idx, b1_idx, b2_idx;
  int e1_rank, e2_rank;
  auto operator<=>(const CaseKey&) const = default;
};

}  // namespace

void check_class_spec(const ClassSpec& spec) {
  for (const auto& p : spec.forbidden)
    if (!p.structure.signature().same_vocabulary(spec.signature))
      throw Error("forbidden pattern does not share the class signature");
}

bool class_member(const ClassSpec& spec, const FinStructure& s) {
  if (!s.signature().same_vocabulary(spec.signature)) throw Error("signature mismatch");
  for (std::size_t i = 0; i < spec.signature.size(); ++i) {
    if (!is_graph_symbol(spec, i)) continue;
    const auto& rel = s.relation(spec.signature[i].name);
    for (const auto& t : rel) {
      if (t[0] == t[1]) return false;
      if (!rel.contains(Tuple{t[1], t[0]})) return false;
    }
  }
  for (const auto& p : spec.forbidden) {
    SearchOptions opt;
    opt.first_fail = true;
    opt.kind = p.mode == PatternMode::induced ? MapKind::embedding
                                              : MapKind::injective_homomorphism;
    if (find_mapping(p.structure, s, opt)) return false;
  }
  return true;
}

std::vector<FinStructure> age(const FinStructure& s, int k) {
  k = std::min(k, s.size());
  std::vector<FinStructure> result;
  for (int size = 1; size <= k; ++size) {
    std::vector<FinStructure> reps;
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      add_if_new(reps, induced_substructure(s, pick));
      int i = size - 1;
      while (i >= 0 && pick[i] == s.size() - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    sort_canonically(reps);
    for (auto& r : reps) result.push_back(std::move(r));
  }
  return result;
}

std::vector<FinStructure> class_members(const ClassSpec& spec, int size, const Caps& caps) {
  check_class_spec(spec);
  // One slot per independently choosable tuple; a graph slot is an
  // unordered pair carrying both directions.
  std::vector<std::pair<std::size_t, Tuple>> slots;
  for (std::size_t i = 0; i < spec.signature.size(); ++i) {
    const int arity = spec.signature[i].arity;
    if (is_graph_symbol(spec, i)) {
      for (int u = 0; u < size; ++u)
        for (int v = u + 1; v < size; ++v) slots.push_back({i, {u, v}});
      continue;
    }
    Tuple t(arity, 0);
    if (size == 0) continue;
    while (true) {
      slots.push_back({i, t});
      int p = arity - 1;
      while (p >= 0 && ++t[p] == size) t[p--] = 0;
      if (p < 0) break;
    }
  }
  if (slots.size() >= 63 || (std::size_t{1} << slots.size()) > caps.class_enumeration)
    throw CapacityError("class enumeration on " + std::to_string(size) +
                        " elements exceeds cap");

  std::vector<FinStructure> reps;
  const std::size_t total = std::size_t{1} << slots.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<std::vector<Tuple>> tuples(spec.signature.size());
    for (std::size_t b = 0; b < slots.size(); ++b) {
      if (!((mask >> b) & 1)) continue;
      const auto& [sym, t] = slots[b];
      tuples[sym].push_back(t);
      if (is_graph_symbol(spec, sym)) tuples[sym].push_back({t[1], t[0]});
    }
    std::vector<Relation> rels;
    for (std::size_t i = 0; i < spec.signature.size(); ++i)
      rels.emplace_back(spec.signature[i].arity, std::move(tuples[i]));
    FinStructure s(spec.signature, size, std::move(rels));
    if (class_member(spec, s)) add_if_new(reps, std::move(s));
  }
  sort_canonically(reps);
  return reps;
}

std::optional<Amalgam> find_amalgam(const ClassSpec& spec, const AmalgamCase& problem,
                                    const Caps& caps) {
  const auto& sig = spec.signature;
  const int n1 = problem.b1.size(), n2 = problem.b2.size();

  // B2 elements outside the image of e2 get a place in C: either a B1
  // element outside the image of e1, or a fresh element.
  std::vector<int> f2(n2, -1);
  std::vector<char> b1_shared(n1, 0);
  for (std::size_t a = 0; a < problem.e1.size(); ++a) {
    f2[problem.e2(static_cast<int>(a))] = problem.e1(static_cast<int>(a));
    b1_shared[problem.e1(static_cast<int>(a))] = 1;
  }
  std::vector<int> extras;
  for (int x = 0; x < n2; ++x)
    if (f2[x] < 0) extras.push_back(x);

  std::optional<Amalgam> found;
  std::vector<char> b1_used(n1, 0);

  auto try_identification = [&](int fresh) -> bool {
    const int c_size = n1 + fresh;
    // Known tuples: decided by B1 (through the identity) or B2 (through f2).
    std::vector<std::map<Tuple, bool>> known(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const int arity = sig[i].arity;
      auto fill = [&](const FinStructure& b, const std::vector<int>& place) {
        const int nb = b.size();
        if (nb == 0) return true;
        const auto& rel = b.relation(sig[i].name);
        Tuple t(arity, 0), image(arity);
        while (true) {
          for (int p = 0; p < arity; ++p) image[p] = place[t[p]];
          bool in = rel.contains(t);
          auto [it, inserted] = known[i].emplace(image, in);
          if (!inserted && it->second != in) return false;
          int p = arity - 1;
          while (p >= 0 && ++t[p] == nb) t[p--] = 0;
          if (p < 0) return true;
        }
      };
      std::vector<int> id(n1);
      std::iota(id.begin(), id.end(), 0);
      if (!fill(problem.b1, id) || !fill(problem.b2, f2)) return false;
    }

    std::vector<std::pair<std::size_t, Tuple>> free_slots;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const int arity = sig[i].arity;
      Tuple t(arity, 0);
      while (c_size > 0) {
        bool graph_slot = is_graph_symbol(spec, i);
        if (!known[i].count(t) && (!graph_slot || t[0] < t[1])) free_slots.push_back({i, t});
        int p = arity - 1;
        while (p >= 0 && ++t[p] == c_size) t[p--] = 0;
        if (p < 0) break;
      }
    }
    if (free_slots.size() >= 63) throw CapacityError("amalgam search exceeds cap on free tuples");

    // mask 0 is the free amalgam, so free-amalgamation classes stop at once
    const std::size_t total = std::size_t{1} << free_slots.size();
    for (std::size_t mask = 0; mask < total; ++mask) {
      if (mask >= caps.amalgam_choices)
        throw CapacityError("amalgam search exceeds cap on free-tuple choices");
      std::vector<std::vector<Tuple>> tuples(sig.size());
      for (std::size_t i = 0; i < sig.size(); ++i)
        for (const auto& [t, in] : known[i])
          if (in) tuples[i].push_back(t);
      for (std::size_t b = 0; b < free_slots.size(); ++b) {
        if (!((mask >> b) & 1)) continue;
        const auto& [sym, t] = free_slots[b];
        tuples[sym].push_back(t);
        if (is_graph_symbol(spec, sym)) tuples[sym].push_back({t[1], t[0]});
      }
      std::vector<Relation> rels;
      for (std::size_t i = 0; i < sig.size(); ++i) rels.emplace_back(sig[i].arity, std::move(tuples[i]));
      FinStructure c(sig, c_size, std::move(rels));
      if (class_member(spec, c)) {
        found = Amalgam{std::move(c), identity_mapping(n1), Mapping{f2}};
        return true;
      }
    }
    return false;
  };

  std::function<bool(std::size_t, int)> place = [&](std::size_t i, int fresh) -> bool {
    if (i == extras.size()) return try_identification(fresh);
    int x = extras[i];
    f2[x] = n1 + fresh;
    if (place(i + 1, fresh + 1)) return true;
    for (int y = 0; y < n1; ++y) {
      if (b1_shared[y] || b1_used[y]) continue;
      b1_used[y] = 1;
      f2[x] = y;
      bool done = place(i + 1, fresh);
      b1_used[y] = 0;
      if (done) return true;
    }
    f2[x] = -1;
    return false;
  };
  place(0, 0);
  return found;
}

std::vector<AmalgamCase> amalgamation_cases(const ClassSpec& spec, int size_bound,
                                            const Caps& caps) {
  check_class_spec(spec);
  std::vector<std::vector<FinStructure>> members(size_bound + 1);
  std::vector<std::vector<std::vector<Mapping>>> auts(size_bound + 1);
  for (int s = 0; s <= size_bound; ++s) {
    members[s] = class_members(spec, s, caps);
    for (const auto& m : members[s]) auts[s].push_back(automorphisms(m, caps));
  }

  std::vector<std::pair<CaseKey, AmalgamCase>> keyed;
  for (int sa = 0; sa <= size_bound; ++sa)
    for (std::size_t ia = 0; ia < members[sa].size(); ++ia) {
      const auto& a = members[sa][ia];
      const auto& aut_a = auts[sa][ia];
      for (int s1 = sa; s1 <= size_bound; ++s1)
        for (std::size_t i1 = 0; i1 < members[s1].size(); ++i1) {
          const auto& b1 = members[s1][i1];
          auto emb1 = enumerate_embeddings(a, b1);
          if (emb1.empty()) continue;
          auto reps1 = orbit_representatives(emb1, auts[s1][i1], aut_a);
          for (int s2 = s1; s2 <= size_bound; ++s2)
            for (std::size_t i2 = (s2 == s1 ? i1 : 0); i2 < members[s2].size(); ++i2) {
              const auto& b2 = members[s2][i2];
              auto emb2 = enumerate_embeddings(a, b2);
              if (emb2.empty()) continue;
              for (int r1 = 0; r1 < static_cast<int>(reps1.size()); ++r1) {
                const auto& e1 = emb1[reps1[r1]];
                // automorphisms of A that B1's symmetries can undo
                std::set<Mapping> e1_orbit;
                for (const auto& beta : auts[s1][i1]) e1_orbit.insert(compose(beta, e1));
                std::vector<Mapping> stab;
                for (const auto& alpha : aut_a)
                  if (e1_orbit.count(compose(e1, alpha))) stab.push_back(alpha);
                auto reps2 = orbit_representatives(emb2, auts[s2][i2], stab);
                for (int r2 = 0; r2 < static_cast<int>(reps2.size()); ++r2) {
                  CaseKey key{s1 + s2, sa, s1, ia, i1, i2, r1, r2};
                  keyed.push_back({key, AmalgamCase{a, b1, b2, e1, emb2[reps2[r2]]}});
                }
              }
            }
        }
    }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<AmalgamCase> cases;
  cases.reserve(keyed.size());
  for (auto& k : keyed) cases.push_back(std::move(k.second));
  return cases;
}

AmalgamationReport check_amalgamation_serial(const ClassSpec& spec, int size_bound,
                                             const Caps& caps) {
  auto cases = amalgamation_cases(spec, size_bound, caps);
  AmalgamationReport report;
  for (const auto& c : cases) {
    ++report.cases_checked;
    if (!find_amalgam(spec, c, caps)) {
      report.counterexample = AmalgamWitness{c, std::nullopt};
      return report;
    }
  }
  report.pass = true;
  return report;
}

AmalgamationReport check_amalgamation(const ClassSpec& spec, int size_bound, const Caps& caps) {
  auto cases = amalgamation_cases(spec, size_bound, caps);
  const long total = static_cast<long>(cases.size());
  std::atomic<long> first_failure{total};
  std::atomic<bool> capacity_hit{false};
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < total; ++i) {
    if (i > first_failure.load() || capacity_hit.load()) continue;
    bool ok = true;
    try {
      ok = find_amalgam(spec, cases[i], caps).has_value();
    } catch (const CapacityError&) {
      capacity_hit = true;
    }
    if (!ok) {
      long seen = first_failure.load();
      while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
      }
    }
  }
  // rerun serially so a capacity error surfaces on the calling thread
  if (capacity_hit) return check_amalgamation_serial(spec, size_bound, caps);

  AmalgamationReport report;
  if (first_failure == total) {
    report.pass = true;
    report.cases_checked = cases.size();
  } else {
    report.cases_checked = static_cast<std::size_t>(first_failure.load()) + 1;
    report.counterexample = AmalgamWitness{cases[first_failure], std::nullopt};
  }
  return report;
}

ProbeStats extension_property_probe(const FinStructure& g, const ClassSpec& spec,
                                    int set_bound) {
  if (!class_member(spec, g)) throw Error("probe graph is not a member of the class");
  std::optional<std::size_t> symbol = g.signature().index_of("E");
  if (!symbol || g.signature()[*symbol].arity != 2) {
    symbol.reset();
    for (std::size_t i = 0; i < g.signature().size() && !symbol; ++i)
      if (g.signature()[i].arity == 2) symbol = i;
  }
  if (!symbol) throw Error("probe needs a binary relation");
  const int n = g.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& t : g.relation(*symbol)) adj[t[0]][t[1]] = adj[t[1]][t[0]] = 1;

  std::vector<std::vector<int>> subsets{{}};
  std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& cur, int next) {
    if (static_cast<int>(cur.size()) == set_bound) return;
    for (int v = next; v < n; ++v) {
      cur.push_back(v);
      subsets.push_back(cur);
      grow(cur, v + 1);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  grow(cur, 0);

  ProbeStats stats;
  for (const auto& a : subsets) {
    bool independent = true;
    for (std::size_t i = 0; i < a.size() && independent; ++i)
      for (std::size_t j = i + 1; j < a.size() && independent; ++j)
        if (adj[a[i]][a[j]]) independent = false;
    if (!independent) continue;
    for (const auto& b : subsets) {
      bool disjoint = std::none_of(b.begin(), b.end(), [&](int v) {
        return std::find(a.begin(), a.end(), v) != a.end();
      });
      if (!disjoint) continue;
      ++stats.tested;
      for (int z = 0; z < n; ++z) {
        if (std::find(a.begin(), a.end(), z) != a.end() ||
            std::find(b.begin(), b.end(), z) != b.end())
          continue;
        bool good = std::all_of(a.begin(), a.end(), [&](int v) { return adj[z][v]; }) &&
                    std::none_of(b.begin(), b.end(), [&](int v) { return adj[z][v]; });
        if (good) {
          ++stats.satisfied;
          break;
        }
      }
    }
  }
  return stats;
}

}  // namespace omegacore
