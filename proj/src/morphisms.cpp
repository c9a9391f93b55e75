#include "omegacore/morphisms.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>

namespace omegacore {

MappingFlags classify(const FinStructure& source, const FinStructure& target,
                      const Mapping& m) {
  if (!source.signature().same_vocabulary(target.signature()))
    throw Error("signature mismatch");
  if (static_cast<int>(m.size()) != source.size())
    throw Error("mapping length does not match source domain");
  for (int v : m.values)
    if (v < 0 || v >= target.size()) throw Error("mapping value out of target domain");

  MappingFlags f;
  f.is_homomorphism = true;
  for (std::size_t i = 0; i < source.signature().size() && f.is_homomorphism; ++i) {
    const auto& dst = target.relation(source.signature()[i].name);
    for (const auto& t : source.relation(i))
      if (!dst.contains(image_of(m, t))) {
        f.is_homomorphism = false;
        break;
      }
  }

  std::vector<int> preimage_count(target.size(), 0);
  for (int v : m.values) ++preimage_count[v];
  f.is_injective = std::all_of(preimage_count.begin(), preimage_count.end(),
                               [](int c) { return c <= 1; });
  bool surjective = std::all_of(preimage_count.begin(), preimage_count.end(),
                                [](int c) { return c >= 1; });

  // Strong: R(x) iff R(f(x)) for every tuple x over the source. Checked by
  // enumerating source tuples whose image lies in the target relation.
  f.is_strong = f.is_homomorphism;
  if (f.is_strong) {
    std::vector<std::vector<int>> preimages(target.size());
    for (int x = 0; x < source.size(); ++x) preimages[m(x)].push_back(x);
    for (std::size_t i = 0; i < source.signature().size() && f.is_strong; ++i) {
      const auto& src = source.relation(i);
      const auto& dst = target.relation(source.signature()[i].name);
      for (const auto& t : dst) {
        // every combination of preimages of t must be in src
        Tuple pre(t.size());
        std::vector<std::size_t> pick(t.size(), 0);
        bool any = std::all_of(t.begin(), t.end(),
                               [&](int v) { return !preimages[v].empty(); });
        if (!any) continue;
        while (true) {
          for (std::size_t p = 0; p < t.size(); ++p) pre[p] = preimages[t[p]][pick[p]];
          if (!src.contains(pre)) {
            f.is_strong = false;
            break;
          }
          std::size_t p = t.size();
          while (p > 0 && ++pick[p - 1] == preimages[t[p - 1]].size()) pick[--p] = 0;
          if (p == 0) break;
        }
        if (!f.is_strong) break;
      }
    }
  }
  f.is_embedding = f.is_homomorphism && f.is_strong && f.is_injective;
  f.is_isomorphism = f.is_embedding && surjective;
  return f;
}

Mapping identity_mapping(int n) {
  Mapping m{std::vector<int>(n)};
  std::iota(m.values.begin(), m.values.end(), 0);
  return m;
}

Mapping compose(const Mapping& outer, const Mapping& inner) {
  Mapping m{std::vector<int>(inner.size())};
  for (std::size_t i = 0; i < inner.size(); ++i) m.values[i] = outer(inner(i));
  return m;
}

Mapping inverse(const Mapping& bijection) {
  Mapping m{std::vector<int>(bijection.size(), -1)};
  for (std::size_t i = 0; i < bijection.size(); ++i) {
    int v = bijection(static_cast<int>(i));
    if (v < 0 || v >= static_cast<int>(m.size()) || m.values[v] != -1)
      throw Error("inverse of a non-bijective mapping");
    m.values[v] = static_cast<int>(i);
  }
  return m;
}

Tuple image_of(const Mapping& m, std::span<const int> tuple) {
  Tuple out(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) out[i] = m(tuple[i]);
  return out;
}

namespace {

/// Membership table for one target relation: a bitmap when n^arity is
/// small, binary search otherwise.
class MembershipTable {
 public:
  MembershipTable(const Relation& rel, int n) : rel_(&rel), n_(n) {
    std::size_t cells = 1;
    for (int i = 0; i < rel.arity() && cells <= kBitmapLimit; ++i) cells *= std::max(n, 1);
    if (cells <= kBitmapLimit) {
      bits_.assign(cells, 0);
      for (const auto& t : rel) bits_[power_index(t, n)] = 1;
    }
  }

  bool contains(std::span<const int> t) const {
    if (!bits_.empty()) return bits_[power_index(t, n_)] != 0;
    return rel_->contains(t);
  }

 private:
  static constexpr std::size_t kBitmapLimit = std::size_t{1} << 22;
  const Relation* rel_;
  int n_;
  std::vector<char> bits_;
};

struct Constraint {
  int relation;  // index into the kernel's target relation list
  std::vector<int> scope;
};

/// Backtracking search with generalized arc consistency on every source
/// tuple, trail-based undo, and optional injectivity/strongness.
class Kernel {
 public:
  Kernel(const FinStructure& source, const FinStructure& target, const SearchOptions& opt)
      : opt_(opt), n_(source.size()), m_(target.size()),
        words_((target.size() + 63) / 64) {
    if (!source.signature().same_vocabulary(target.signature()))
      throw Error("signature mismatch");
    for (std::size_t i = 0; i < source.signature().size(); ++i) {
      const auto& name = source.signature()[i].name;
      const auto& dst_rel = target.relation(name);
      dst_rels_.push_back(&dst_rel);
      if (opt.kind == MapKind::embedding) src_tables_.emplace_back(source.relation(i), n_);
      for (const auto& t : source.relation(i))
        constraints_.push_back({static_cast<int>(i), t});
    }
    var_constraints_.resize(n_);
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      auto scope = constraints_[c].scope;
      std::sort(scope.begin(), scope.end());
      scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
      for (int v : scope) var_constraints_[v].push_back(static_cast<int>(c));
    }
    if (opt_.kind == MapKind::embedding) {
      incidence_.assign(dst_rels_.size(), std::vector<std::vector<int>>(m_));
      for (std::size_t r = 0; r < dst_rels_.size(); ++r) {
        const auto& tuples = dst_rels_[r]->tuples();
        for (std::size_t t = 0; t < tuples.size(); ++t) {
          auto elems = tuples[t];
          std::sort(elems.begin(), elems.end());
          elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
          for (int v : elems) incidence_[r][v].push_back(static_cast<int>(t));
        }
      }
    }
    domains_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (int v = 0; v < n_; ++v)
      for (int a = 0; a < m_; ++a) set_bit(v, a);
    if (!opt_.allowed.empty()) {
      if (static_cast<int>(opt_.allowed.size()) != n_)
        throw Error("allowed-value list does not match source domain");
      for (int v = 0; v < n_; ++v) {
        std::vector<std::uint64_t> mask(words_, 0);
        for (int a : opt_.allowed[v])
          if (a >= 0 && a < m_) mask[a / 64] |= std::uint64_t{1} << (a % 64);
        for (int w = 0; w < words_; ++w) word(v, w) &= mask[w];
      }
    }
    assigned_.assign(n_, -1);
    inverse_.assign(m_, -1);
  }

  void run(const std::function<bool(const Mapping&)>& visit) {
    visit_ = &visit;
    if (opt_.kind != MapKind::homomorphism && n_ > m_) return;
    for (int v = 0; v < n_; ++v)
      if (count(v) == 0) return;
    std::deque<int> queue(constraints_.size());
    std::iota(queue.begin(), queue.end(), 0);
    if (!propagate(queue)) return;
    dfs(0);
  }

 private:
  std::uint64_t& word(int v, int w) { return domains_[static_cast<std::size_t>(v) * words_ + w]; }
  bool test(int v, int a) const {
    return (domains_[static_cast<std::size_t>(v) * words_ + a / 64] >> (a % 64)) & 1;
  }
  void set_bit(int v, int a) { word(v, a / 64) |= std::uint64_t{1} << (a % 64); }
  int count(int v) const {
    int c = 0;
    for (int w = 0; w < words_; ++w)
      c += std::popcount(domains_[static_cast<std::size_t>(v) * words_ + w]);
    return c;
  }

  void assign_word(int v, int w, std::uint64_t value) {
    auto& cell = word(v, w);
    if (cell == value) return;
    trail_.push_back({static_cast<std::size_t>(v) * words_ + w, cell});
    cell = value;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      domains_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  /// Narrows the domains in the scope of c to values with a supporting
  /// target tuple. Returns false on a wipe-out.
  bool revise(int c, std::deque<int>& queue) {
    const auto& con = constraints_[c];
    const auto& scope = con.scope;
    const int arity = static_cast<int>(scope.size());
    support_.assign(static_cast<std::size_t>(arity) * words_, 0);
    for (const auto& t : dst_rels_[con.relation]->tuples()) {
      bool ok = true;
      for (int p = 0; p < arity && ok; ++p) {
        if (!test(scope[p], t[p])) ok = false;
        for (int q = 0; q < p && ok; ++q)
          if (scope[q] == scope[p] && t[q] != t[p]) ok = false;
      }
      if (!ok) continue;
      for (int p = 0; p < arity; ++p)
        support_[static_cast<std::size_t>(p) * words_ + t[p] / 64] |= std::uint64_t{1}
                                                                      << (t[p] % 64);
    }
    for (int p = 0; p < arity; ++p) {
      int v = scope[p];
      bool changed = false, empty = true;
      for (int w = 0; w < words_; ++w) {
        auto narrowed = word(v, w) & support_[static_cast<std::size_t>(p) * words_ + w];
        if (narrowed != word(v, w)) {
          assign_word(v, w, narrowed);
          changed = true;
        }
        if (narrowed) empty = false;
      }
      if (empty) return false;
      if (changed)
        for (int other : var_constraints_[v])
          if (other != c) queue.push_back(other);
    }
    return true;
  }

  bool propagate(std::deque<int>& queue) {
    std::vector<char> queued(constraints_.size(), 0);
    for (int c : queue) queued[c] = 1;
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      queued[c] = 0;
      std::deque<int> fresh;
      if (!revise(c, fresh)) return false;
      for (int d : fresh)
        if (!queued[d]) {
          queued[d] = 1;
          queue.push_back(d);
        }
    }
    return true;
  }

  /// Strongness: every target tuple inside the current image must have its
  /// preimage in the source relation.
  bool strong_ok(int value) const {
    for (std::size_t r = 0; r < dst_rels_.size(); ++r) {
      const auto& tuples = dst_rels_[r]->tuples();
      for (int t : incidence_[r][value]) {
        Tuple pre(tuples[t].size());
        bool inside = true;
        for (std::size_t p = 0; p < pre.size() && inside; ++p) {
          pre[p] = inverse_[tuples[t][p]];
          inside = pre[p] >= 0;
        }
        if (inside && !src_tables_[r].contains(pre)) return false;
      }
    }
    return true;
  }

  int choose_variable(int depth) const {
    if (!opt_.first_fail) return depth < n_ ? depth : -1;
    int best = -1, best_count = 0;
    for (int v = 0; v < n_; ++v) {
      if (assigned_[v] >= 0) continue;
      int c = count(v);
      if (best < 0 || c < best_count) {
        best = v;
        best_count = c;
      }
    }
    return best;
  }

  bool dfs(int depth) {
    int v = choose_variable(depth);
    if (v < 0) {
      Mapping m{assigned_};
      return (*visit_)(m);
    }
    std::vector<int> values;
    for (int a = 0; a < m_; ++a)
      if (test(v, a)) values.push_back(a);
    if (opt_.value_order == ValueOrder::descending) std::reverse(values.begin(), values.end());

    const bool injective = opt_.kind != MapKind::homomorphism;
    for (int a : values) {
      if (injective && inverse_[a] >= 0) continue;
      auto mark = trail_.size();
      std::deque<int> queue;
      for (int w = 0; w < words_; ++w)
        assign_word(v, w, w == a / 64 ? std::uint64_t{1} << (a % 64) : 0);
      for (int c : var_constraints_[v]) queue.push_back(c);
      bool ok = true;
      if (injective) {
        for (int u = 0; u < n_ && ok; ++u) {
          if (u == v || assigned_[u] >= 0 || !test(u, a)) continue;
          assign_word(u, a / 64, word(u, a / 64) & ~(std::uint64_t{1} << (a % 64)));
          if (count(u) == 0) ok = false;
          for (int c : var_constraints_[u]) queue.push_back(c);
        }
      }
      assigned_[v] = a;
      if (injective) inverse_[a] = v;
      if (ok && opt_.kind == MapKind::embedding) ok = strong_ok(a);
      if (ok) ok = propagate(queue);
      bool keep_going = true;
      if (ok) keep_going = dfs(depth + 1);
      assigned_[v] = -1;
      if (injective) inverse_[a] = -1;
      undo(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  const SearchOptions& opt_;
  int n_, m_, words_;
  std::vector<const Relation*> dst_rels_;
  std::vector<MembershipTable> src_tables_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<int>> var_constraints_;
  std::vector<std::vector<std::vector<int>>> incidence_;
  std::vector<std::uint64_t> domains_, support_;
  std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
  std::vector<int> assigned_, inverse_;
  const std::function<bool(const Mapping&)>* visit_ = nullptr;
};

std::vector<Mapping> collect(const FinStructure& source, const FinStructure& target,
                             const SearchOptions& options, std::optional<std::size_t> limit) {
  std::vector<Mapping> out;
  if (limit && *limit == 0) return out;
  search_mappings(source, target, options, [&](const Mapping& m) {
    out.push_back(m);
    return !limit || out.size() < *limit;
  });
  return out;
}

}  // namespace

void search_mappings(const FinStructure& source, const FinStructure& target,
                     const SearchOptions& options,
                     const std::function<bool(const Mapping&)>& visit) {
  Kernel kernel(source, target, options);
  kernel.run(visit);
}

std::optional<Mapping> find_mapping(const FinStructure& source, const FinStructure& target,
                                    const SearchOptions& options) {
  std::optional<Mapping> found;
  search_mappings(source, target, options, [&](const Mapping& m) {
    found = m;
    return false;
  });
  return found;
}

std::optional<Mapping> find_homomorphism(const FinStructure& source,
                                         const FinStructure& target) {
  return find_mapping(source, target, {});
}

bool homomorphism_exists(const FinStructure& source, const FinStructure& target) {
  SearchOptions opt;
  opt.first_fail = true;
  return find_mapping(source, target, opt).has_value();
}

std::vector<Mapping> enumerate_homomorphisms(const FinStructure& source,
                                             const FinStructure& target,
                                             std::optional<std::size_t> limit) {
  return collect(source, target, {}, limit);
}

std::optional<Mapping> find_embedding(const FinStructure& source, const FinStructure& target) {
  SearchOptions opt;
  opt.kind = MapKind::embedding;
  return find_mapping(source, target, opt);
}

std::vector<Mapping> enumerate_embeddings(const FinStructure& source,
                                          const FinStructure& target,
                                          std::optional<std::size_t> limit) {
  SearchOptions opt;
  opt.kind = MapKind::embedding;
  return collect(source, target, opt, limit);
}

std::optional<Mapping> find_isomorphism(const FinStructure& a, const FinStructure& b) {
  if (!a.signature().same_vocabulary(b.signature())) throw Error("signature mismatch");
  if (a.size() != b.size()) return std::nullopt;
  for (const auto& sym : a.signature())
    if (a.relation(sym.name).size() != b.relation(sym.name).size()) return std::nullopt;
  return find_embedding(a, b);
}

std::vector<Mapping> automorphisms(const FinStructure& s, const Caps& caps) {
  if (static_cast<std::size_t>(s.size()) > caps.automorphism_domain)
    throw CapacityError("automorphism enumeration needs domain <= " +
                        std::to_string(caps.automorphism_domain));
  return enumerate_embeddings(s, s);
}

int OrbitPartition::orbit_of(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != k) return -1;
  for (std::size_t i = 0; i < orbits.size(); ++i)
    if (std::binary_search(orbits[i].begin(), orbits[i].end(),
                           Tuple(tuple.begin(), tuple.end())))
      return static_cast<int>(i);
  return -1;
}

OrbitPartition orbits_under(const std::vector<Mapping>& group, int n, int k, const Caps& caps) {
  if (k < 1) throw Error("orbit arity must be >= 1");
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<std::size_t>(n);
    if (total > caps.orbit_tuples)
      throw CapacityError("orbit computation needs n^k <= " + std::to_string(caps.orbit_tuples));
  }
  OrbitPartition part;
  part.k = k;
  std::vector<char> seen(total, 0);
  Tuple t(k, 0);
  for (std::size_t index = 0; index < total; ++index) {
    std::size_t rest = index;
    for (int p = k - 1; p >= 0; --p) {
      t[p] = static_cast<int>(rest % n);
      rest /= n;
    }
    if (seen[index]) continue;
    std::vector<Tuple> orbit;
    for (const auto& g : group) {
      auto image = image_of(g, t);
      auto& flag = seen[power_index(image, n)];
      if (!flag) {
        flag = 1;
        orbit.push_back(std::move(image));
      }
    }
    if (orbit.empty()) {  // empty group: treat as trivial
      seen[index] = 1;
      orbit.push_back(t);
    }
    std::sort(orbit.begin(), orbit.end());
    part.representatives.push_back(orbit.front());
    part.orbits.push_back(std::move(orbit));
  }
  return part;
}

OrbitPartition orbits(const FinStructure& s, int k, const Caps& caps) {
  return orbits_under(automorphisms(s, caps), s.size(), k, caps);
}

}  // namespace omegacore
