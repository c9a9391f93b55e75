#include "omegacore/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

#include "omegacore/cores.hpp"
#include "omegacore/definability.hpp"

namespace omegacore {

void check_constant_spec(const ConstantSpec& spec, const Caps& caps) {
  std::set<std::string> names;
  for (const auto& [symbol, element] : spec.constants) {
    if (spec.base.signature().index_of(symbol))
      throw Error("constant symbol " + symbol + " clashes with the base signature");
    if (!names.insert(symbol).second) throw Error("constant symbol " + symbol + " used twice");
    if (element < 0 || element >= spec.base.size())
      throw Error("constant " + symbol + " names an element outside the domain");
  }
  if (!is_core(spec.base, caps).is_core) throw Error("constant reduction needs a core template");
}

FinStructure expanded_template(const ConstantSpec& spec, std::size_t count) {
  FinStructure t = spec.base;
  for (std::size_t i = 0; i < count; ++i)
    t = expand(t, spec.constants[i].first, 1, {{spec.constants[i].second}});
  return t;
}

std::vector<int> orbit_of_element(const FinStructure& s, int c, const Caps& caps) {
  if (c < 0 || c >= s.size()) throw Error("element out of domain");
  std::set<int> orbit;
  for (const auto& alpha : automorphisms(s, caps)) orbit.insert(alpha(c));
  return {orbit.begin(), orbit.end()};
}

std::string orbit_symbol(const std::string& singleton_symbol) {
  return "orbit(" + singleton_symbol + ")";
}

SingletonReduction reduce_singleton(const FinStructure& instance, const FinStructure& current,
                                    const std::string& symbol, int c, const Caps& caps) {
  auto index = instance.signature().index_of(symbol);
  if (!index) throw Error("symbol " + symbol + " not in the instance signature");
  if (instance.signature()[*index].arity != 1) throw Error("symbol " + symbol + " is not unary");

  SingletonReduction out;
  out.orbit = orbit_of_element(current, c, caps);
  const auto p_name = orbit_symbol(symbol);
  std::vector<Tuple> p_tuples;
  for (int e : out.orbit) p_tuples.push_back({e});
  out.target = expand(current, p_name, 1, p_tuples);

  std::vector<int> constrained;
  for (const auto& t : instance.relation(*index)) constrained.push_back(t[0]);

  // constrained variables collapse onto the least of them
  const int n = instance.size();
  std::vector<int> rep(n);
  for (int v = 0; v < n; ++v) rep[v] = v;
  for (int v : constrained) rep[v] = constrained.front();
  out.merge.values.assign(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (rep[v] == v) out.merge.values[v] = next++;
  for (int v = 0; v < n; ++v) out.merge.values[v] = out.merge.values[rep[v]];
  if (!constrained.empty()) out.merged = out.merge(constrained.front());

  std::vector<Symbol> symbols;
  std::vector<Relation> rels;
  for (std::size_t i = 0; i < instance.signature().size(); ++i) {
    if (i == *index) continue;
    symbols.push_back(instance.signature()[i]);
    std::vector<Tuple> tuples;
    for (const auto& t : instance.relation(i)) tuples.push_back(image_of(out.merge, t));
    rels.emplace_back(instance.signature()[i].arity, std::move(tuples));
  }
  symbols.push_back({p_name, 1});
  std::vector<Tuple> p_constraint;
  if (out.merged) p_constraint.push_back({*out.merged});
  rels.emplace_back(1, std::move(p_constraint));
  out.instance = FinStructure(Signature(std::move(symbols)), next, std::move(rels));
  if (!out.instance.signature().same_vocabulary(out.target.signature()))
    throw Error("instance and template signatures diverge after reduction");
  return out;
}

namespace {

/// Replaces the orbit constraint on `merged` by the pp definition of the
/// orbit in `level` (its atomic diagram with the free variable on c). New
/// variables are appended after the existing ones.
FinStructure unfold_orbit(const SingletonReduction& red, const FinStructure& level,
                          const std::string& p_name, int c, const Caps& caps) {
  const auto& inst = red.instance;
  std::map<std::string, std::vector<Tuple>> tuples;
  for (std::size_t i = 0; i < inst.signature().size(); ++i)
    if (inst.signature()[i].name != p_name) tuples[inst.signature()[i].name] = inst.relation(i).tuples();
  int size = inst.size();
  if (red.merged) {
    const int at[] = {c};
    auto phi = orbit_pp_formula(level, at, caps);
    std::map<std::string, int> var;
    var[phi.free_vars.front()] = *red.merged;
    for (const auto& y : phi.bound_vars) var[y] = size++;
    for (const auto& atom : phi.atoms) {
      const auto* rel = std::get_if<RelAtom>(&atom);
      if (!rel) throw Error("unexpected equality in a single-element orbit formula");
      Tuple t;
      for (const auto& a : rel->args) t.push_back(var.at(a));
      tuples[rel->symbol].push_back(std::move(t));
    }
  }
  RawStructure raw{level.signature(), size, {}};
  for (const auto& sym : level.signature()) {
    auto& list = tuples[sym.name];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    raw.relations[sym.name] = list;
  }
  return FinStructure::from(raw);
}

}  // namespace

std::optional<Mapping> solve_with_constants(const ConstantSpec& spec, const FinStructure& instance,
                                            const Caps& caps) {
  check_constant_spec(spec, caps);
  const std::size_t k = spec.constants.size();
  std::vector<FinStructure> levels;
  for (std::size_t i = 0; i <= k; ++i) levels.push_back(expanded_template(spec, i));
  if (!instance.signature().same_vocabulary(levels[k].signature()))
    throw Error("instance signature does not match the expanded template");
  if (k == 0) return find_homomorphism(instance, spec.base);

  // reductions[i] removes constant i (0-based) from the level-(i+1) instance
  std::vector<SingletonReduction> reductions(k);
  FinStructure current = instance;
  for (std::size_t i = k; i-- > 0;) {
    const auto& [symbol, c] = spec.constants[i];
    reductions[i] = reduce_singleton(current, levels[i], symbol, c, caps);
    current = i > 0 ? unfold_orbit(reductions[i], levels[i], orbit_symbol(symbol), c, caps)
                    : reductions[i].instance;
  }

  auto h = find_homomorphism(current, reductions[0].target);
  if (!h) return std::nullopt;

  Mapping assignment = *h;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& red = reductions[i];
    assignment.values.resize(red.instance.size());  // drop unfolded helpers
    if (red.merged) {
      const int value = assignment(*red.merged);
      const int c = spec.constants[i].second;
      std::optional<Mapping> alpha;
      for (const auto& a : automorphisms(levels[i], caps))
        if (a(value) == c) {
          alpha = a;
          break;
        }
      if (!alpha) throw Error("solution left the orbit of a constant");
      assignment = compose(*alpha, assignment);
    }
    assignment = compose(assignment, red.merge);
  }
  if (!classify(instance, levels[k], assignment).is_homomorphism)
    throw Error("lifted assignment does not solve the instance");
  return assignment;
}

namespace {

struct BruteForce {
  const FinStructure& target;
  const FinStructure& instance;
  std::vector<std::pair<const Relation*, const Relation*>> pairs;  // instance, target
  long long total = 1;
  int d = 0, v = 0;

  BruteForce(const FinStructure& t, const FinStructure& i, const Caps& caps)
      : target(t), instance(i), d(t.size()), v(i.size()) {
    if (!t.signature().same_vocabulary(i.signature())) throw Error("signature mismatch");
    if (static_cast<std::size_t>(v) > caps.brute_force_variables)
      throw CapacityError("brute force needs at most " +
                          std::to_string(caps.brute_force_variables) + " variables");
    for (int x = 0; x < v; ++x) {
      total *= d;
      if (static_cast<std::size_t>(total) > caps.brute_force_maps)
        throw CapacityError("brute force enumeration exceeds cap");
    }
    for (std::size_t s = 0; s < i.signature().size(); ++s)
      pairs.emplace_back(&i.relation(s), &t.relation(i.signature()[s].name));
  }

  Mapping decode(long long index) const {
    Mapping m{std::vector<int>(v)};
    for (int x = v - 1; x >= 0; --x) {
      m.values[x] = static_cast<int>(index % d);
      index /= d;
    }
    return m;
  }

  bool satisfies(const Mapping& m) const {
    for (const auto& [src, dst] : pairs)
      for (const auto& t : *src)
        if (!dst->contains(image_of(m, t))) return false;
    return true;
  }
};

}  // namespace

std::optional<Mapping> brute_force_solve_serial(const FinStructure& target,
                                                const FinStructure& instance, const Caps& caps) {
  BruteForce bf(target, instance, caps);
  for (long long i = 0; i < bf.total; ++i) {
    auto m = bf.decode(i);
    if (bf.satisfies(m)) return m;
  }
  return std::nullopt;
}

std::optional<Mapping> brute_force_solve(const FinStructure& target, const FinStructure& instance,
                                         const Caps& caps) {
  BruteForce bf(target, instance, caps);
  const long long total = bf.total;
  std::atomic<long long> best{total};
#pragma omp parallel for schedule(dynamic, 256)
  for (long long i = 0; i < total; ++i) {
    if (i > best.load(std::memory_order_relaxed)) continue;
    if (!bf.satisfies(bf.decode(i))) continue;
    long long seen = best.load();
    while (i < seen && !best.compare_exchange_weak(seen, i)) {
    }
  }
  if (best == total) return std::nullopt;
  return bf.decode(best);
}

}  // namespace omegacore
