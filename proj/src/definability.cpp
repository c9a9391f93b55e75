#include "omegacore/definability.hpp"

#include <map>
#include <numeric>
#include <set>

#include "omegacore/cores.hpp"

namespace omegacore {

namespace {

std::map<std::string, int> variable_index(const PPFormula& phi) {
  std::map<std::string, int> index;
  for (const auto* list : {&phi.free_vars, &phi.bound_vars})
    for (const auto& v : *list) {
      if (v.empty()) throw Error("empty variable name");
      if (!index.emplace(v, static_cast<int>(index.size())).second)
        throw Error("variable " + v + " declared twice");
    }
  return index;
}

int lookup(const std::map<std::string, int>& index, const std::string& v) {
  auto it = index.find(v);
  if (it == index.end()) throw Error("undeclared variable " + v);
  return it->second;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

void check_well_formed(const PPFormula& phi, const Signature& signature) {
  auto index = variable_index(phi);
  for (const auto& atom : phi.atoms) {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      auto s = signature.index_of(rel->symbol);
      if (!s) throw Error("unknown symbol " + rel->symbol);
      if (static_cast<int>(rel->args.size()) != signature[*s].arity)
        throw Error("atom " + rel->symbol + " has wrong number of arguments");
      for (const auto& v : rel->args) lookup(index, v);
    } else {
      const auto& eq = std::get<EqAtom>(atom);
      lookup(index, eq.lhs);
      lookup(index, eq.rhs);
    }
  }
}

void check_well_formed(const EPFormula& psi, const Signature& signature) {
  if (psi.disjuncts.empty()) throw Error("ep formula needs at least one disjunct");
  for (const auto& d : psi.disjuncts) {
    if (d.free_vars != psi.disjuncts.front().free_vars)
      throw Error("ep disjuncts must share their free variables");
    check_well_formed(d, signature);
  }
}

Relation evaluate_pp(const PPFormula& phi, const FinStructure& s) {
  check_well_formed(phi, s.signature());
  auto index = variable_index(phi);
  const int vars = static_cast<int>(index.size());

  // Equality atoms identify variables; each class becomes one element of
  // the canonical instance.
  std::vector<int> parent(vars);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& atom : phi.atoms)
    if (const auto* eq = std::get_if<EqAtom>(&atom))
      parent[find_root(parent, lookup(index, eq->lhs))] = find_root(parent, lookup(index, eq->rhs));
  std::vector<int> element(vars, -1);
  int classes = 0;
  std::vector<int> root_element(vars, -1);
  for (int v = 0; v < vars; ++v) {
    int r = find_root(parent, v);
    if (root_element[r] < 0) root_element[r] = classes++;
    element[v] = root_element[r];
  }

  std::map<std::string, std::vector<Tuple>> tuples;
  for (const auto& sym : s.signature()) tuples[sym.name];
  for (const auto& atom : phi.atoms)
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      Tuple t;
      for (const auto& v : rel->args) t.push_back(element[lookup(index, v)]);
      tuples[rel->symbol].push_back(std::move(t));
    }
  std::vector<Relation> rels;
  for (const auto& sym : s.signature()) rels.emplace_back(sym.arity, tuples[sym.name]);
  FinStructure instance(s.signature(), classes, std::move(rels));

  const int k = static_cast<int>(phi.free_vars.size());
  std::vector<int> free_element(k);
  for (int i = 0; i < k; ++i) free_element[i] = element[lookup(index, phi.free_vars[i])];

  std::vector<Tuple> result;
  const int n = s.size();
  if (n == 0 && k > 0) return Relation(k, {});
  Tuple t(k, 0);
  SearchOptions opt;
  opt.first_fail = true;
  while (true) {
    bool consistent = true;
    opt.allowed.assign(classes, {});
    for (int c = 0; c < classes; ++c) {
      opt.allowed[c].resize(n);
      std::iota(opt.allowed[c].begin(), opt.allowed[c].end(), 0);
    }
    std::vector<int> pinned(classes, -1);
    for (int i = 0; i < k && consistent; ++i) {
      int c = free_element[i];
      if (pinned[c] >= 0 && pinned[c] != t[i]) consistent = false;
      pinned[c] = t[i];
      opt.allowed[c] = {t[i]};
    }
    if (consistent && find_mapping(instance, s, opt))
      result.push_back(t);
    int p = k - 1;
    while (p >= 0 && ++t[p] == n) t[p--] = 0;
    if (p < 0) break;
  }
  return Relation(k, std::move(result));
}

Relation evaluate_ep(const EPFormula& psi, const FinStructure& s) {
  check_well_formed(psi, s.signature());
  std::vector<Tuple> all;
  for (const auto& d : psi.disjuncts)
    for (const auto& t : evaluate_pp(d, s)) all.push_back(t);
  return Relation(static_cast<int>(psi.disjuncts.front().free_vars.size()), std::move(all));
}

PPFormula diagram_formula(const FinStructure& s, std::span<const int> distinguished) {
  PPFormula phi;
  std::vector<std::string> name(s.size());
  for (std::size_t i = 0; i < distinguished.size(); ++i) {
    int e = distinguished[i];
    if (e < 0 || e >= s.size()) throw Error("distinguished element out of domain");
    phi.free_vars.push_back("x" + std::to_string(i));
    if (name[e].empty()) {
      name[e] = phi.free_vars.back();
    } else {
      phi.atoms.push_back(EqAtom{name[e], phi.free_vars.back()});
    }
  }
  for (int e = 0; e < s.size(); ++e)
    if (name[e].empty()) {
      name[e] = "y" + std::to_string(phi.bound_vars.size());
      phi.bound_vars.push_back(name[e]);
    }
  for (std::size_t r = 0; r < s.signature().size(); ++r)
    for (const auto& t : s.relation(r)) {
      RelAtom atom{s.signature()[r].name, {}};
      for (int e : t) atom.args.push_back(name[e]);
      phi.atoms.push_back(std::move(atom));
    }
  return phi;
}

PPVerdict canonical_pp_check(const FinStructure& s, const Relation& r, const Caps& caps) {
  if (r.empty()) throw Error("pp-definability of the empty relation is not supported");
  const int n = s.size();
  const int k = r.arity();
  for (const auto& t : r)
    for (int v : t)
      if (v < 0 || v >= n) throw Error("relation tuple entry out of domain");

  PPVerdict verdict;
  // pp-definable relations are preserved by every automorphism
  if (static_cast<std::size_t>(n) <= caps.automorphism_domain) {
    for (const auto& alpha : automorphisms(s, caps))
      for (const auto& t : r) {
        auto image = image_of(alpha, t);
        if (!r.contains(image)) {
          verdict.verdict = Definability::not_definable;
          verdict.refuting_tuple = std::move(image);
          verdict.refuting_automorphism = alpha;
          return verdict;
        }
      }
  }

  const int m = static_cast<int>(r.size());
  FinStructure power;
  try {
    power = direct_power(s, m, caps);
  } catch (const CapacityError&) {
    return verdict;  // unknown
  }

  std::vector<int> columns(k);
  for (int i = 0; i < k; ++i) {
    Tuple coords(m);
    for (int j = 0; j < m; ++j) coords[j] = r.tuples()[j][i];
    columns[i] = power_index(coords, n);
  }

  // R is pp-definable iff no homomorphism power -> s sends the column tuple
  // outside R.
  SearchOptions opt;
  opt.first_fail = true;
  std::vector<int> everything(n);
  std::iota(everything.begin(), everything.end(), 0);
  Tuple t(k, 0);
  while (true) {
    if (!r.contains(t)) {
      opt.allowed.assign(power.size(), everything);
      bool consistent = true;
      for (int i = 0; i < k && consistent; ++i) {
        auto& slot = opt.allowed[columns[i]];
        if (slot.size() == 1 && slot.front() != t[i]) consistent = false;
        slot = {t[i]};
      }
      if (consistent && find_mapping(power, s, opt)) {
        verdict.verdict = Definability::not_definable;
        verdict.refuting_tuple = t;
        return verdict;
      }
    }
    int p = k - 1;
    while (p >= 0 && ++t[p] == n) t[p--] = 0;
    if (p < 0) break;
  }
  verdict.verdict = Definability::definable;
  verdict.witness = diagram_formula(power, columns);
  return verdict;
}

PPFormula orbit_pp_formula(const FinStructure& core, std::span<const int> t, const Caps& caps) {
  if (!is_core(core, caps).is_core) throw Error("orbit_pp_formula requires a core");
  return diagram_formula(core, t);
}

}  // namespace omegacore
