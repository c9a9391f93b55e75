#include "omegacore/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace omegacore::io {

namespace {

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "/" + key;
}
std::string join(const std::string& where, std::size_t i) { return join(where, std::to_string(i)); }

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where, std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  return j;
}

int integer_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where, "expected an integer");
  return j.get<int>();
}

std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where, "expected a string");
  return j.get<std::string>();
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw InputError(where, "unknown key \"" + k + "\"");
  }
}

/// Names listed in `j`, unique; returns name -> index.
std::vector<std::string> name_list(const Json& j, const std::string& where,
                                   std::map<std::string, int>& index) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
    const auto& e = j[i];
    if (!e.is_string() && !e.is_number_integer())
      throw InputError(join(where, i), "element names are strings or integers");
    auto n = name_of(e);
    if (!index.emplace(n, static_cast<int>(names.size())).second)
      throw InputError(join(where, i), "duplicate name " + n);
    names.push_back(n);
  }
  return names;
}

int lookup(const std::map<std::string, int>& index, const Json& e, const std::string& where) {
  auto it = index.find(name_of(e));
  if (it == index.end()) throw InputError(where, "unknown name " + name_of(e));
  return it->second;
}

}  // namespace

std::string name_of(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

int NamedStructure::element(const Json& j, const std::string& where) const {
  if (named) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name_of(j)) return static_cast<int>(i);
    throw InputError(where, "unknown element " + name_of(j));
  }
  int v = integer_at(j, where);
  if (v < 0 || v >= structure.size()) throw InputError(where, "element out of domain");
  return v;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(source + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

std::string dump(const Json& j) { return j.dump(); }

NamedStructure parse_structure(const Json& j, const std::string& where) {
  only_keys(j, {"signature", "domain", "relations"}, where);
  const auto& sig_j = member(j, "signature", where);
  if (!sig_j.is_object()) throw InputError(join(where, "signature"), "expected an object");
  std::vector<Symbol> symbols;
  for (const auto& [name, arity] : sig_j.items()) {
    int a = integer_at(arity, join(join(where, "signature"), name));
    if (a < 1) throw InputError(join(join(where, "signature"), name), "arity must be >= 1");
    if (name.empty()) throw InputError(join(where, "signature"), "empty symbol name");
    symbols.push_back({name, a});
  }

  NamedStructure out;
  RawStructure raw{Signature(std::move(symbols)), 0, {}};
  std::map<std::string, int> index;
  const auto& dom = member(j, "domain", where);
  if (dom.is_array()) {
    out.names = name_list(dom, join(where, "domain"), index);
    out.named = true;
    raw.domain_size = static_cast<int>(out.names.size());
  } else {
    raw.domain_size = integer_at(dom, join(where, "domain"));
    if (raw.domain_size < 0) throw InputError(join(where, "domain"), "negative domain size");
    for (int i = 0; i < raw.domain_size; ++i) out.names.push_back(std::to_string(i));
  }

  const auto& rels = member(j, "relations", where);
  if (!rels.is_object()) throw InputError(join(where, "relations"), "expected an object");
  for (const auto& [name, tuples] : rels.items()) {
    auto here = join(join(where, "relations"), name);
    if (!raw.signature.index_of(name)) throw InputError(here, "symbol not in signature");
    auto& list = raw.relations[name];
    for (std::size_t t = 0; t < array_at(tuples, here).size(); ++t) {
      auto at = join(here, t);
      Tuple tuple;
      for (std::size_t i = 0; i < array_at(tuples[t], at).size(); ++i) {
        const auto& e = tuples[t][i];
        tuple.push_back(out.named ? lookup(index, e, join(at, i)) : integer_at(e, join(at, i)));
      }
      list.push_back(std::move(tuple));
    }
  }
  auto violations = validate(raw);
  if (!violations.empty()) {
    std::string msg = violations.front();
    for (std::size_t i = 1; i < violations.size(); ++i) msg += "; " + violations[i];
    throw InputError(where, msg);
  }
  out.structure = FinStructure::from(raw);
  return out;
}

Json structure_to_json(const FinStructure& s) {
  NamedStructure n{s, {}, false};
  return structure_to_json(n);
}

Json structure_to_json(const NamedStructure& ns) {
  const auto& s = ns.structure;
  auto entry = [&](int v) -> Json {
    if (ns.named) return ns.names[v];
    return v;
  };
  Json sig = Json::object();
  for (const auto& sym : s.signature()) sig[sym.name] = sym.arity;
  Json rels = Json::object();
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    Json tuples = Json::array();
    for (const auto& t : s.relation(i)) {
      Json row = Json::array();
      for (int v : t) row.push_back(entry(v));
      tuples.push_back(std::move(row));
    }
    rels[s.signature()[i].name] = std::move(tuples);
  }
  Json out = Json::object();
  out["signature"] = std::move(sig);
  if (ns.named)
    out["domain"] = ns.names;
  else
    out["domain"] = s.size();
  out["relations"] = std::move(rels);
  return out;
}

std::string canonical_text(const FinStructure& s) { return dump(structure_to_json(s)); }

Json mapping_to_json(const Mapping& m) { return Json{{"values", m.values}}; }

Mapping parse_mapping(const Json& j, const std::string& where) {
  const auto& values = member(j, "values", where);
  Mapping m;
  for (std::size_t i = 0; i < array_at(values, join(where, "values")).size(); ++i)
    m.values.push_back(integer_at(values[i], join(join(where, "values"), i)));
  return m;
}

Json formula_to_json(const PPFormula& phi) {
  Json atoms = Json::array();
  for (const auto& atom : phi.atoms) {
    if (const auto* r = std::get_if<RelAtom>(&atom))
      atoms.push_back(Json{{"rel", r->symbol}, {"args", r->args}});
    else {
      const auto& e = std::get<EqAtom>(atom);
      atoms.push_back(Json{{"eq", {e.lhs, e.rhs}}});
    }
  }
  return Json{{"free", phi.free_vars}, {"bound", phi.bound_vars}, {"atoms", std::move(atoms)}};
}

PPFormula parse_formula(const Json& j, const std::string& where) {
  only_keys(j, {"free", "bound", "atoms"}, where);
  PPFormula phi;
  auto strings = [&](const char* key, std::vector<std::string>& into) {
    if (!j.contains(key)) return;
    const auto& a = array_at(j[key], join(where, key));
    for (std::size_t i = 0; i < a.size(); ++i)
      into.push_back(string_at(a[i], join(join(where, key), i)));
  };
  strings("free", phi.free_vars);
  strings("bound", phi.bound_vars);
  const auto& atoms = array_at(member(j, "atoms", where), join(where, "atoms"));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto at = join(join(where, "atoms"), i);
    const auto& a = atoms[i];
    if (a.is_object() && a.contains("rel")) {
      only_keys(a, {"rel", "args"}, at);
      RelAtom r{string_at(a["rel"], join(at, "rel")), {}};
      const auto& args = array_at(member(a, "args", at), join(at, "args"));
      for (std::size_t k = 0; k < args.size(); ++k)
        r.args.push_back(string_at(args[k], join(join(at, "args"), k)));
      phi.atoms.emplace_back(std::move(r));
    } else if (a.is_object() && a.contains("eq")) {
      only_keys(a, {"eq"}, at);
      const auto& eq = array_at(a["eq"], join(at, "eq"));
      if (eq.size() != 2) throw InputError(join(at, "eq"), "equality takes two variables");
      phi.atoms.emplace_back(EqAtom{string_at(eq[0], join(at, "eq/0")),
                                    string_at(eq[1], join(at, "eq/1"))});
    } else {
      throw InputError(at, "atom must have \"rel\" or \"eq\"");
    }
  }
  return phi;
}

Json formula_to_json(const EPFormula& psi) {
  Json d = Json::array();
  for (const auto& phi : psi.disjuncts) d.push_back(formula_to_json(phi));
  return Json{{"disjuncts", std::move(d)}};
}

EPFormula parse_ep_formula(const Json& j, const std::string& where) {
  EPFormula psi;
  const auto& d = array_at(member(j, "disjuncts", where), join(where, "disjuncts"));
  for (std::size_t i = 0; i < d.size(); ++i)
    psi.disjuncts.push_back(parse_formula(d[i], join(join(where, "disjuncts"), i)));
  return psi;
}

Json core_result_to_json(const CoreResult& r) {
  return Json{{"core", structure_to_json(r.core)},
              {"inclusion", r.inclusion},
              {"retraction", mapping_to_json(r.retraction)}};
}

ClassSpec parse_class_spec(const Json& j, const std::string& where) {
  only_keys(j, {"signature", "forbidden", "graph_mode"}, where);
  ClassSpec spec;
  const auto& sig_j = member(j, "signature", where);
  if (!sig_j.is_object()) throw InputError(join(where, "signature"), "expected an object");
  std::vector<Symbol> symbols;
  for (const auto& [name, arity] : sig_j.items())
    symbols.push_back({name, integer_at(arity, join(join(where, "signature"), name))});
  try {
    spec.signature = Signature(std::move(symbols));
  } catch (const Error& e) {
    throw InputError(join(where, "signature"), e.what());
  }
  if (j.contains("forbidden")) {
    const auto& f = array_at(j["forbidden"], join(where, "forbidden"));
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto at = join(join(where, "forbidden"), i);
      only_keys(f[i], {"structure", "mode"}, at);
      ForbiddenPattern p{parse_structure(member(f[i], "structure", at), join(at, "structure")).structure,
                         PatternMode::induced};
      if (f[i].contains("mode")) {
        auto mode = string_at(f[i]["mode"], join(at, "mode"));
        if (mode == "subgraph")
          p.mode = PatternMode::subgraph;
        else if (mode != "induced")
          throw InputError(join(at, "mode"), "mode is \"induced\" or \"subgraph\"");
      }
      spec.forbidden.push_back(std::move(p));
    }
  }
  if (j.contains("graph_mode")) {
    if (!j["graph_mode"].is_boolean()) throw InputError(join(where, "graph_mode"), "expected a boolean");
    spec.graph_mode = j["graph_mode"].get<bool>();
  }
  try {
    check_class_spec(spec);
  } catch (const Error& e) {
    throw InputError(where, e.what());
  }
  return spec;
}

Json class_spec_to_json(const ClassSpec& spec) {
  Json sig = Json::object();
  for (const auto& sym : spec.signature) sig[sym.name] = sym.arity;
  Json forbidden = Json::array();
  for (const auto& p : spec.forbidden)
    forbidden.push_back(Json{{"structure", structure_to_json(p.structure)},
                             {"mode", p.mode == PatternMode::induced ? "induced" : "subgraph"}});
  return Json{{"signature", std::move(sig)}, {"forbidden", std::move(forbidden)},
              {"graph_mode", spec.graph_mode}};
}

Json amalgam_case_to_json(const AmalgamCase& c) {
  return Json{{"A", structure_to_json(c.a)},
              {"B1", structure_to_json(c.b1)},
              {"B2", structure_to_json(c.b2)},
              {"e1", mapping_to_json(c.e1)},
              {"e2", mapping_to_json(c.e2)}};
}

NamedConstantSpec parse_constant_spec(const Json& j, const std::string& where) {
  only_keys(j, {"base", "constants"}, where);
  NamedConstantSpec out;
  out.base = parse_structure(member(j, "base", where), join(where, "base"));
  out.spec.base = out.base.structure;
  const auto& cs = array_at(member(j, "constants", where), join(where, "constants"));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto at = join(join(where, "constants"), i);
    only_keys(cs[i], {"symbol", "element"}, at);
    auto symbol = string_at(member(cs[i], "symbol", at), join(at, "symbol"));
    int element = out.base.element(member(cs[i], "element", at), join(at, "element"));
    out.spec.constants.emplace_back(symbol, element);
  }
  return out;
}

namespace {

template <std::size_t K>
std::vector<std::array<int, K>> name_tuples(const Json& a, const std::string& where,
                                            std::map<std::string, int>& index,
                                            std::vector<std::string>* grow) {
  std::vector<std::array<int, K>> out;
  for (std::size_t t = 0; t < array_at(a, where).size(); ++t) {
    auto at = join(where, t);
    const auto& row = array_at(a[t], at);
    if (row.size() != K) throw InputError(at, "expected " + std::to_string(K) + " entries");
    std::array<int, K> tuple{};
    for (std::size_t i = 0; i < K; ++i) {
      auto n = name_of(row[i]);
      if (grow && !index.count(n)) {
        index[n] = static_cast<int>(grow->size());
        grow->push_back(n);
      }
      tuple[i] = lookup(index, row[i], join(at, i));
    }
    out.push_back(tuple);
  }
  return out;
}

}  // namespace

TripleSet parse_triples(const Json& j, const std::string& where) {
  only_keys(j, {"leaves", "triples"}, where);
  TripleSet ts;
  std::map<std::string, int> index;
  bool listed = j.contains("leaves");
  if (listed) ts.leaves = name_list(j["leaves"], join(where, "leaves"), index);
  ts.triples = name_tuples<3>(member(j, "triples", where), join(where, "triples"), index,
                              listed ? nullptr : &ts.leaves);
  return ts;
}

QuartetSet parse_quartets(const Json& j, const std::string& where) {
  only_keys(j, {"leaves", "quartets"}, where);
  QuartetSet qs;
  std::map<std::string, int> index;
  bool listed = j.contains("leaves");
  if (listed) qs.leaves = name_list(j["leaves"], join(where, "leaves"), index);
  qs.quartets = name_tuples<4>(member(j, "quartets", where), join(where, "quartets"), index,
                               listed ? nullptr : &qs.leaves);
  return qs;
}

BetweennessInstance parse_betweenness(const Json& j, const std::string& where) {
  only_keys(j, {"elements", "triples"}, where);
  BetweennessInstance inst;
  std::map<std::string, int> index;
  inst.elements = name_list(member(j, "elements", where), join(where, "elements"), index);
  inst.triples = name_tuples<3>(member(j, "triples", where), join(where, "triples"), index, nullptr);
  return inst;
}

TreeDescription parse_tree_description(const Json& j, const std::string& where) {
  only_keys(j, {"vertices", "anc", "nonanc"}, where);
  TreeDescription td;
  std::map<std::string, int> index;
  td.vertices = name_list(member(j, "vertices", where), join(where, "vertices"), index);
  for (const char* key : {"anc", "nonanc"}) {
    if (!j.contains(key)) continue;
    auto pairs = name_tuples<2>(j[key], join(where, key), index, nullptr);
    auto& into = std::string(key) == "anc" ? td.anc : td.nonanc;
    for (const auto& p : pairs) into.emplace_back(p[0], p[1]);
  }
  return td;
}

Json rooted_tree_to_json(const RootedTree& t, const std::vector<std::string>& leaves) {
  Json leaf = Json::array();
  for (int l : t.leaf) leaf.push_back(l < 0 ? Json(nullptr) : Json(leaves[l]));
  return Json{{"newick", to_newick(t, leaves)}, {"parent", t.parent}, {"leaf", std::move(leaf)}};
}

Json unrooted_tree_to_json(const UnrootedTree& t, const std::vector<std::string>& leaves) {
  Json edges = Json::array();
  for (const auto& [u, v] : t.edges) edges.push_back({u, v});
  Json leaf = Json::array();
  for (int l : t.leaf) leaf.push_back(l < 0 ? Json(nullptr) : Json(leaves[l]));
  return Json{{"nodes", t.node_count}, {"edges", std::move(edges)}, {"leaf", std::move(leaf)}};
}

}  // namespace omegacore::io

namespace omegacore {

Caps Caps::from_json(std::string_view text) {
  auto j = io::parse_json(std::string(text), "capacity overrides");
  if (!j.is_object()) throw Error("capacity overrides must be a JSON object");
  Caps caps;
  const std::map<std::string, std::size_t Caps::*> fields = {
      {"power_domain", &Caps::power_domain},
      {"automorphism_domain", &Caps::automorphism_domain},
      {"endomorphism_domain", &Caps::endomorphism_domain},
      {"orbit_tuples", &Caps::orbit_tuples},
      {"brute_force_variables", &Caps::brute_force_variables},
      {"brute_force_maps", &Caps::brute_force_maps},
      {"quartet_leaves", &Caps::quartet_leaves},
      {"tree_description_vertices", &Caps::tree_description_vertices},
      {"exhaustive_vertices", &Caps::exhaustive_vertices},
      {"class_enumeration", &Caps::class_enumeration},
      {"amalgam_choices", &Caps::amalgam_choices},
  };
  for (const auto& [key, value] : j.items()) {
    auto it = fields.find(key);
    if (it == fields.end()) throw Error("unknown capacity \"" + key + "\"");
    if (!value.is_number_unsigned()) throw Error("capacity \"" + key + "\" must be a non-negative integer");
    caps.*(it->second) = value.get<std::size_t>();
  }
  return caps;
}

}  // namespace omegacore
