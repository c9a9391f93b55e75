// omegacore command-line front end. Results go to stdout as one line of
// canonical JSON; diagnostics go to stderr.
//
// exit codes: 0 true/sat/pass, 1 false/unsat/fail, 2 usage or input error,
//             3 capacity exceeded or unknown, 4 oracle disagreement

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "omegacore/amalgamation.hpp"
#include "omegacore/cores.hpp"
#include "omegacore/definability.hpp"
#include "omegacore/io.hpp"
#include "omegacore/reduction.hpp"
#include "omegacore/templates.hpp"

using namespace omegacore;
using io::Json;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kInput = 2, kCapacity = 3, kDiverged = 4 };

struct OracleDivergence : Error {
  using Error::Error;
};

int emit(const Json& j, bool verdict) {
  std::cout << io::dump(j) << '\n';
  return verdict ? kTrue : kFalse;
}

io::NamedStructure load_structure(const std::string& path) {
  auto j = io::read_json_file(path);
  try {
    return io::parse_structure(j);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

template <class F>
auto load(const std::string& path, F parse) {
  auto j = io::read_json_file(path);
  try {
    return parse(j, std::string());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

Json named_values(const Mapping& m, const io::NamedStructure& target) {
  Json out = Json::array();
  for (int v : m.values) out.push_back(target.named ? Json(target.names[v]) : Json(v));
  return out;
}

Json tuples_json(const std::vector<Tuple>& tuples, const io::NamedStructure& s) {
  Json out = Json::array();
  for (const auto& t : tuples) {
    Json row = Json::array();
    for (int v : t) row.push_back(s.named ? Json(s.names[v]) : Json(v));
    out.push_back(std::move(row));
  }
  return out;
}

void oracle_check(bool agree, const std::string& what) {
  if (!agree) throw OracleDivergence("oracle disagrees: " + what);
}

// --- verbs ---------------------------------------------------------------

int run_core(const std::string& file, const Caps& caps) {
  auto s = load_structure(file);
  auto r = compute_core(s.structure, CoreStrategy::least_witness, caps);
  auto j = io::core_result_to_json(r);
  if (s.named) {
    io::NamedStructure core{r.core, {}, true};
    for (int v : r.inclusion) core.names.push_back(s.names[v]);
    j["core"] = io::structure_to_json(core);
  }
  return emit(j, true);
}

int run_is_core(const std::string& file, const Caps& caps) {
  auto s = load_structure(file);
  auto r = is_core(s.structure, caps);
  Json j{{"is_core", r.is_core}};
  if (r.witness) j["witness"] = io::mapping_to_json(*r.witness);
  return emit(j, r.is_core);
}

int run_hom(const std::string& from, const std::string& to) {
  auto a = load_structure(from), b = load_structure(to);
  auto h = find_homomorphism(a.structure, b.structure);
  Json j{{"exists", h.has_value()}};
  if (h) j["mapping"] = io::mapping_to_json(*h);
  return emit(j, h.has_value());
}

int run_iso(const std::string& first, const std::string& second) {
  auto a = load_structure(first), b = load_structure(second);
  auto h = find_isomorphism(a.structure, b.structure);
  Json j{{"isomorphic", h.has_value()}};
  if (h) j["mapping"] = io::mapping_to_json(*h);
  return emit(j, h.has_value());
}

int run_orbits(const std::string& file, int k, const Caps& caps) {
  auto s = load_structure(file);
  auto part = orbits(s.structure, k, caps);
  Json list = Json::array();
  for (const auto& o : part.orbits) list.push_back(tuples_json(o, s));
  return emit(Json{{"k", k}, {"orbits", std::move(list)},
                   {"representatives", tuples_json(part.representatives, s)}},
              true);
}

Relation parse_relation(const Json& j, const io::NamedStructure& s, const std::string& where) {
  const Json& rows = j.is_object() && j.contains("tuples") ? j["tuples"] : j;
  if (!rows.is_array()) throw io::InputError(where, "expected an array of tuples");
  std::vector<Tuple> tuples;
  int arity = j.is_object() && j.contains("arity") ? j["arity"].get<int>() : -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto at = where + "/" + std::to_string(i);
    if (!rows[i].is_array()) throw io::InputError(at, "expected a tuple");
    Tuple t;
    for (std::size_t p = 0; p < rows[i].size(); ++p)
      t.push_back(s.element(rows[i][p], at + "/" + std::to_string(p)));
    if (arity < 0) arity = static_cast<int>(t.size());
    if (static_cast<int>(t.size()) != arity || arity < 1) throw io::InputError(at, "inconsistent arity");
    tuples.push_back(std::move(t));
  }
  if (arity < 1) throw io::InputError(where, "the relation is empty");
  return Relation(arity, std::move(tuples));
}

int run_ppdef(const std::string& file, const std::string& relation_file, const Caps& caps) {
  auto s = load_structure(file);
  auto rj = io::read_json_file(relation_file);
  Relation r;
  try {
    r = parse_relation(rj, s, "");
  } catch (const Error& e) {
    throw Error(relation_file + ": " + e.what());
  }
  auto v = canonical_pp_check(s.structure, r, caps);
  static const char* names[] = {"definable", "not_definable", "unknown"};
  Json j{{"verdict", names[static_cast<int>(v.verdict)]}};
  if (v.witness) j["witness"] = io::formula_to_json(*v.witness);
  if (v.refuting_tuple) j["refuting_tuple"] = tuples_json({*v.refuting_tuple}, s)[0];
  if (v.refuting_automorphism) j["refuting_automorphism"] = io::mapping_to_json(*v.refuting_automorphism);
  std::cout << io::dump(j) << '\n';
  switch (v.verdict) {
    case Definability::definable: return kTrue;
    case Definability::not_definable: return kFalse;
    default: return kCapacity;
  }
}

int run_orbit_formula(const std::string& file, const std::string& tuple_text, const Caps& caps) {
  auto s = load_structure(file);
  Tuple t;
  std::stringstream in(tuple_text);
  std::string item;
  while (std::getline(in, item, ',')) {
    Json name = item;
    if (!s.named) {
      try {
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        name = v;
      } catch (const std::exception&) {
        throw Error("--tuple: " + item + " is not an element index");
      }
    }
    t.push_back(s.element(name, "--tuple"));
  }
  if (t.empty()) throw Error("--tuple must name at least one element");
  auto phi = orbit_pp_formula(s.structure, t, caps);
  auto orbit = evaluate_pp(phi, s.structure);
  return emit(Json{{"formula", io::formula_to_json(phi)}, {"orbit", tuples_json(orbit.tuples(), s)}}, true);
}

int run_amalgam(const std::string& file, int bound, const Caps& caps) {
  auto spec = load(file, io::parse_class_spec);
  auto r = check_amalgamation(spec, bound, caps);
  Json j{{"pass", r.pass}, {"cases_checked", r.cases_checked}};
  if (r.counterexample) j["counterexample"] = io::amalgam_case_to_json(r.counterexample->problem);
  return emit(j, r.pass);
}

int run_age(const std::string& file, int k) {
  auto s = load_structure(file);
  Json list = Json::array();
  for (const auto& m : age(s.structure, k)) list.push_back(io::structure_to_json(m));
  return emit(Json{{"age", std::move(list)}}, true);
}

int run_probe(const std::string& file, const std::string& class_file, int bound) {
  auto g = load_structure(file);
  auto spec = load(class_file, io::parse_class_spec);
  auto stats = extension_property_probe(g.structure, spec, bound);
  return emit(Json{{"tested", stats.tested}, {"satisfied", stats.satisfied}, {"fraction", stats.fraction()}},
              true);
}

Json partition_json(const PartitionResult& r) {
  Json j{{"satisfiable", r.satisfiable}};
  if (r.satisfiable) j["partition"] = r.part;
  if (r.loop) j["loop"] = *r.loop;
  return j;
}

int run_solve(const std::string& tmpl, const std::string& instance, bool oracle, const Caps& caps) {
  if (tmpl == "triangle-free") {
    auto g = load_structure(instance).structure;
    auto r = solve_triangle_free(g);
    if (oracle) oracle_check(r.satisfiable == exhaustive::triangle_free(g), "triangle-free");
    Json j{{"satisfiable", r.satisfiable}};
    if (!r.satisfiable) j["witness"] = r.witness;
    return emit(j, r.satisfiable);
  }
  if (tmpl == "no-mono-tri") {
    auto g = load_structure(instance).structure;
    auto r = solve_no_mono_tri(g, caps);
    if (oracle) oracle_check(r.satisfiable == exhaustive::no_mono_tri(g), "no-mono-tri");
    return emit(partition_json(r), r.satisfiable);
  }
  if (tmpl == "switching") {
    auto d = load_structure(instance).structure;
    auto r = solve_switching_acyclic(d, caps);
    if (oracle) {
      oracle_check(r.satisfiable == exhaustive::switching_acyclic(d), "switching");
      oracle_check(r.part == solve_switching_acyclic_serial(d, caps).part, "switching witness");
    }
    return emit(partition_json(r), r.satisfiable);
  }
  if (tmpl == "betweenness") {
    auto inst = load(instance, io::parse_betweenness);
    auto r = solve_betweenness(inst, caps);
    if (oracle) oracle_check(r.has_value() == exhaustive::betweenness(inst), "betweenness");
    Json j{{"satisfiable", r.has_value()}};
    if (r) {
      Json numbering = Json::object();
      for (std::size_t i = 0; i < inst.elements.size(); ++i) numbering[inst.elements[i]] = (*r)[i];
      j["numbering"] = std::move(numbering);
    }
    return emit(j, r.has_value());
  }
  if (tmpl == "triples") {
    auto ts = load(instance, io::parse_triples);
    auto r = solve_rooted_triples(ts);
    if (oracle) oracle_check(r.has_value() == exhaustive::rooted_triples(ts), "triples");
    Json j{{"satisfiable", r.has_value()}};
    if (r) j["tree"] = io::rooted_tree_to_json(*r, ts.leaves);
    return emit(j, r.has_value());
  }
  if (tmpl == "quartets") {
    auto qs = load(instance, io::parse_quartets);
    auto r = solve_quartets(qs, caps);
    if (oracle) oracle_check(r.has_value() == exhaustive::quartets(qs), "quartets");
    Json j{{"satisfiable", r.has_value()}};
    if (r) j["tree"] = io::unrooted_tree_to_json(*r, qs.leaves);
    return emit(j, r.has_value());
  }
  if (tmpl == "tree-description") {
    auto td = load(instance, io::parse_tree_description);
    auto r = solve_tree_description(td, caps);
    if (oracle) oracle_check(r.has_value() == exhaustive::tree_description(td), "tree-description");
    Json j{{"satisfiable", r.has_value()}};
    if (r) {
      Json parent = Json::object();
      for (std::size_t v = 0; v < td.vertices.size(); ++v)
        parent[td.vertices[v]] = (*r)[v] < 0 ? Json(nullptr) : Json(td.vertices[(*r)[v]]);
      j["parent"] = std::move(parent);
    }
    return emit(j, r.has_value());
  }

  // any other value names a template structure file
  auto t = load_structure(tmpl);
  auto inst = load_structure(instance).structure;
  auto h = find_homomorphism(inst, t.structure);
  if (oracle) oracle_check(h == brute_force_solve(t.structure, inst, caps), "homomorphism search");
  Json j{{"satisfiable", h.has_value()}};
  if (h) j["assignment"] = io::mapping_to_json(*h);
  return emit(j, h.has_value());
}

int run_reduce(const std::string& spec_file, const std::string& instance, bool oracle, const Caps& caps) {
  auto spec = load(spec_file, io::parse_constant_spec);
  auto inst = load_structure(instance).structure;
  auto h = solve_with_constants(spec.spec, inst, caps);
  if (oracle) {
    auto full = expanded_template(spec.spec, spec.spec.constants.size());
    oracle_check(h.has_value() == brute_force_solve(full, inst, caps).has_value(), "constant reduction");
  }
  Json j{{"satisfiable", h.has_value()}};
  if (h) {
    j["assignment"] = io::mapping_to_json(*h);
    if (spec.base.named) j["names"] = named_values(*h, spec.base);
  }
  return emit(j, h.has_value());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite relational structures: cores, homomorphisms, definability, amalgamation, CSP templates"};
  app.require_subcommand(1);

  std::string file, second, from, to, relation, tuple, tmpl, instance, spec, class_file;
  int k = 1, bound = 4;
  bool oracle = false;

  auto* core = app.add_subcommand("core", "compute a core with its retraction");
  core->add_option("structure", file, "structure file")->required();
  auto* iscore = app.add_subcommand("is-core", "decide whether a structure is a core");
  iscore->add_option("structure", file)->required();
  auto* hom = app.add_subcommand("hom", "find the least homomorphism");
  hom->add_option("--from", from, "source structure")->required();
  hom->add_option("--to", to, "target structure")->required();
  auto* iso = app.add_subcommand("iso", "find an isomorphism");
  iso->add_option("first", file)->required();
  iso->add_option("second", second)->required();
  auto* orb = app.add_subcommand("orbits", "automorphism orbits of k-tuples");
  orb->add_option("structure", file)->required();
  orb->add_option("--k", k)->check(CLI::PositiveNumber);
  auto* ppdef = app.add_subcommand("ppdef", "canonical pp-definability check");
  ppdef->add_option("structure", file)->required();
  ppdef->add_option("--relation", relation, "relation file: [[...], ...] or {\"tuples\": ...}")->required();
  auto* of = app.add_subcommand("orbit-formula", "pp formula for the orbit of a tuple in a core");
  of->add_option("structure", file)->required();
  of->add_option("--tuple", tuple, "comma-separated elements")->required();
  auto* amal = app.add_subcommand("amalgam", "bounded amalgamation check of a class");
  amal->add_option("class", file, "class specification file")->required();
  amal->add_option("--bound", bound)->check(CLI::NonNegativeNumber);
  auto* ag = app.add_subcommand("age", "induced substructures up to isomorphism");
  ag->add_option("structure", file)->required();
  ag->add_option("--k", k)->check(CLI::NonNegativeNumber);
  auto* solve = app.add_subcommand("solve", "solve a CSP instance");
  solve->add_option("--template", tmpl,
                    "triangle-free, no-mono-tri, betweenness, switching, triples, quartets, "
                    "tree-description, or a structure file")
      ->required();
  solve->add_option("--instance", instance)->required();
  solve->add_flag("--oracle", oracle, "cross-check with exhaustive search");
  auto* red = app.add_subcommand("reduce", "solve over a core expanded by constants");
  red->add_option("--spec", spec)->required();
  red->add_option("--instance", instance)->required();
  red->add_flag("--oracle", oracle, "cross-check with brute force");
  auto* probe = app.add_subcommand("probe", "extension-property statistics of a graph");
  probe->add_option("graph", file)->required();
  probe->add_option("--class", class_file)->required();
  probe->add_option("--bound", bound)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    Caps caps;
    if (const char* env = std::getenv("OMEGACORE_CAPS")) caps = Caps::from_json(env);

    if (core->parsed()) return run_core(file, caps);
    if (iscore->parsed()) return run_is_core(file, caps);
    if (hom->parsed()) return run_hom(from, to);
    if (iso->parsed()) return run_iso(file, second);
    if (orb->parsed()) return run_orbits(file, k, caps);
    if (ppdef->parsed()) return run_ppdef(file, relation, caps);
    if (of->parsed()) return run_orbit_formula(file, tuple, caps);
    if (amal->parsed()) return run_amalgam(file, bound, caps);
    if (ag->parsed()) return run_age(file, k);
    if (solve->parsed()) return run_solve(tmpl, instance, oracle, caps);
    if (red->parsed()) return run_reduce(spec, instance, oracle, caps);
    if (probe->parsed()) return run_probe(file, class_file, bound);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const OracleDivergence& e) {
    std::cerr << e.what() << '\n';
    return kDiverged;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
