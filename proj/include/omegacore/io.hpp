#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "omegacore/amalgamation.hpp"
#include "omegacore/cores.hpp"
#include "omegacore/definability.hpp"
#include "omegacore/morphisms.hpp"
#include "omegacore/reduction.hpp"
#include "omegacore/structures.hpp"
#include "omegacore/templates.hpp"

namespace omegacore::io {

using Json = nlohmann::ordered_json;

/// Malformed input. `where` is a slash-separated path into the document.
class InputError : public Error {
 public:
  InputError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : "at " + where + ": " + what) {}
};

/// A structure plus the external names of its elements. Without a name
/// list the domain was given as a count and names are the decimal indices.
struct NamedStructure {
  FinStructure structure;
  std::vector<std::string> names;
  bool named = false;

  /// Index of an element given as a JSON name or (for counted domains) an
  /// integer. Throws InputError.
  int element(const Json& j, const std::string& where) const;
};

/// Parses the whole file; errors carry the file name and, for syntax
/// errors, the byte offset.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& source);

/// Compact single-line dump; ordered keys keep it canonical.
std::string dump(const Json& j);

NamedStructure parse_structure(const Json& j, const std::string& where = "");
Json structure_to_json(const FinStructure& s);
Json structure_to_json(const NamedStructure& s);
std::string canonical_text(const FinStructure& s);

Json mapping_to_json(const Mapping& m);
Mapping parse_mapping(const Json& j, const std::string& where = "");

Json formula_to_json(const PPFormula& phi);
PPFormula parse_formula(const Json& j, const std::string& where = "");
Json formula_to_json(const EPFormula& psi);
EPFormula parse_ep_formula(const Json& j, const std::string& where = "");

Json core_result_to_json(const CoreResult& r);

ClassSpec parse_class_spec(const Json& j, const std::string& where = "");
Json class_spec_to_json(const ClassSpec& spec);
Json amalgam_case_to_json(const AmalgamCase& c);

struct NamedConstantSpec {
  ConstantSpec spec;
  NamedStructure base;
};
NamedConstantSpec parse_constant_spec(const Json& j, const std::string& where = "");

TripleSet parse_triples(const Json& j, const std::string& where = "");
QuartetSet parse_quartets(const Json& j, const std::string& where = "");
BetweennessInstance parse_betweenness(const Json& j, const std::string& where = "");
TreeDescription parse_tree_description(const Json& j, const std::string& where = "");

Json rooted_tree_to_json(const RootedTree& t, const std::vector<std::string>& leaves);
Json unrooted_tree_to_json(const UnrootedTree& t, const std::vector<std::string>& leaves);

/// Name used for a JSON scalar that labels an element.
std::string name_of(const Json& j);

}  // namespace omegacore::io
