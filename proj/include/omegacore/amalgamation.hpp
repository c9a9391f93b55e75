#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "omegacore/caps.hpp"
#include "omegacore/morphisms.hpp"
#include "omegacore/structures.hpp"

namespace omegacore {

/// induced: the pattern may not embed. subgraph: the pattern may not map
/// injectively (extra relations in the host do not help).
enum class PatternMode { induced, subgraph };

struct ForbiddenPattern {
  FinStructure structure;
  PatternMode mode = PatternMode::induced;
};

/// A class of finite structures closed under substructures, given by
/// forbidden patterns. In graph mode every binary relation of a member must
/// be symmetric and irreflexive.
struct ClassSpec {
  Signature signature;
  std::vector<ForbiddenPattern> forbidden;
  bool graph_mode = false;
};

/// Throws Error if a pattern does not share the class signature.
void check_class_spec(const ClassSpec& spec);

bool class_member(const ClassSpec& spec, const FinStructure& s);

/// Induced substructures of s with 1..k elements, one per isomorphism type,
/// ordered by size and then canonical serialization. k is clamped to s.size().
std::vector<FinStructure> age(const FinStructure& s, int k);

/// All members on exactly `size` elements up to isomorphism, in the same
/// order as age(). Throws CapacityError when the candidate space exceeds
/// caps.class_enumeration.
std::vector<FinStructure> class_members(const ClassSpec& spec, int size, const Caps& caps = {});

/// One amalgamation problem: embeddings e1: A -> B1 and e2: A -> B2.
struct AmalgamCase {
  FinStructure a, b1, b2;
  Mapping e1, e2;
};

/// f1 ∘ e1 == f2 ∘ e2 with f1, f2 embeddings into c.
struct Amalgam {
  FinStructure c;
  Mapping f1, f2;
};

struct AmalgamWitness {
  AmalgamCase problem;
  std::optional<Amalgam> outcome;
};

/// Searches amalgams whose domain is the union of the two images; that is
/// complete for classes closed under substructures.
std::optional<Amalgam> find_amalgam(const ClassSpec& spec, const AmalgamCase& problem,
                                    const Caps& caps = {});

/// Every case with |B1|, |B2| <= size_bound, with embedding pairs taken up
/// to the symmetries of A, B1 and B2. Ordered by |B1|+|B2|, then |A|, |B1|,
/// and member/embedding order; the first failing case is the least
/// counterexample.
std::vector<AmalgamCase> amalgamation_cases(const ClassSpec& spec, int size_bound,
                                            const Caps& caps = {});

struct AmalgamationReport {
  bool pass = false;
  std::size_t cases_checked = 0;
  std::optional<AmalgamWitness> counterexample;  // outcome is empty
};

/// Cases are checked in parallel; the reported counterexample is the least
/// one, same as the serial reference.
AmalgamationReport check_amalgamation(const ClassSpec& spec, int size_bound,
                                      const Caps& caps = {});
AmalgamationReport check_amalgamation_serial(const ClassSpec& spec, int size_bound,
                                             const Caps& caps = {});

struct ProbeStats {
  std::size_t tested = 0;
  std::size_t satisfied = 0;
  double fraction() const {
    return tested == 0 ? 1.0 : static_cast<double>(satisfied) / static_cast<double>(tested);
  }
};

/// Extension-property diagnostic on a graph in the class: over disjoint
/// (A, B) with |A|, |B| <= set_bound and A independent, counts how often
/// some z outside A ∪ B is adjacent to all of A and none of B.
ProbeStats extension_property_probe(const FinStructure& g, const ClassSpec& spec,
                                    int set_bound);

}  // namespace omegacore
