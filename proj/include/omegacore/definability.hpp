#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "omegacore/caps.hpp"
#include "omegacore/morphisms.hpp"
#include "omegacore/structures.hpp"

namespace omegacore {

struct RelAtom {
  std::string symbol;
  std::vector<std::string> args;
  friend bool operator==(const RelAtom&, const RelAtom&) = default;
};

struct EqAtom {
  std::string lhs, rhs;
  friend bool operator==(const EqAtom&, const EqAtom&) = default;
};

using Atom = std::variant<RelAtom, EqAtom>;

/// ∃ bound_vars . atom_1 ∧ ... ∧ atom_k, with free_vars as the answer
/// columns.
struct PPFormula {
  std::vector<std::string> free_vars;
  std::vector<std::string> bound_vars;
  std::vector<Atom> atoms;
  friend bool operator==(const PPFormula&, const PPFormula&) = default;
};

/// Disjunction of pp formulas over one shared free-variable list.
struct EPFormula {
  std::vector<PPFormula> disjuncts;
};

/// Throws Error if a variable is undeclared or declared twice, or an atom
/// does not match the signature.
void check_well_formed(const PPFormula& phi, const Signature& signature);
void check_well_formed(const EPFormula& psi, const Signature& signature);

/// Tuples over phi.free_vars satisfied in s. Evaluated as homomorphism
/// search from the formula's canonical instance.
Relation evaluate_pp(const PPFormula& phi, const FinStructure& s);
Relation evaluate_ep(const EPFormula& psi, const FinStructure& s);

/// Atomic diagram of s as a pp formula: one variable per element, free
/// variable x_i sitting on element distinguished[i], y_j for the rest.
PPFormula diagram_formula(const FinStructure& s, std::span<const int> distinguished);

enum class Definability { definable, not_definable, unknown };

struct PPVerdict {
  Definability verdict = Definability::unknown;
  std::optional<PPFormula> witness;       // when definable
  std::optional<Tuple> refuting_tuple;    // a tuple forced into R that is not in R
  std::optional<Mapping> refuting_automorphism;
};

/// Decides pp-definability of a non-empty relation by the canonical
/// conjunctive query over the |R|-th direct power. Answers unknown when
/// the power exceeds caps.power_domain.
PPVerdict canonical_pp_check(const FinStructure& s, const Relation& r, const Caps& caps = {});

/// pp definition of the Aut-orbit of t in a finite core. Throws Error if
/// the structure is not a core.
PPFormula orbit_pp_formula(const FinStructure& core, std::span<const int> t,
                           const Caps& caps = {});

}  // namespace omegacore
