#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegacore/caps.hpp"
#include "omegacore/morphisms.hpp"
#include "omegacore/structures.hpp"

namespace omegacore {

/// A core expanded by singleton relations C_i = {c_i}, in order.
struct ConstantSpec {
  FinStructure base;
  std::vector<std::pair<std::string, int>> constants;
};

/// Throws Error unless the base is a core and every constant symbol is a
/// fresh name bound to an element of the base.
void check_constant_spec(const ConstantSpec& spec, const Caps& caps = {});

/// The expansion of spec.base by the first `count` singleton relations.
FinStructure expanded_template(const ConstantSpec& spec, std::size_t count);

/// { α(c) : α ∈ Aut(s) }, ascending.
std::vector<int> orbit_of_element(const FinStructure& s, int c, const Caps& caps = {});

/// Name of the orbit relation that replaces a singleton symbol.
std::string orbit_symbol(const std::string& singleton_symbol);

struct SingletonReduction {
  FinStructure instance;        // symbol replaced by its orbit relation
  FinStructure target;          // `current` expanded by the orbit relation
  Mapping merge;                // old instance variable -> new variable
  std::optional<int> merged;    // the variable carrying the orbit constraint
  std::vector<int> orbit;
};

/// Identifies every variable constrained by the unary `symbol`, then swaps
/// the symbol for the Aut(current)-orbit of c on that one variable.
/// `current` is the template without `symbol`.
SingletonReduction reduce_singleton(const FinStructure& instance, const FinStructure& current,
                                    const std::string& symbol, int c, const Caps& caps = {});

/// Solves CSP(base + C_1..C_k) through CSP(base + P_1): constants are
/// reduced last-to-first, later orbit constraints are rewritten by their pp
/// definition, and the solution is lifted back through automorphisms.
/// Returns an assignment of the instance's variables, or nothing.
std::optional<Mapping> solve_with_constants(const ConstantSpec& spec, const FinStructure& instance,
                                            const Caps& caps = {});

/// Least solution by plain enumeration of all |D|^|V| assignments. The
/// parallel variant splits the index range; the serial one is the reference.
std::optional<Mapping> brute_force_solve(const FinStructure& target, const FinStructure& instance,
                                         const Caps& caps = {});
std::optional<Mapping> brute_force_solve_serial(const FinStructure& target,
                                                const FinStructure& instance,
                                                const Caps& caps = {});

}  // namespace omegacore
