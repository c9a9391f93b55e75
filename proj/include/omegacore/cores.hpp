#pragma once

#include <optional>
#include <span>
#include <vector>

#include "omegacore/caps.hpp"
#include "omegacore/morphisms.hpp"
#include "omegacore/structures.hpp"

namespace omegacore {

/// Which strict endomorphism compute_core restricts along in each round.
enum class CoreStrategy { least_witness, greatest_witness };

struct CoreCheck {
  bool is_core = false;
  /// Lexicographically least strict endomorphism when is_core is false.
  std::optional<Mapping> witness;
};

/// A finite structure is a core iff it has no strict endomorphism. On a
/// finite domain the strict endomorphisms are exactly the non-surjective
/// ones, so the search runs once per omitted element.
CoreCheck is_core(const FinStructure& s, const Caps& caps = {});

/// Least (or greatest) strict endomorphism. The per-element searches run
/// in parallel; the serial variant is the reference.
std::optional<Mapping> strict_endomorphism(const FinStructure& s, CoreStrategy strategy,
                                           const Caps& caps = {});
std::optional<Mapping> strict_endomorphism_serial(const FinStructure& s,
                                                  CoreStrategy strategy,
                                                  const Caps& caps = {});

struct CoreResult {
  FinStructure core;
  /// Endomorphism of the input whose image is exactly `inclusion`.
  Mapping retraction;
  /// Original indices of the core's elements, ascending.
  std::vector<int> inclusion;
};

CoreResult compute_core(const FinStructure& s,
                        CoreStrategy strategy = CoreStrategy::least_witness,
                        const Caps& caps = {});

bool homomorphically_equivalent(const FinStructure& a, const FinStructure& b);

struct UniquenessReport {
  bool unique = false;
  std::vector<CoreResult> cores;
};

/// Computes one core per strategy and checks they are pairwise isomorphic.
/// Needs at least two strategies.
UniquenessReport verify_core_uniqueness(const FinStructure& s,
                                        std::span<const CoreStrategy> strategies,
                                        const Caps& caps = {});

/// End(core) == Aut(core) as mapping sets. Throws Error on a non-core.
bool end_equals_aut(const FinStructure& core, const Caps& caps = {});

}  // namespace omegacore
