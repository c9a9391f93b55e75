#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "omegacore/caps.hpp"
#include "omegacore/structures.hpp"

namespace omegacore {

/// A function between structure domains; values[i] is the image of i.
struct Mapping {
  std::vector<int> values;

  std::size_t size() const { return values.size(); }
  int operator()(int x) const { return values[x]; }

  friend bool operator==(const Mapping&, const Mapping&) = default;
  friend auto operator<=>(const Mapping&, const Mapping&) = default;
};

struct MappingFlags {
  bool is_homomorphism = false;
  bool is_strong = false;
  bool is_injective = false;
  bool is_embedding = false;
  bool is_isomorphism = false;
};

/// Throws Error if the mapping does not fit the two domains or the
/// signatures differ.
MappingFlags classify(const FinStructure& source, const FinStructure& target,
                      const Mapping& m);

Mapping identity_mapping(int n);
/// outer ∘ inner
Mapping compose(const Mapping& outer, const Mapping& inner);
Mapping inverse(const Mapping& bijection);
Tuple image_of(const Mapping& m, std::span<const int> tuple);

enum class MapKind { homomorphism, injective_homomorphism, embedding };
enum class ValueOrder { ascending, descending };

/// Knobs for the backtracking kernel. With the default fixed variable order
/// the first mapping found is the lexicographically least (or greatest, for
/// descending values). first_fail switches to smallest-domain-first, which is
/// faster for yes/no questions but gives up that guarantee.
struct SearchOptions {
  MapKind kind = MapKind::homomorphism;
  ValueOrder value_order = ValueOrder::ascending;
  bool first_fail = false;
  /// Empty, or one list of permitted images per source element.
  std::vector<std::vector<int>> allowed;
};

/// Calls visit on every mapping of the requested kind; stops when visit
/// returns false. Throws Error on a signature mismatch.
void search_mappings(const FinStructure& source, const FinStructure& target,
                     const SearchOptions& options,
                     const std::function<bool(const Mapping&)>& visit);

std::optional<Mapping> find_mapping(const FinStructure& source,
                                    const FinStructure& target,
                                    const SearchOptions& options);

/// Lexicographically least homomorphism, if any.
std::optional<Mapping> find_homomorphism(const FinStructure& source,
                                         const FinStructure& target);

/// Decision version; uses first-fail ordering.
bool homomorphism_exists(const FinStructure& source, const FinStructure& target);

/// All homomorphisms in lexicographic order, at most limit of them.
std::vector<Mapping> enumerate_homomorphisms(
    const FinStructure& source, const FinStructure& target,
    std::optional<std::size_t> limit = std::nullopt);

std::optional<Mapping> find_embedding(const FinStructure& source,
                                      const FinStructure& target);
std::vector<Mapping> enumerate_embeddings(
    const FinStructure& source, const FinStructure& target,
    std::optional<std::size_t> limit = std::nullopt);

std::optional<Mapping> find_isomorphism(const FinStructure& a, const FinStructure& b);

/// The full automorphism group in lexicographic order (identity first).
/// Throws CapacityError when s.size() exceeds caps.automorphism_domain.
std::vector<Mapping> automorphisms(const FinStructure& s, const Caps& caps = {});

struct OrbitPartition {
  int k = 0;
  /// Each orbit sorted; orbits ordered by their least tuple.
  std::vector<std::vector<Tuple>> orbits;
  std::vector<Tuple> representatives;

  /// Index of the orbit containing tuple; -1 if the tuple is malformed.
  int orbit_of(std::span<const int> tuple) const;
};

OrbitPartition orbits(const FinStructure& s, int k, const Caps& caps = {});

/// Aut-orbits of k-tuples given an explicit group.
OrbitPartition orbits_under(const std::vector<Mapping>& group, int n, int k,
                            const Caps& caps = {});

}  // namespace omegacore
