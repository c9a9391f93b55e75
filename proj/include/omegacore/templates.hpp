#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegacore/caps.hpp"
#include "omegacore/structures.hpp"

namespace omegacore {

// ---------------------------------------------------------------------------
// Problem instances. Leaves, elements and vertices are indices into the name
// lists; names only matter for output and for BUILD's tie-breaking.
// ---------------------------------------------------------------------------

/// x:yz -- lca(y, z) strictly below lca(x, y, z).
struct TripleSet {
  std::vector<std::string> leaves;
  std::vector<std::array<int, 3>> triples;
};

/// xy|uv -- the x–y path and the u–v path share no vertex.
struct QuartetSet {
  std::vector<std::string> leaves;
  std::vector<std::array<int, 4>> quartets;
};

struct BetweennessInstance {
  std::vector<std::string> elements;
  std::vector<std::array<int, 3>> triples;
};

struct TreeDescription {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> anc;     // u is a proper ancestor of v
  std::vector<std::pair<int, int>> nonanc;  // u is not an ancestor of v
};

/// Rooted tree: parent[root] == -1, leaf[node] is a leaf index or -1 for an
/// internal node. children are listed in construction order.
struct RootedTree {
  std::vector<int> parent;
  std::vector<int> leaf;
  std::vector<std::vector<int>> children;

  int root() const;
  /// Node carrying the given leaf index, or -1.
  int node_of_leaf(int leaf_index) const;
};

/// Unrooted tree on nodes 0..node_count-1; leaf[node] as in RootedTree.
struct UnrootedTree {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> leaf;
};

std::string to_newick(const RootedTree& tree, const std::vector<std::string>& names);

// ---------------------------------------------------------------------------
// Deciders
// ---------------------------------------------------------------------------

struct TriangleFreeResult {
  bool satisfiable = true;
  /// {v} for a loop at v, {a, b, c} for a triangle; lexicographically least,
  /// loops before triangles.
  std::vector<int> witness;
};

/// Graph problems read the symbol "E" (or the only binary symbol) and treat
/// it as undirected.
TriangleFreeResult solve_triangle_free(const FinStructure& g);

struct PartitionResult {
  bool satisfiable = false;
  std::vector<int> part;      // 0/1 per vertex when satisfiable
  std::optional<int> loop;    // reported loop vertex
};

/// Two-colouring with no monochromatic triangle; lexicographically least
/// colouring by backtracking.
PartitionResult solve_no_mono_tri(const FinStructure& g, const Caps& caps = {});

/// Injective numbering into 1..n meeting every triple, or nothing. Throws
/// Error on a triple with a repeated element.
std::optional<std::vector<int>> solve_betweenness(const BetweennessInstance& inst,
                                                  const Caps& caps = {});

/// part[v] == 1 marks the switched side X. X is the first working set in
/// the order (|X|, lexicographic), with |X| <= n/2. OpenMP over subsets.
PartitionResult solve_switching_acyclic(const FinStructure& d, const Caps& caps = {});
PartitionResult solve_switching_acyclic_serial(const FinStructure& d, const Caps& caps = {});

/// Aho et al.'s BUILD.
std::optional<RootedTree> solve_rooted_triples(const TripleSet& ts);

/// Exhaustive search over boron trees on the leaves. Throws CapacityError
/// above caps.quartet_leaves.
std::optional<UnrootedTree> solve_quartets(const QuartetSet& qs, const Caps& caps = {});

/// Parent array of a rooted forest (-1 for roots); lexicographically least.
std::optional<std::vector<int>> solve_tree_description(const TreeDescription& td,
                                                       const Caps& caps = {});

// ---------------------------------------------------------------------------
// Independent checkers
// ---------------------------------------------------------------------------

bool triple_holds(const RootedTree& tree, const std::array<int, 3>& triple);
bool verify_rooted_triples(const TripleSet& ts, const RootedTree& tree);
bool quartet_holds(const UnrootedTree& tree, const std::array<int, 4>& quartet);
bool verify_quartets(const QuartetSet& qs, const UnrootedTree& tree);
bool verify_betweenness(const BetweennessInstance& inst, const std::vector<int>& numbering);
bool verify_switching(const FinStructure& d, const std::vector<int>& part);
bool verify_no_mono_tri(const FinStructure& g, const std::vector<int>& part);
bool verify_tree_description(const TreeDescription& td, const std::vector<int>& parent);

// ---------------------------------------------------------------------------
// Brute-force oracles, written independently of the deciders.
// ---------------------------------------------------------------------------
namespace exhaustive {

bool triangle_free(const FinStructure& g);
bool no_mono_tri(const FinStructure& g);
bool betweenness(const BetweennessInstance& inst);
bool switching_acyclic(const FinStructure& d);
/// Tries every rooted tree (any branching) as a nested set partition.
bool rooted_triples(const TripleSet& ts);
/// Tries every compatible split system that displays the quartets.
bool quartets(const QuartetSet& qs);
/// Tries every parent array.
bool tree_description(const TreeDescription& td);

}  // namespace exhaustive

}  // namespace omegacore
