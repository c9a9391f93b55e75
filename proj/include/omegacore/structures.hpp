#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omegacore/caps.hpp"
#include "omegacore/error.hpp"

namespace omegacore {

/// Domain elements are the integers 0..n-1.
using Tuple = std::vector<int>;

struct Symbol {
  std::string name;
  int arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Ordered list of relation symbols with unique, non-empty names and
/// positive arities.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Copy with one more symbol appended; throws on a name collision.
  Signature with(Symbol symbol) const;

  /// Same symbols with the same arities, ignoring order.
  bool same_vocabulary(const Signature& other) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// A sorted, duplicate-free set of tuples of fixed arity.
class Relation {
 public:
  Relation() = default;
  Relation(int arity, std::vector<Tuple> tuples);

  int arity() const { return arity_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  bool contains(std::span<const int> tuple) const;

  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation& a, const Relation& b) {
    return a.tuples_ <=> b.tuples_;
  }

 private:
  int arity_ = 0;
  std::vector<Tuple> tuples_;
};

/// Unchecked structure description, as read from a file. validate() reports
/// every broken invariant; FinStructure::from() refuses to build from it.
struct RawStructure {
  Signature signature;
  int domain_size = 0;
  std::map<std::string, std::vector<Tuple>> relations;
};

std::vector<std::string> validate(const RawStructure& raw);

/// Finite relational structure. Immutable once built; one relation per
/// signature symbol, in signature order.
class FinStructure {
 public:
  FinStructure() = default;

  /// Throws Error listing the violations if the invariants do not hold.
  static FinStructure from(const RawStructure& raw);
  FinStructure(Signature signature, int domain_size,
               std::vector<Relation> relations);

  const Signature& signature() const { return signature_; }
  int size() const { return domain_size_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const Relation& relation(std::size_t symbol_index) const {
    return relations_[symbol_index];
  }
  /// Throws Error for an unknown symbol.
  const Relation& relation(const std::string& name) const;

  RawStructure raw() const;

  friend bool operator==(const FinStructure&, const FinStructure&) = default;

 private:
  Signature signature_;
  int domain_size_ = 0;
  std::vector<Relation> relations_;
};

/// Element i of the result corresponds to subset[i].
FinStructure induced_substructure(const FinStructure& s,
                                  std::span<const int> subset);

FinStructure expand(const FinStructure& s, const std::string& name, int arity,
                    std::vector<Tuple> tuples);

/// Domain is the m-tuples over s in lexicographic order; relations hold
/// coordinatewise.
FinStructure direct_power(const FinStructure& s, int m, const Caps& caps = {});

/// Index of an m-tuple in the domain of direct_power(s, m).
int power_index(std::span<const int> coordinates, int base);

/// Disjoint union; elements of b are shifted by a.size().
FinStructure disjoint_union(const FinStructure& a, const FinStructure& b);

/// Convenience builders used throughout tests and examples.
FinStructure graph(int n, const std::vector<std::pair<int, int>>& edges,
                   bool symmetric = true, const std::string& symbol = "E");
FinStructure complete_graph(int n);
FinStructure cycle_graph(int n);
FinStructure path_graph(int n);

}  // namespace omegacore
