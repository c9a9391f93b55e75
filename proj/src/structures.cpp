#include "omegacore/structures.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace omegacore {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw Error("symbol name must be non-empty");
    if (s.arity < 1) throw Error("symbol " + s.name + " must have arity >= 1");
    if (!seen.insert(s.name).second) throw Error("duplicate symbol " + s.name);
  }
}

std::optional<std::size_t> Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

Signature Signature::with(Symbol symbol) const {
  auto symbols = symbols_;
  symbols.push_back(std::move(symbol));
  return Signature(std::move(symbols));
}

bool Signature::same_vocabulary(const Signature& other) const {
  if (size() != other.size()) return false;
  for (const auto& s : symbols_) {
    auto j = other.index_of(s.name);
    if (!j || other[*j].arity != s.arity) return false;
  }
  return true;
}

Relation::Relation(int arity, std::vector<Tuple> tuples)
    : arity_(arity), tuples_(std::move(tuples)) {
  for (const auto& t : tuples_)
    if (static_cast<int>(t.size()) != arity_)
      throw Error("tuple length does not match arity " + std::to_string(arity_));
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool Relation::contains(std::span<const int> tuple) const {
  auto it = std::lower_bound(
      tuples_.begin(), tuples_.end(), tuple, [](const Tuple& a, std::span<const int> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
      });
  return it != tuples_.end() && std::equal(it->begin(), it->end(), tuple.begin(), tuple.end());
}

std::vector<std::string> validate(const RawStructure& raw) {
  std::vector<std::string> violations;
  if (raw.domain_size < 0) violations.push_back("negative domain size");
  for (const auto& sym : raw.signature) {
    auto it = raw.relations.find(sym.name);
    if (it == raw.relations.end()) {
      violations.push_back("missing relation " + sym.name);
      continue;
    }
    std::set<Tuple> seen;
    for (const auto& t : it->second) {
      if (static_cast<int>(t.size()) != sym.arity) {
        violations.push_back("relation " + sym.name + ": tuple of length " +
                             std::to_string(t.size()) + " for arity " +
                             std::to_string(sym.arity));
        continue;
      }
      for (int v : t)
        if (v < 0 || v >= raw.domain_size)
          violations.push_back("relation " + sym.name + ": tuple entry " +
                               std::to_string(v) + " out of domain");
      if (!seen.insert(t).second)
        violations.push_back("relation " + sym.name + ": duplicate tuple");
    }
  }
  for (const auto& [name, tuples] : raw.relations)
    if (!raw.signature.index_of(name))
      violations.push_back("relation " + name + " not in signature");
  return violations;
}

FinStructure FinStructure::from(const RawStructure& raw) {
  auto violations = validate(raw);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid structure:";
    for (const auto& v : violations) msg << ' ' << v << ';';
    throw Error(msg.str());
  }
  std::vector<Relation> rels;
  for (const auto& sym : raw.signature)
    rels.emplace_back(sym.arity, raw.relations.at(sym.name));
  return FinStructure(raw.signature, raw.domain_size, std::move(rels));
}

FinStructure::FinStructure(Signature signature, int domain_size,
                           std::vector<Relation> relations)
    : signature_(std::move(signature)),
      domain_size_(domain_size),
      relations_(std::move(relations)) {
  if (domain_size_ < 0) throw Error("negative domain size");
  if (relations_.size() != signature_.size())
    throw Error("relation count does not match signature");
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].arity() != signature_[i].arity)
      throw Error("relation " + signature_[i].name + " has wrong arity");
    for (const auto& t : relations_[i])
      for (int v : t)
        if (v < 0 || v >= domain_size_)
          throw Error("relation " + signature_[i].name + ": tuple entry " +
                      std::to_string(v) + " out of domain");
  }
}

const Relation& FinStructure::relation(const std::string& name) const {
  auto i = signature_.index_of(name);
  if (!i) throw Error("unknown symbol " + name);
  return relations_[*i];
}

RawStructure FinStructure::raw() const {
  RawStructure r{signature_, domain_size_, {}};
  for (std::size_t i = 0; i < signature_.size(); ++i)
    r.relations[signature_[i].name] = relations_[i].tuples();
  return r;
}

FinStructure induced_substructure(const FinStructure& s, std::span<const int> subset) {
  std::vector<int> position(s.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    int v = subset[i];
    if (v < 0 || v >= s.size())
      throw Error("element " + std::to_string(v) + " out of range");
    if (position[v] != -1) throw Error("duplicate element " + std::to_string(v));
    position[v] = static_cast<int>(i);
  }
  std::vector<Relation> rels;
  for (const auto& rel : s.relations()) {
    std::vector<Tuple> kept;
    for (const auto& t : rel) {
      Tuple image;
      image.reserve(t.size());
      for (int v : t) {
        if (position[v] < 0) break;
        image.push_back(position[v]);
      }
      if (image.size() == t.size()) kept.push_back(std::move(image));
    }
    rels.emplace_back(rel.arity(), std::move(kept));
  }
  return FinStructure(s.signature(), static_cast<int>(subset.size()), std::move(rels));
}

FinStructure expand(const FinStructure& s, const std::string& name, int arity,
                    std::vector<Tuple> tuples) {
  if (s.signature().index_of(name)) throw Error("symbol " + name + " already in signature");
  auto sig = s.signature().with(Symbol{name, arity});
  auto rels = s.relations();
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity)
      throw Error("expansion " + name + ": tuple length does not match arity");
    for (int v : t)
      if (v < 0 || v >= s.size())
        throw Error("expansion " + name + ": tuple entry " + std::to_string(v) +
                    " out of domain");
  }
  rels.emplace_back(arity, std::move(tuples));
  return FinStructure(std::move(sig), s.size(), std::move(rels));
}

int power_index(std::span<const int> coordinates, int base) {
  int index = 0;
  for (int c : coordinates) index = index * base + c;
  return index;
}

FinStructure direct_power(const FinStructure& s, int m, const Caps& caps) {
  if (m < 1) throw Error("direct power exponent must be >= 1");
  const int n = s.size();
  std::size_t count = 1;
  for (int i = 0; i < m; ++i) {
    count *= static_cast<std::size_t>(n);
    if (count > caps.power_domain)
      throw CapacityError("direct power of size " + std::to_string(n) + "^" +
                          std::to_string(m) + " exceeds cap " +
                          std::to_string(caps.power_domain));
  }
  // A tuple of the power is a choice of one s-tuple per coordinate.
  std::vector<Relation> rels;
  for (const auto& rel : s.relations()) {
    const auto& base = rel.tuples();
    std::vector<Tuple> out;
    if (!base.empty()) {
      std::vector<std::size_t> pick(m, 0);
      std::vector<int> coords(m);
      while (true) {
        Tuple t(rel.arity());
        for (int pos = 0; pos < rel.arity(); ++pos) {
          for (int c = 0; c < m; ++c) coords[c] = base[pick[c]][pos];
          t[pos] = power_index(coords, n);
        }
        out.push_back(std::move(t));
        int c = m - 1;
        while (c >= 0 && ++pick[c] == base.size()) pick[c--] = 0;
        if (c < 0) break;
      }
    }
    rels.emplace_back(rel.arity(), std::move(out));
  }
  return FinStructure(s.signature(), static_cast<int>(count), std::move(rels));
}

FinStructure disjoint_union(const FinStructure& a, const FinStructure& b) {
  if (!a.signature().same_vocabulary(b.signature()))
    throw Error("disjoint union needs a shared signature");
  std::vector<Relation> rels;
  for (std::size_t i = 0; i < a.signature().size(); ++i) {
    auto tuples = a.relation(i).tuples();
    for (auto t : b.relation(a.signature()[i].name)) {
      for (int& v : t) v += a.size();
      tuples.push_back(std::move(t));
    }
    rels.emplace_back(a.signature()[i].arity, std::move(tuples));
  }
  return FinStructure(a.signature(), a.size() + b.size(), std::move(rels));
}

FinStructure graph(int n, const std::vector<std::pair<int, int>>& edges, bool symmetric,
                   const std::string& symbol) {
  std::vector<Tuple> tuples;
  for (auto [u, v] : edges) {
    tuples.push_back({u, v});
    if (symmetric) tuples.push_back({v, u});
  }
  return FinStructure(Signature({{symbol, 2}}), n, {Relation(2, std::move(tuples))});
}

FinStructure complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return graph(n, edges);
}

FinStructure cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return graph(n, edges);
}

FinStructure path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return graph(n, edges);
}

}  // namespace omegacore
