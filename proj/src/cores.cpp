#include "omegacore/cores.hpp"

#include <algorithm>

namespace omegacore {

namespace {

void check_endomorphism_cap(const FinStructure& s, const Caps& caps) {
  if (static_cast<std::size_t>(s.size()) > caps.endomorphism_domain)
    throw CapacityError("core search needs domain <= " +
                        std::to_string(caps.endomorphism_domain));
}

std::optional<Mapping> endomorphism_avoiding(const FinStructure& s, int omitted,
                                             CoreStrategy strategy) {
  SearchOptions opt;
  opt.value_order = strategy == CoreStrategy::least_witness ? ValueOrder::ascending
                                                            : ValueOrder::descending;
  std::vector<int> values;
  for (int a = 0; a < s.size(); ++a)
    if (a != omitted) values.push_back(a);
  opt.allowed.assign(s.size(), values);
  return find_mapping(s, s, opt);
}

std::optional<Mapping> pick(std::vector<std::optional<Mapping>>& found, CoreStrategy strategy) {
  std::optional<Mapping> best;
  for (auto& m : found) {
    if (!m) continue;
    bool better = !best || (strategy == CoreStrategy::least_witness ? *m < *best : *m > *best);
    if (better) best = std::move(m);
  }
  return best;
}

}  // namespace

std::optional<Mapping> strict_endomorphism(const FinStructure& s, CoreStrategy strategy,
                                           const Caps& caps) {
  check_endomorphism_cap(s, caps);
  const int n = s.size();
  std::vector<std::optional<Mapping>> found(n);
#pragma omp parallel for schedule(dynamic)
  for (int v = 0; v < n; ++v) found[v] = endomorphism_avoiding(s, v, strategy);
  return pick(found, strategy);
}

std::optional<Mapping> strict_endomorphism_serial(const FinStructure& s, CoreStrategy strategy,
                                                  const Caps& caps) {
  check_endomorphism_cap(s, caps);
  std::vector<std::optional<Mapping>> found(s.size());
  for (int v = 0; v < s.size(); ++v) found[v] = endomorphism_avoiding(s, v, strategy);
  return pick(found, strategy);
}

CoreCheck is_core(const FinStructure& s, const Caps& caps) {
  auto witness = strict_endomorphism(s, CoreStrategy::least_witness, caps);
  return {!witness.has_value(), std::move(witness)};
}

CoreResult compute_core(const FinStructure& s, CoreStrategy strategy, const Caps& caps) {
  FinStructure current = s;
  std::vector<int> inclusion(s.size());
  for (int i = 0; i < s.size(); ++i) inclusion[i] = i;
  // to_current[x]: element of `current` that input element x is sent to
  Mapping to_current = identity_mapping(s.size());

  while (auto e = strict_endomorphism(current, strategy, caps)) {
    std::vector<int> image = e->values;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<int> position(current.size(), -1);
    for (std::size_t i = 0; i < image.size(); ++i) position[image[i]] = static_cast<int>(i);
    for (auto& v : to_current.values) v = position[(*e)(v)];
    std::vector<int> next_inclusion;
    for (int v : image) next_inclusion.push_back(inclusion[v]);
    inclusion = std::move(next_inclusion);
    current = induced_substructure(current, image);
  }

  Mapping retraction{std::vector<int>(s.size())};
  for (int x = 0; x < s.size(); ++x) retraction.values[x] = inclusion[to_current(x)];
  return {std::move(current), std::move(retraction), std::move(inclusion)};
}

bool homomorphically_equivalent(const FinStructure& a, const FinStructure& b) {
  if (!a.signature().same_vocabulary(b.signature())) throw Error("signature mismatch");
  return homomorphism_exists(a, b) && homomorphism_exists(b, a);
}

UniquenessReport verify_core_uniqueness(const FinStructure& s,
                                        std::span<const CoreStrategy> strategies,
                                        const Caps& caps) {
  if (strategies.size() < 2) throw Error("core uniqueness check needs at least two strategies");
  UniquenessReport report;
  for (auto strategy : strategies) report.cores.push_back(compute_core(s, strategy, caps));
  report.unique = true;
  for (std::size_t i = 0; i < report.cores.size() && report.unique; ++i)
    for (std::size_t j = i + 1; j < report.cores.size() && report.unique; ++j)
      report.unique = find_isomorphism(report.cores[i].core, report.cores[j].core).has_value();
  return report;
}

bool end_equals_aut(const FinStructure& core, const Caps& caps) {
  if (!is_core(core, caps).is_core) throw Error("end_equals_aut requires a core");
  auto auts = automorphisms(core, caps);
  auto endos = enumerate_homomorphisms(core, core);
  return endos == auts;  // both in lexicographic order
}

}  // namespace omegacore
