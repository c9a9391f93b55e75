#pragma once

#include <cstddef>
#include <string_view>

namespace omegacore {

/// Size limits for the exhaustive parts of the library. Every operation that
/// can blow up takes a Caps by const reference and throws CapacityError when
/// a limit is exceeded.
struct Caps {
  std::size_t power_domain = 4096;          // direct_power result size
  std::size_t automorphism_domain = 10;     // full Aut enumeration
  std::size_t endomorphism_domain = 64;     // core search
  std::size_t orbit_tuples = 1u << 16;      // n^k in orbits()
  std::size_t brute_force_variables = 8;    // brute_force_solve
  std::size_t brute_force_maps = 1u << 26;  // |D|^|V| in brute_force_solve
  std::size_t quartet_leaves = 8;
  std::size_t tree_description_vertices = 7;
  std::size_t exhaustive_vertices = 24;     // no-mono-tri / switching / betweenness
  std::size_t class_enumeration = 1u << 20; // candidate structures per size
  std::size_t amalgam_choices = 1u << 20;   // free-tuple assignments tried per amalgam

  /// Overrides fields from a JSON object such as {"power_domain": 512}.
  /// Unknown keys or non-integer values throw Error.
  static Caps from_json(std::string_view text);
};

}  // namespace omegacore
