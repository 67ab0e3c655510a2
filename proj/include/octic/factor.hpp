#pragma once

#include <cstdint>
#include <vector>

#include "octic/upoly.hpp"

namespace octic {

struct FactorOptions {
  // Factors of degree above the cap are not searched for; a cofactor that may still split
  // into such factors is returned as unresolved.
  int degree_cap = 2;
  std::uint64_t seed = 0x5eed;
  long max_subsets = 200000;
};

struct FactorResult {
  FieldElement unit;                          // leading coefficient
  std::vector<SquarefreeFactor> irreducible;  // monic, proven irreducible
  std::vector<SquarefreeFactor> unresolved;   // monic, no factor of degree <= cap, not proven irreducible
  bool complete() const { return unresolved.empty(); }
};

// Bounded-degree factorization over Q (Zassenhaus) or a number-field tower (norm method).
FactorResult factor(const UPoly& f, const FactorOptions& opts = {});
// Roots of f lying in its coefficient field, without repetition.
std::vector<FieldElement> roots_in_field(const UPoly& f);
bool is_irreducible(const UPoly& f);

}  // namespace octic
