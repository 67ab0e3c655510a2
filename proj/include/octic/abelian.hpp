#pragma once

#include <map>
#include <string>
#include <vector>

#include "octic/field.hpp"
#include "octic/words.hpp"

namespace octic {

using IntMatrix = std::vector<std::vector<Integer>>;

struct SmithForm {
  std::vector<Integer> diagonal;  // length min(rows, cols); nonnegative; d_i | d_{i+1} up to trailing zeros
  IntMatrix left, right;          // U (rows x rows), V (cols x cols), unimodular, U * M * V = D
};

SmithForm smith_normal_form(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
Integer determinant(const IntMatrix& m);  // Bareiss

struct AbelianInvariants {
  int free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors, each >= 2, divisibility chain

  bool finite() const { return free_rank == 0; }
  Integer order() const;  // 0 when infinite
  std::string to_string() const;  // e.g. "Z^9 + (Z/2)^5 + Z/4", "0" for the trivial group
  friend bool operator==(const AbelianInvariants& a, const AbelianInvariants& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

AbelianInvariants invariants_from_diagonal(const std::vector<Integer>& diagonal, std::size_t ncols);
AbelianInvariants parse_abelian_invariants(const std::string& text);

// Abelian invariants of Z^ncols modulo the given sparse integer rows; used for large relation
// matrices where transforms are not needed.
using SparseRow = std::map<int, Integer>;
AbelianInvariants sparse_abelian_invariants(std::vector<SparseRow> rows, int ncols);

AbelianInvariants abelianization(const Presentation& p);

// Surjection of a presentation onto its finite abelianization, written as residues modulo the
// invariant factors.
struct AbelianImages {
  std::vector<long> moduli;              // invariant factors (>= 2)
  std::vector<std::vector<long>> images;  // per generator, one residue per modulus
  long order() const;
};
AbelianImages abelianization_map(const Presentation& p);  // throws when the abelianization is infinite

}  // namespace octic
