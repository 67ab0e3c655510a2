#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "octic/abelian.hpp"
#include "octic/words.hpp"

namespace octic {

struct TietzeLimits {
  std::size_t max_relator_length = 400;  // eliminations producing longer relators are skipped
  std::size_t max_total_length = 200000;
  long max_length_growth = 400;  // largest accepted increase of the total relator length per move
  int max_passes = 10000;
};

struct TietzeLog {
  std::vector<std::string> moves;
};

Presentation tietze_simplify(const Presentation& p, const TietzeLimits& limits = {}, TietzeLog* log = nullptr);

// Presentation of the kernel of P -> A for a finite abelian A = (+) Z/moduli, with the given
// generator images. Cosets are the elements of A, representatives come from a breadth-first
// Schreier transversal, and the kernel generators are named <generator>_<coset>.
struct KernelOptions {
  bool simplify = true;
  TietzeLimits tietze;
};
Presentation rs_kernel(const Presentation& p, const AbelianImages& target, const KernelOptions& opts = {});
// Only the abelian invariants of the kernel (no simplification); suited to large indices.
AbelianInvariants rs_kernel_abelianization(const Presentation& p, const AbelianImages& target);

struct DerivedSeriesLimits {
  long max_index = 4096;            // index of a single step
  std::size_t max_generators = 20000;
  std::size_t max_relators = 200000;
  TietzeLimits tietze;
};

struct DerivedSeriesResult {
  std::vector<AbelianInvariants> quotients;  // G/G', G'/G'', ...
  std::string status;                        // "complete", "infinite abelianization", "limit: ..."
  std::vector<std::string> log;
  bool complete() const { return status == "complete"; }
};

DerivedSeriesResult derived_series_quotients(const Presentation& p, int depth, const DerivedSeriesLimits& limits = {});

struct CosetTable {
  std::size_t cosets = 0;
  std::vector<std::vector<std::uint32_t>> action;  // action[g][c] = c * g (0-based cosets)
  std::vector<std::vector<std::uint32_t>> inverse_action;
  std::vector<Word> subgroup;
  bool complete = false;
  std::string status;

  // Coset reached from `start` by reading w.
  std::uint32_t apply(const Word& w, std::uint32_t start = 0) const;
  bool verify(const Presentation& p) const;  // bijections, relators fix every coset
};

struct ToddCoxeterOptions {
  std::size_t max_cosets = 1000000;
};

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup, const ToddCoxeterOptions& opts = {});

// Element arithmetic in a finite group through its regular coset table (trivial subgroup).
class RegularRepresentation {
 public:
  explicit RegularRepresentation(const Presentation& p, const ToddCoxeterOptions& opts = {});
  std::size_t order() const { return table_.cosets; }
  bool equal(const Word& a, const Word& b) const;
  bool is_identity(const Word& w) const { return table_.apply(w) == 0; }
  long element_order(const Word& w) const;
  const CosetTable& table() const { return table_; }

 private:
  CosetTable table_;
};

// Finite group by multiplication table over elements 0..n-1, identity 0.
struct FiniteGroup {
  std::string name;
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;

  std::size_t order() const { return mul.size(); }
  static FiniteGroup from_permutations(std::string name, const std::vector<std::vector<int>>& generators);
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
  static FiniteGroup dihedral(int n);  // order 2n
  static FiniteGroup quaternion();
  static FiniteGroup by_name(const std::string& name);  // S3, S4, D4, Q8, Z<n>
};

struct HomCountOptions {
  std::size_t max_target_order = 120;
};
// Number of homomorphisms from P to the target.
std::uint64_t count_homs(const Presentation& p, const FiniteGroup& target, const HomCountOptions& opts = {});

}  // namespace octic
