#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "octic/multipoly.hpp"

namespace octic {

struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { Smooth, A1, A2, E6, Composite3Branch, Other };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

// f in two affine variables, translated so that the base point sits at the origin.
// The field of `local` contains both the coefficient field of f and the point coordinates.
class CurveGerm {
 public:
  CurveGerm(const MultiPoly& f, const std::vector<FieldElement>& point);
  static CurveGerm at_origin(const MultiPoly& f);
  // Germ of a homogeneous f in three variables at a projective point, in the affine chart of the
  // last nonzero coordinate.
  static CurveGerm at_projective_point(const MultiPoly& f, const std::vector<FieldElement>& point);

  const MultiPoly& local() const { return local_; }
  const std::vector<FieldElement>& point() const { return point_; }
  int chart() const { return chart_; }  // dehomogenized variable index, -1 for affine input

 private:
  CurveGerm() = default;
  MultiPoly local_;
  std::vector<FieldElement> point_;
  int chart_ = -1;
};

struct TangentCone {
  int multiplicity = 0;
  MultiPoly form;             // degree-m homogeneous part
  bool perfect_power = false;  // c·L^m for a linear form L
  std::optional<std::array<FieldElement, 2>> line;  // L = line[0]*u + line[1]*v when perfect
  int distinct_lines = 0;     // 2 for a nondegenerate quadratic cone, 1 for a perfect power, 0 if unknown
};

TangentCone multiplicity_and_cone(const CurveGerm& germ);

struct SingularityCertificate {
  Verdict verdict = Verdict::Other;
  int multiplicity = 0;
  std::string cone;                               // summary of the tangent cone
  std::vector<std::array<int, 2>> newton_segment;  // vertices after normalization
  std::optional<int> newton_number;               // Kouchnirenko number on the segment
  std::vector<int> contacts;                      // composite verdicts: sorted pairwise contacts
  std::optional<int> tangent_intersection;        // composite: intersection multiplicity with the tangent
  std::optional<int> tangent_contact_sum;         // composite: Σ branch contacts with the tangent
  std::string reason;                             // set on Other
  std::vector<std::string> audit;

  nlohmann::json to_json() const;
};

// Kouchnirenko number 2V - a - b + 1 for the segment (a,0)-(0,b).
int kouchnirenko_segment(int a, int b);

SingularityCertificate certify_type(const CurveGerm& germ, Verdict expected);

struct BranchExpansion {
  std::vector<FieldElement> coeffs;  // coeffs[k] multiplies v^k, k = 0..truncation
  int truncation = 0;
  Field field = nullptr;
  // Branch of the germ after the internal linear change u -> u, v -> v + shear*u.
  FieldElement shear;

  std::string to_string() const;
};

struct PuiseuxOptions {
  int truncation = 8;
  int extension_degree_cap = 4;
  std::optional<long> shear;  // force v -> v + shear*u instead of the first admissible value
};

std::vector<BranchExpansion> puiseux_branches(const CurveGerm& germ, const PuiseuxOptions& opts = {});
// v-adic valuation of g(u = branch(v), v), capped at `cap`.
int branch_residual_valuation(const MultiPoly& g, const BranchExpansion& branch, int cap);
int contact_order(const BranchExpansion& a, const BranchExpansion& b);

SingularityCertificate certify_composite(const CurveGerm& germ, const PuiseuxOptions& opts = {});

using ProjectiveLine = std::array<FieldElement, 3>;
struct TangentLines {
  std::vector<ProjectiveLine> lines;
  bool concurrent = false;
};
FieldElement determinant3(const std::array<ProjectiveLine, 3>& rows);
bool lines_concurrent(const std::vector<ProjectiveLine>& lines);
TangentLines tangent_lines_and_concurrency(const MultiPoly& f, const std::vector<std::vector<FieldElement>>& points);

// d1*d2/(p*q*r).
Rational weighted_bezout(long d1, long d2, const WeightVector& w);

enum class SmoothStatus { Smooth, Singular, Inconclusive };
struct SmoothnessCertificate {
  SmoothStatus status = SmoothStatus::Inconclusive;
  std::vector<std::string> witness;
  bool smooth() const { return status == SmoothStatus::Smooth; }
  nlohmann::json to_json() const;
};
struct SmoothnessOptions {
  int attempts = 4;
  std::uint64_t seed = 0x51;
  int degree_cap = 4;
};
SmoothnessCertificate certify_smooth_projective(const MultiPoly& f, const SmoothnessOptions& opts = {});

}  // namespace octic
