#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "octic/elim.hpp"
#include "octic/singular.hpp"

namespace octic {

struct CurveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Matrix3 = std::vector<std::vector<FieldElement>>;

struct DeclaredPoint {
  std::string label;
  std::vector<FieldElement> coords;
  Verdict expected = Verdict::Other;
};

struct DeclaredMap {
  std::string name;
  Matrix3 matrix;
  bool expect_invariant = true;
  std::vector<int> orbit_sizes;  // sorted orbit sizes on the declared points; empty: not checked
};

struct CurveRecord {
  std::string name;
  std::string description;
  std::string equation;  // human-readable form of `polynomial`
  std::vector<std::string> variables{"x", "y", "z"};
  Field field = nullptr;
  MultiPoly polynomial;
  Field point_field = nullptr;
  std::vector<DeclaredPoint> points;
  std::vector<DeclaredMap> automorphisms;
  std::optional<bool> expect_smooth;
  bool tangents_concurrent = false;  // declared points' tangents must meet in one point
  std::optional<int> genus;          // expected value of the degree-genus bookkeeping
  std::optional<MultiPoly> source_polynomial;  // form before a rationalizing coordinate change
  std::string root_label;
  std::string derivation;  // command that regenerates the point list
};

// Directory holding curves/ and order3_octic/. OCTIC_DATA overrides the compiled-in path.
std::filesystem::path data_dir();
std::vector<std::string> corpus_names();
// Accepts "name" or "name(root)", e.g. "c83_quartic(eta2)". Throws CurveError on unknown names.
CurveRecord corpus_get(const std::string& name);
CurveRecord curve_from_json(const nlohmann::json& j);
nlohmann::json curve_to_json(const CurveRecord& c);

Matrix3 parse_matrix(const std::vector<std::vector<std::string>>& rows, Field field);
Matrix3 diagonal_action(const std::vector<FieldElement>& diag);
Matrix3 matrix_product(const Matrix3& a, const Matrix3& b);
std::vector<FieldElement> apply_matrix(const Matrix3& a, const std::vector<FieldElement>& p);

// f(x^n, y^n, z^n).
MultiPoly kummer_pullback(const MultiPoly& f, int n);
// Per-variable exponents, e.g. {2, 1} for u -> u^2 on a local model.
MultiPoly kummer_pullback(const MultiPoly& f, const std::vector<int>& exponents);
// f(x^3, y^3, x*y*z).
MultiPoly theta_pullback(const MultiPoly& f);

struct Invariance {
  bool invariant = false;
  std::optional<FieldElement> scalar;  // f∘A = scalar·f
};
Invariance invariance_check(const MultiPoly& f, const Matrix3& a);

bool projectively_equal(const std::vector<FieldElement>& p, const std::vector<FieldElement>& q);

// Delta invariants of the certified types (E6: 3, A1/A2: 1, three-branch composite: 7).
int delta_invariant(Verdict v);
int genus_bookkeeping(int degree, const std::vector<Verdict>& singularities);

struct CheckLine {
  std::string name;
  std::string status;  // pass, fail, unresolved
  std::string detail;
  nlohmann::json to_json() const;
};

struct PointResult {
  std::string label;
  std::vector<std::string> coords;
  Verdict expected = Verdict::Other;
  SingularityCertificate certificate;
  bool ok = false;
};

struct CurveReport {
  std::string curve;
  std::vector<PointResult> points;
  std::vector<CheckLine> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

struct CertifyOptions {
  bool parallel = false;
  PuiseuxOptions puiseux;
  SmoothnessOptions smoothness;
};

CurveReport certify_curve_spec(const CurveRecord& record, const CertifyOptions& opts = {});

// Singular points of a homogeneous f over Q: affine ones through the elimination tree on
// {f, f_x, f_y} in the chart z = 1, closed under conjugation in a tower of depth <= 2, and the
// ones on z = 0 with rational coordinates.
struct DerivedPoints {
  Field field = nullptr;
  std::vector<std::vector<FieldElement>> points;
  std::vector<std::string> log;
  bool complete = true;
};
DerivedPoints derive_singular_points(const MultiPoly& f, const ElimBudgets& budgets = {});

// ---- Order-3 symmetric octic from tabulated constants ----

struct Order3OcticData {
  Field base = nullptr;       // K = Q[eta]
  Field extension = nullptr;  // K1 = K[zeta]
  std::map<std::string, FieldElement> constants;
  std::map<std::string, std::string> templates;  // F0, F1, F2 in (t, z) with constant names
  std::vector<std::string> open_names;           // template names needing a mapping
};

struct ConstantMapping {
  std::string name;
  std::map<std::string, std::string> names;  // template name -> constant name
};

Order3OcticData load_order3_octic(const std::filesystem::path& file = {});
ConstantMapping load_mapping(const std::filesystem::path& file);
std::vector<std::filesystem::path> mapping_files();

struct Order3OcticResult {
  std::string mapping;
  std::string root_label;
  MultiPoly f;   // over K1
  MultiPoly g0;  // over K1
  std::optional<MultiPoly> g;  // over K when rationality holds
  std::vector<CheckLine> checks;
  std::string pattern_status;  // pass, unresolved
  std::vector<std::string> notes;
  nlohmann::json to_json() const;
};

struct AssemblyOptions {
  bool certify_pattern = true;
  PuiseuxOptions puiseux;
};

Order3OcticResult assemble_order3_octic(const Order3OcticData& data, const ConstantMapping& mapping,
                                    const std::string& root_label = "eta1", const AssemblyOptions& opts = {});

}  // namespace octic
