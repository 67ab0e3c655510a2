#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "octic/field.hpp"
#include "octic/upoly.hpp"

namespace octic {

using Exponents = std::vector<int>;

// Graded lexicographic order, largest first; variable 0 is the most significant.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

struct WeightVector {
  long p = 1, q = 1, r = 1;
  WeightVector() = default;
  WeightVector(long p_, long q_, long r_);  // validates positivity and pairwise coprimality
};

struct DegreeInfo {
  long degree = -1;  // -1 for the zero polynomial
  bool homogeneous = true;
};

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, FieldElement, GrlexGreater>;

  MultiPoly() : field_(NumberField::rationals()) {}
  MultiPoly(std::vector<std::string> vars, Field field);
  static MultiPoly constant(std::vector<std::string> vars, const FieldElement& c);
  static MultiPoly variable(std::vector<std::string> vars, Field field, std::size_t index);
  static MultiPoly variable(std::vector<std::string> vars, Field field, const std::string& name);
  static MultiPoly monomial(std::vector<std::string> vars, const FieldElement& c, Exponents e);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::size_t var_index(const std::string& name) const;  // throws on unknown variable
  bool has_variable(const std::string& name) const;
  Field field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldElement constant_term() const;

  void add_term(const Exponents& e, const FieldElement& c);
  FieldElement coefficient(const Exponents& e) const;
  const Exponents& leading_exponents() const;
  const FieldElement& leading_coefficient() const;

  long total_degree() const;
  long min_total_degree() const;
  int degree_in(std::size_t var) const;  // -1 for zero
  int min_degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  DegreeInfo degree(const std::vector<long>& weights) const;
  DegreeInfo degree() const;
  DegreeInfo degree(const WeightVector& w) const;
  MultiPoly homogeneous_part(long d) const;

  MultiPoly lift_to(Field target) const;
  MultiPoly project_to(Field sub) const;
  bool lies_in(Field sub) const;
  MultiPoly with_variables(const std::vector<std::string>& vars) const;  // rename/reorder by name
  MultiPoly map_coefficients(const FieldAutomorphism& phi) const;
  // Coefficients with respect to one variable, indexed by its exponent.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var);

  FieldElement evaluate(const std::vector<FieldElement>& point) const;
  MultiPoly partial_evaluate(std::size_t var, const FieldElement& value) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const FieldElement& s);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
  MultiPoly pow(int e) const;

  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;
  std::vector<std::string> vars_;
  Field field_;
  TermMap terms_;
};

struct PolyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MultiPoly derivative(const MultiPoly& f, const std::string& var);
// Every variable of f must be assigned or exist by name in the assignments' variable list.
MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& assignments);
// Linear change (x_i) -> (Σ_j A[i][j] x_j) on a polynomial whose variables match A's size.
MultiPoly linear_change(const MultiPoly& f, const std::vector<std::vector<FieldElement>>& matrix);

// Exact division; nullopt when the quotient is not a polynomial.
std::optional<MultiPoly> try_divide(const MultiPoly& f, const MultiPoly& g);
MultiPoly divide_exact(const MultiPoly& f, const MultiPoly& g);

// Resultant eliminating `var`, via the subresultant PRS.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var);

// Univariate views.
bool is_univariate_in(const MultiPoly& f, std::size_t var);
UPoly to_upoly(const MultiPoly& f, std::size_t var);
MultiPoly from_upoly(const UPoly& p, const std::vector<std::string>& vars, std::size_t var);

// Text format: sums of products of numbers, variables, field generators, ^ powers and parentheses.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars, Field field);

// Canonical sparse form [[exponents], [coefficient coordinates]] in grlex-descending order.
nlohmann::json to_canonical(const MultiPoly& f);
MultiPoly from_canonical(const nlohmann::json& j, const std::vector<std::string>& vars, Field field);

// Field definitions {"vars": [...], "minpolys": [...]}.
Field field_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(Field f);

}  // namespace octic
