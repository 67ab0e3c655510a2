#pragma once

#include <string>
#include <utility>
#include <vector>

#include "octic/field.hpp"

namespace octic {

// Dense univariate polynomial over a number field, lowest degree first.
class UPoly {
 public:
  UPoly() : field_(NumberField::rationals()) {}
  explicit UPoly(Field f) : field_(f) {}
  UPoly(Field f, std::vector<FieldElement> coeffs);
  static UPoly from_rationals(const std::vector<Rational>& coeffs);
  static UPoly constant(const FieldElement& c);
  static UPoly monomial(const FieldElement& c, int degree);
  static UPoly x(Field f) { return monomial(f->one(), 1); }

  Field field() const { return field_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  FieldElement coeff(int i) const;
  const FieldElement& lead() const { return c_.back(); }

  FieldElement eval(const FieldElement& x) const;
  UPoly monic() const;
  UPoly derivative() const;
  UPoly shift(const FieldElement& s) const;  // f(x + s)
  UPoly lift_to(Field target) const;
  UPoly project_to(Field sub) const;
  bool lies_in(Field sub) const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const FieldElement& s);
  friend bool operator==(const UPoly& a, const UPoly& b);
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }
  UPoly pow(int e) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  Field field_;
  std::vector<FieldElement> c_;
};

void divrem(const UPoly& a, const UPoly& b, UPoly& quotient, UPoly& remainder);
UPoly operator/(const UPoly& a, const UPoly& b);  // exact division; throws otherwise
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic; gcd(0,0) = 0
UPoly squarefree_part(const UPoly& f);

struct SquarefreeFactor {
  UPoly factor;
  int multiplicity;
};
// f = lc · Π factor^multiplicity with monic, squarefree, pairwise coprime factors (Yun).
std::vector<SquarefreeFactor> squarefree_decomposition(const UPoly& f);

std::vector<UPoly> sturm_sequence(const UPoly& f);
// Number of distinct real roots of a nonzero polynomial over Q.
int sturm_real_roots(const UPoly& f);
// Number of distinct real roots in the half-open interval (a, b].
int sturm_roots_in(const UPoly& f, const Rational& a, const Rational& b);

// Integer helpers for polynomials over Q.
std::vector<Integer> primitive_integer_part(const UPoly& f);
UPoly from_integers(const std::vector<Integer>& c);

// Irreducibility over Q of a monic integer polynomial of degree at most 4 by exhaustive search
// for rational roots and monic quadratic factors among divisor-constrained candidates.
bool irreducible_by_divisor_search(const std::vector<Integer>& monic_coeffs);

}  // namespace octic
