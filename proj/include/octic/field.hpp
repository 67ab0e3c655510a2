#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace octic {

using Integer = mpz_class;
using Rational = mpq_class;

class NumberField;
class FieldElement;

// Fields are interned for the lifetime of the process and compared by address.
using Field = const NumberField*;

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

class NumberField {
 public:
  static constexpr int kMaxDepth = 2;

  static Field rationals();
  // minpoly holds coefficients over `base`, lowest degree first, and must be monic.
  static Field create(Field base, const std::string& variable, const std::vector<FieldElement>& minpoly);

  bool is_rational() const { return base_ == nullptr; }
  Field base() const { return base_; }
  const std::string& variable() const { return var_; }
  std::size_t degree() const { return degree_; }
  std::size_t absolute_degree() const { return abs_degree_; }
  int depth() const { return depth_; }
  const std::vector<FieldElement>& minpoly() const { return minpoly_; }

  // Generator names from the bottom of the tower up (empty for Q).
  std::vector<std::string> generator_names() const;
  // Levels of the tower from the first extension up to this field.
  std::vector<Field> tower() const;
  bool contains(Field sub) const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement generator() const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement element(std::vector<Rational> coords) const;

  std::string describe() const;

  // Flat-coordinate kernels. Arrays have absolute_degree() entries.
  void mul(const Rational* a, const Rational* b, Rational* out) const;
  bool inverse(const Rational* a, Rational* out) const;

 private:
  NumberField() = default;
  Field base_ = nullptr;
  std::string var_;
  std::vector<FieldElement> minpoly_;
  std::vector<bool> minpoly_rational_;
  std::size_t degree_ = 1;
  std::size_t abs_degree_ = 1;
  int depth_ = 0;
};

Field common_field(Field a, Field b);

class FieldElement {
 public:
  FieldElement();
  FieldElement(long v);  // NOLINT: integers embed into Q
  FieldElement(int v) : FieldElement(static_cast<long>(v)) {}  // NOLINT
  FieldElement(const Rational& q);  // NOLINT
  explicit FieldElement(Field f);
  FieldElement(Field f, std::vector<Rational> coords);

  Field field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;
  int sign_if_rational() const;

  // i-th coordinate over the immediate base field.
  FieldElement coefficient(std::size_t i) const;
  // Express in a field containing this one.
  FieldElement lift_to(Field target) const;
  // Express in a subfield; throws if the element does not lie in it.
  FieldElement project_to(Field sub) const;
  bool lies_in(Field sub) const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inverse() const;
  FieldElement pow(long e) const;

  std::string to_string() const;
  std::vector<std::string> serialize() const;
  static FieldElement deserialize(Field f, const std::vector<std::string>& coords);

 private:
  Field field_;
  std::vector<Rational> coords_;
};

class FieldAutomorphism {
 public:
  // images[k] is the image of the generator of tower()[k], an element of `field`.
  FieldAutomorphism(Field field, std::vector<FieldElement> images);
  static FieldAutomorphism identity(Field field);
  // The automorphism of a depth-2 field that fixes the base and sends the top generator
  // to the other root of its quadratic minimal polynomial.
  static FieldAutomorphism quadratic_conjugation(Field field);

  Field field() const { return field_; }
  const std::vector<FieldElement>& images() const { return images_; }
  FieldElement apply(const FieldElement& a) const;
  FieldAutomorphism compose(const FieldAutomorphism& inner) const;  // this ∘ inner
  bool is_identity() const;
  int order(int cap = 64) const;

 private:
  FieldElement apply_level(Field level, const Rational* coords) const;
  Field field_;
  std::vector<FieldElement> images_;
};

}  // namespace octic
