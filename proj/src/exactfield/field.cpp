#include "octic/field.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace octic {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw FieldError("empty rational literal");
  const auto slash = s.find('/');
  auto check_digits = [&](const std::string& part, bool allow_sign) {
    std::size_t start = (allow_sign && !part.empty() && part[0] == '-') ? 1 : 0;
    if (part.size() == start) throw FieldError("malformed rational literal '" + text + "'");
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw FieldError("malformed rational literal '" + text + "'");
  };
  Rational q;
  if (slash == std::string::npos) {
    check_digits(s, true);
    q = Rational(Integer(s));
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_digits(num, true);
    check_digits(den, false);
    Integer d(den);
    if (d == 0) throw FieldError("zero denominator in '" + text + "'");
    q = Rational(Integer(num), d);
    q.canonicalize();
  }
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

struct Registry {
  std::deque<std::unique_ptr<NumberField>> owned;
  std::map<std::string, Field> by_key;
};

Registry& registry() {
  static Registry r;
  return r;
}

bool block_is_zero(const Rational* a, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(a[i]) != 0) return false;
  return true;
}

// Univariate helpers over a base field used by the inversion kernel.
using BasePoly = std::vector<FieldElement>;

void trim(BasePoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

void divrem(const BasePoly& a, const BasePoly& b, BasePoly& q, BasePoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, b.back().field()->zero());
  const FieldElement lead_inv = b.back().inverse();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    FieldElement c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
}

BasePoly bp_mul(const BasePoly& a, const BasePoly& b, Field f) {
  if (a.empty() || b.empty()) return {};
  BasePoly out(a.size() + b.size() - 1, f->zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

BasePoly bp_sub(const BasePoly& a, const BasePoly& b, Field f) {
  BasePoly out(std::max(a.size(), b.size()), f->zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace

Field NumberField::rationals() {
  static const NumberField* q = [] {
    auto* f = new NumberField();
    f->var_ = "";
    return f;
  }();
  return q;
}

Field NumberField::create(Field base, const std::string& variable, const std::vector<FieldElement>& minpoly) {
  if (base == nullptr) base = rationals();
  if (base->depth_ + 1 > kMaxDepth) throw FieldError("tower depth exceeded (maximum " + std::to_string(kMaxDepth) + ")");
  if (minpoly.size() < 2) throw FieldError("minimal polynomial must have degree at least 1");
  std::vector<FieldElement> coeffs;
  coeffs.reserve(minpoly.size());
  for (const auto& c : minpoly) {
    if (!base->contains(c.field())) throw FieldError("minimal polynomial coefficient outside the base field");
    coeffs.push_back(c.lift_to(base));
  }
  if (!coeffs.back().is_one()) throw FieldError("minimal polynomial is not monic");
  if (variable.empty()) throw FieldError("field generator needs a name");

  std::ostringstream key;
  key << static_cast<const void*>(base) << '|' << variable;
  for (const auto& c : coeffs)
    for (const auto& s : c.serialize()) key << '|' << s;

  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry();
  if (auto it = reg.by_key.find(key.str()); it != reg.by_key.end()) return it->second;
  std::unique_ptr<NumberField> f(new NumberField());
  f->base_ = base;
  f->var_ = variable;
  f->degree_ = coeffs.size() - 1;
  f->abs_degree_ = f->degree_ * base->abs_degree_;
  f->depth_ = base->depth_ + 1;
  for (const auto& c : coeffs) f->minpoly_rational_.push_back(c.is_rational());
  f->minpoly_ = std::move(coeffs);
  Field out = f.get();
  reg.owned.push_back(std::move(f));
  reg.by_key.emplace(key.str(), out);
  return out;
}

std::vector<std::string> NumberField::generator_names() const {
  std::vector<std::string> names;
  for (Field f : tower()) names.push_back(f->var_);
  return names;
}

std::vector<Field> NumberField::tower() const {
  std::vector<Field> levels;
  for (Field f = this; f != nullptr && !f->is_rational(); f = f->base_) levels.push_back(f);
  std::reverse(levels.begin(), levels.end());
  return levels;
}

bool NumberField::contains(Field sub) const {
  if (sub == nullptr || sub->is_rational()) return true;
  for (Field f = this; f != nullptr; f = f->base_)
    if (f == sub) return true;
  return false;
}

FieldElement NumberField::zero() const { return FieldElement(this); }

FieldElement NumberField::one() const { return from_rational(1); }

FieldElement NumberField::from_rational(const Rational& q) const {
  std::vector<Rational> c(abs_degree_);
  c[0] = q;
  return FieldElement(this, std::move(c));
}

FieldElement NumberField::element(std::vector<Rational> coords) const { return FieldElement(this, std::move(coords)); }

FieldElement NumberField::generator() const {
  if (is_rational()) throw FieldError("Q has no generator");
  if (degree_ == 1) return (-minpoly_[0]).lift_to(this);
  std::vector<Rational> c(abs_degree_);
  c[base_->abs_degree_] = 1;
  return FieldElement(this, std::move(c));
}

std::string NumberField::describe() const {
  if (is_rational()) return "Q";
  std::ostringstream out;
  out << base_->describe() << "[" << var_ << "]/(";
  bool first = true;
  for (std::size_t i = minpoly_.size(); i-- > 0;) {
    if (minpoly_[i].is_zero()) continue;
    std::string c = minpoly_[i].to_string();
    const bool simple = minpoly_[i].is_rational();
    bool neg = simple && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (!simple) c = "(" + c + ")";
    if (i == 0) {
      out << c;
    } else {
      if (c != "1") out << c << "*";
      out << var_;
      if (i > 1) out << "^" << i;
    }
  }
  out << ")";
  return out.str();
}

void NumberField::mul(const Rational* a, const Rational* b, Rational* out) const {
  if (is_rational()) {
    out[0] = a[0] * b[0];
    return;
  }
  const std::size_t d = degree_;
  const std::size_t m = base_->abs_degree_;
  std::vector<Rational> prod((2 * d - 1) * m);
  std::vector<Rational> tmp(m);
  std::vector<char> a_nz(d), b_nz(d);
  for (std::size_t i = 0; i < d; ++i) {
    a_nz[i] = !block_is_zero(a + i * m, m);
    b_nz[i] = !block_is_zero(b + i * m, m);
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!a_nz[i]) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (!b_nz[j]) continue;
      base_->mul(a + i * m, b + j * m, tmp.data());
      Rational* dst = prod.data() + (i + j) * m;
      for (std::size_t k = 0; k < m; ++k) dst[k] += tmp[k];
    }
  }
  for (std::size_t k = 2 * d - 1; k-- > d;) {
    Rational* c = prod.data() + k * m;
    if (block_is_zero(c, m)) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const FieldElement& mi = minpoly_[i];
      Rational* dst = prod.data() + (k - d + i) * m;
      if (minpoly_rational_[i]) {
        const Rational& s = mi.coords()[0];
        if (sgn(s) == 0) continue;
        for (std::size_t t = 0; t < m; ++t) dst[t] -= c[t] * s;
      } else {
        base_->mul(c, mi.coords().data(), tmp.data());
        for (std::size_t t = 0; t < m; ++t) dst[t] -= tmp[t];
      }
    }
  }
  for (std::size_t k = 0; k < d * m; ++k) out[k] = prod[k];
}

bool NumberField::inverse(const Rational* a, Rational* out) const {
  if (is_rational()) {
    if (sgn(a[0]) == 0) return false;
    out[0] = 1 / a[0];
    return true;
  }
  const std::size_t d = degree_;
  const std::size_t m = base_->abs_degree_;
  BasePoly poly;
  for (std::size_t i = 0; i < d; ++i) poly.push_back(base_->element(std::vector<Rational>(a + i * m, a + (i + 1) * m)));
  trim(poly);
  if (poly.empty()) return false;
  BasePoly r0 = minpoly_, r1 = poly;
  BasePoly s0, s1{base_->one()};
  while (r1.size() > 1) {
    BasePoly q, r;
    divrem(r0, r1, q, r);
    BasePoly s2 = bp_sub(s0, bp_mul(q, s1, base_), base_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) return false;
  }
  const FieldElement scale = r1[0].inverse();
  for (std::size_t i = 0; i < d; ++i) {
    FieldElement c = i < s1.size() ? s1[i] * scale : base_->zero();
    for (std::size_t k = 0; k < m; ++k) out[i * m + k] = c.coords()[k];
  }
  return true;
}

Field common_field(Field a, Field b) {
  if (a == b) return a;
  if (a->contains(b)) return a;
  if (b->contains(a)) return b;
  throw FieldError("field mismatch: " + a->describe() + " vs " + b->describe());
}

FieldElement::FieldElement() : field_(NumberField::rationals()), coords_(1) {}

FieldElement::FieldElement(long v) : field_(NumberField::rationals()), coords_{Rational(v)} {}

FieldElement::FieldElement(const Rational& q) : field_(NumberField::rationals()), coords_{q} {}

FieldElement::FieldElement(Field f) : field_(f), coords_(f->absolute_degree()) {}

FieldElement::FieldElement(Field f, std::vector<Rational> coords) : field_(f), coords_(std::move(coords)) {
  if (coords_.size() != field_->absolute_degree())
    throw FieldError("coordinate vector has length " + std::to_string(coords_.size()) + ", field needs " +
                     std::to_string(field_->absolute_degree()));
  for (auto& c : coords_) c.canonicalize();
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool FieldElement::is_one() const {
  if (coords_[0] != 1) return false;
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw FieldError("element " + to_string() + " is not rational");
  return coords_[0];
}

int FieldElement::sign_if_rational() const { return sgn(rational_value()); }

FieldElement FieldElement::coefficient(std::size_t i) const {
  if (field_->is_rational()) {
    if (i == 0) return *this;
    return FieldElement();
  }
  Field base = field_->base();
  const std::size_t m = base->absolute_degree();
  if (i >= field_->degree()) return base->zero();
  return FieldElement(base, std::vector<Rational>(coords_.begin() + i * m, coords_.begin() + (i + 1) * m));
}

FieldElement FieldElement::lift_to(Field target) const {
  if (target == field_) return *this;
  if (!target->contains(field_)) throw FieldError("cannot embed " + field_->describe() + " into " + target->describe());
  std::vector<Rational> c(target->absolute_degree());
  for (std::size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i];
  return FieldElement(target, std::move(c));
}

bool FieldElement::lies_in(Field sub) const {
  if (sub == field_) return true;
  if (!field_->contains(sub)) return false;
  for (std::size_t i = sub->absolute_degree(); i < coords_.size(); ++i)
    if (sgn(coords_[i]) != 0) return false;
  return true;
}

FieldElement FieldElement::project_to(Field sub) const {
  if (sub == field_) return *this;
  if (!lies_in(sub)) throw FieldError("element " + to_string() + " does not lie in " + sub->describe());
  return FieldElement(sub, std::vector<Rational>(coords_.begin(), coords_.begin() + sub->absolute_degree()));
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (field_ != o.field_) {
    Field f = common_field(field_, o.field_);
    *this = lift_to(f);
    return *this += o.lift_to(f);
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  if (field_ != o.field_) {
    Field f = common_field(field_, o.field_);
    *this = lift_to(f);
    return *this -= o.lift_to(f);
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  if (field_ != o.field_) {
    if (o.field_->is_rational()) {
      const Rational& s = o.coords_[0];
      for (auto& c : coords_) c *= s;
      return *this;
    }
    if (field_->is_rational()) {
      FieldElement r = o;
      const Rational s = coords_[0];
      for (auto& c : r.coords_) c *= s;
      return *this = std::move(r);
    }
    Field f = common_field(field_, o.field_);
    *this = lift_to(f);
    return *this *= o.lift_to(f);
  }
  if (field_->is_rational()) {
    coords_[0] *= o.coords_[0];
    return *this;
  }
  field_->mul(coords_.data(), o.coords_.data(), coords_.data());
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.field_ == b.field_) return a.coords_ == b.coords_;
  Field f = common_field(a.field_, b.field_);
  return a.lift_to(f).coords_ == b.lift_to(f).coords_;
}

FieldElement FieldElement::inverse() const {
  FieldElement r(field_);
  if (!field_->inverse(coords_.data(), r.coords_.data())) throw FieldError("division by zero");
  return r;
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result = field_->one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

namespace {

// Collect (coefficient, exponent per tower level) for the nonzero flat coordinates.
void collect_terms(Field f, const Rational* c, std::vector<int>& exps,
                   std::vector<std::pair<Rational, std::vector<int>>>& out) {
  if (f->is_rational()) {
    if (sgn(c[0]) != 0) out.emplace_back(c[0], exps);
    return;
  }
  const std::size_t m = f->base()->absolute_degree();
  const std::size_t level = static_cast<std::size_t>(f->depth() - 1);
  for (std::size_t i = f->degree(); i-- > 0;) {
    exps[level] = static_cast<int>(i);
    collect_terms(f->base(), c + i * m, exps, out);
  }
  exps[level] = 0;
}

}  // namespace

std::string FieldElement::to_string() const {
  if (field_->is_rational()) return rational_to_string(coords_[0]);
  std::vector<std::pair<Rational, std::vector<int>>> terms;
  std::vector<int> exps(static_cast<std::size_t>(field_->depth()), 0);
  collect_terms(field_, coords_.data(), exps, terms);
  if (terms.empty()) return "0";
  const auto names = field_->generator_names();
  std::ostringstream out;
  bool first = true;
  for (const auto& [q, e] : terms) {
    const bool neg = sgn(q) < 0;
    Rational mag = neg ? Rational(-q) : q;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t k = e.size(); k-- > 0;) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    if (mono.empty()) {
      out << rational_to_string(mag);
    } else if (mag == 1) {
      out << mono;
    } else {
      out << rational_to_string(mag) << "*" << mono;
    }
  }
  return out.str();
}

std::vector<std::string> FieldElement::serialize() const {
  std::vector<std::string> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(rational_to_string(c));
  return out;
}

FieldElement FieldElement::deserialize(Field f, const std::vector<std::string>& coords) {
  if (coords.size() != f->absolute_degree())
    throw FieldError("expected " + std::to_string(f->absolute_degree()) + " coordinates, got " +
                     std::to_string(coords.size()));
  std::vector<Rational> c;
  c.reserve(coords.size());
  for (const auto& s : coords) c.push_back(parse_rational(s));
  return FieldElement(f, std::move(c));
}

FieldAutomorphism::FieldAutomorphism(Field field, std::vector<FieldElement> images) : field_(field) {
  const auto levels = field->tower();
  if (images.size() != levels.size())
    throw FieldError("automorphism needs one image per tower generator (" + std::to_string(levels.size()) + ")");
  for (auto& img : images) images_.push_back(img.lift_to(field));
  for (std::size_t k = 0; k < levels.size(); ++k) {
    Field level = levels[k];
    FieldElement acc = field->zero();
    const auto& mp = level->minpoly();
    for (std::size_t i = mp.size(); i-- > 0;) {
      acc *= images_[k];
      acc += apply_level(level->base(), mp[i].coords().data());
    }
    if (!acc.is_zero())
      throw FieldError("image of " + level->variable() + " does not satisfy its minimal polynomial");
  }
}

FieldAutomorphism FieldAutomorphism::identity(Field field) {
  std::vector<FieldElement> imgs;
  for (Field level : field->tower()) imgs.push_back(level->generator().lift_to(field));
  return FieldAutomorphism(field, std::move(imgs));
}

FieldAutomorphism FieldAutomorphism::quadratic_conjugation(Field field) {
  if (field->is_rational() || field->degree() != 2) throw FieldError("top extension is not quadratic");
  std::vector<FieldElement> imgs;
  for (Field level : field->tower()) imgs.push_back(level->generator().lift_to(field));
  imgs.back() = (-field->minpoly()[1]).lift_to(field) - field->generator();
  return FieldAutomorphism(field, std::move(imgs));
}

FieldElement FieldAutomorphism::apply_level(Field level, const Rational* coords) const {
  if (level->is_rational()) return field_->from_rational(coords[0]);
  const std::size_t m = level->base()->absolute_degree();
  const FieldElement& img = images_[static_cast<std::size_t>(level->depth() - 1)];
  FieldElement acc = field_->zero();
  for (std::size_t i = level->degree(); i-- > 0;) {
    acc *= img;
    acc += apply_level(level->base(), coords + i * m);
  }
  return acc;
}

FieldElement FieldAutomorphism::apply(const FieldElement& a) const {
  if (!field_->contains(a.field())) throw FieldError("field mismatch in automorphism application");
  FieldElement lifted = a.lift_to(field_);
  return apply_level(field_, lifted.coords().data());
}

FieldAutomorphism FieldAutomorphism::compose(const FieldAutomorphism& inner) const {
  if (inner.field_ != field_) throw FieldError("field mismatch in automorphism composition");
  std::vector<FieldElement> imgs;
  for (const auto& img : inner.images_) imgs.push_back(apply(img));
  return FieldAutomorphism(field_, std::move(imgs));
}

bool FieldAutomorphism::is_identity() const {
  const auto levels = field_->tower();
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (images_[k] != levels[k]->generator().lift_to(field_)) return false;
  return true;
}

int FieldAutomorphism::order(int cap) const {
  FieldAutomorphism power = *this;
  for (int k = 1; k <= cap; ++k) {
    if (power.is_identity()) return k;
    power = compose(power);
  }
  throw FieldError("automorphism order exceeds cap");
}

}  // namespace octic
