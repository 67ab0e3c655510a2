#include "octic/upoly.hpp"

#include <algorithm>
#include <sstream>

namespace octic {

UPoly::UPoly(Field f, std::vector<FieldElement> coeffs) : field_(f) {
  c_.reserve(coeffs.size());
  for (auto& c : coeffs) c_.push_back(c.field() == f ? std::move(c) : c.lift_to(f));
  normalize();
}

UPoly UPoly::from_rationals(const std::vector<Rational>& coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (const auto& q : coeffs) c.emplace_back(q);
  return UPoly(NumberField::rationals(), std::move(c));
}

UPoly UPoly::constant(const FieldElement& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::monomial(const FieldElement& c, int degree) {
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(degree) + 1, c.field()->zero());
  coeffs.back() = c;
  return UPoly(c.field(), std::move(coeffs));
}

void UPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return field_->zero();
  return c_[static_cast<std::size_t>(i)];
}

FieldElement UPoly::eval(const FieldElement& x) const {
  Field f = common_field(field_, x.field());
  FieldElement acc = f->zero();
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc += c_[i];
  }
  return acc;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * lead().inverse();
}

UPoly UPoly::derivative() const {
  std::vector<FieldElement> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * FieldElement(static_cast<long>(i)));
  return UPoly(field_, std::move(d));
}

UPoly UPoly::shift(const FieldElement& s) const {
  Field f = common_field(field_, s.field());
  UPoly lin(f, {s, f->one()});
  UPoly acc(f);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + UPoly::constant(c_[i].lift_to(f));
  return acc;
}

UPoly UPoly::lift_to(Field target) const {
  std::vector<FieldElement> c;
  for (const auto& x : c_) c.push_back(x.lift_to(target));
  return UPoly(target, std::move(c));
}

bool UPoly::lies_in(Field sub) const {
  return std::all_of(c_.begin(), c_.end(), [&](const FieldElement& x) { return x.lies_in(sub); });
}

UPoly UPoly::project_to(Field sub) const {
  std::vector<FieldElement> c;
  for (const auto& x : c_) c.push_back(x.project_to(sub));
  return UPoly(sub, std::move(c));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  Field f = common_field(a.field_, b.field_);
  std::vector<FieldElement> c(std::max(a.c_.size(), b.c_.size()), f->zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UPoly(f, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  Field f = common_field(a.field_, b.field_);
  if (a.c_.empty() || b.c_.empty()) return UPoly(f);
  std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1, f->zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(f, std::move(c));
}

UPoly operator*(const UPoly& a, const FieldElement& s) {
  Field f = common_field(a.field_, s.field());
  std::vector<FieldElement> c;
  for (const auto& x : a.c_) c.push_back(x * s);
  return UPoly(f, std::move(c));
}

bool operator==(const UPoly& a, const UPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

UPoly UPoly::pow(int e) const {
  UPoly result = UPoly::constant(field_->one());
  UPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string coef;
    bool neg = false;
    if (c_[i].is_rational()) {
      Rational q = c_[i].rational_value();
      neg = sgn(q) < 0;
      if (neg) q = -q;
      coef = (q == 1 && i > 0) ? "" : rational_to_string(q);
    } else {
      coef = "(" + c_[i].to_string() + ")";
    }
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    out << coef;
    if (i == 0) continue;
    if (!coef.empty()) out << "*";
    out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

void divrem(const UPoly& a, const UPoly& b, UPoly& quotient, UPoly& remainder) {
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  Field f = common_field(a.field(), b.field());
  std::vector<FieldElement> r;
  for (const auto& x : a.coeffs()) r.push_back(x.lift_to(f));
  std::vector<FieldElement> bl;
  for (const auto& x : b.coeffs()) bl.push_back(x.lift_to(f));
  const std::size_t db = bl.size() - 1;
  std::vector<FieldElement> q(r.size() > db ? r.size() - db : 0, f->zero());
  const FieldElement inv = bl.back().inverse();
  const bool lead_one = bl.back().is_one();
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k].is_zero()) continue;
    FieldElement c = lead_one ? r[k] : r[k] * inv;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= c * bl[i];
    q[k - db] = std::move(c);
  }
  if (r.size() > db) r.resize(db);
  quotient = UPoly(f, std::move(q));
  remainder = UPoly(f, std::move(r));
}

UPoly operator/(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divrem(a, b, q, r);
  if (!r.is_zero()) throw FieldError("inexact polynomial division");
  return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divrem(a, b, q, r);
  return r;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

UPoly squarefree_part(const UPoly& f) {
  if (f.is_zero()) throw FieldError("squarefree part of zero");
  return (f / gcd(f, f.derivative())).monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const UPoly& f) {
  if (f.is_zero()) throw FieldError("squarefree decomposition of zero");
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;
  UPoly fm = f.monic();
  UPoly d = fm.derivative();
  UPoly a = gcd(fm, d);
  UPoly b = fm / a;
  UPoly c = d / a;
  UPoly e = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly g = gcd(b, e);
    if (g.degree() > 0) out.push_back({g.monic(), i});
    b = b / g;
    c = e / g;
    e = c - b.derivative();
    ++i;
  }
  return out;
}

std::vector<UPoly> sturm_sequence(const UPoly& f) {
  if (f.is_zero()) throw FieldError("Sturm sequence of zero polynomial");
  if (f.field() != NumberField::rationals()) throw FieldError("Sturm sequences need rational coefficients");
  std::vector<UPoly> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    UPoly r = seq[seq.size() - 2] % seq.back();
    seq.push_back(-r);
  }
  seq.pop_back();
  return seq;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int changes_at_infinity(const std::vector<UPoly>& seq, bool positive) {
  std::vector<int> signs;
  for (const auto& p : seq) {
    int s = p.lead().sign_if_rational();
    if (!positive && (p.degree() % 2 == 1)) s = -s;
    signs.push_back(s);
  }
  return sign_changes(signs);
}

int changes_at(const std::vector<UPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  for (const auto& p : seq) signs.push_back(p.eval(FieldElement(x)).sign_if_rational());
  return sign_changes(signs);
}

}  // namespace

int sturm_real_roots(const UPoly& f) {
  const auto seq = sturm_sequence(f);
  return changes_at_infinity(seq, false) - changes_at_infinity(seq, true);
}

int sturm_roots_in(const UPoly& f, const Rational& a, const Rational& b) {
  // Sturm's theorem needs non-root endpoints for non-squarefree input; using the squarefree
  // part keeps the count exact at endpoints that are roots.
  const UPoly g = squarefree_part(f);
  const auto seq = sturm_sequence(g);
  return changes_at(seq, a) - changes_at(seq, b);
}

std::vector<Integer> primitive_integer_part(const UPoly& f) {
  if (f.field() != NumberField::rationals()) throw FieldError("integer part needs rational coefficients");
  Integer den = 1;
  for (const auto& c : f.coeffs()) {
    const Integer d = c.rational_value().get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Integer> out;
  Integer content = 0;
  for (const auto& c : f.coeffs()) {
    const Rational q = c.rational_value() * den;
    out.push_back(q.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), q.get_num_mpz_t());
  }
  if (content != 0) {
    if (!out.empty() && out.back() < 0) content = -content;
    for (auto& x : out) x /= content;
  }
  return out;
}

UPoly from_integers(const std::vector<Integer>& c) {
  std::vector<Rational> q;
  for (const auto& x : c) q.emplace_back(x);
  return UPoly::from_rationals(q);
}

namespace {

std::vector<Integer> divisors(const Integer& n) {
  Integer a = abs(n);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  std::vector<Integer> signed_out;
  for (const auto& d : out) {
    signed_out.push_back(d);
    signed_out.push_back(-d);
  }
  return signed_out;
}

bool divides_integer_poly(const std::vector<Integer>& f, const std::vector<Integer>& g) {
  // g monic; long division over Z.
  std::vector<Integer> r = f;
  const std::size_t dg = g.size() - 1;
  for (std::size_t k = r.size(); k-- > dg;) {
    const Integer c = r[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] -= c * g[i];
  }
  for (std::size_t i = 0; i < dg && i < r.size(); ++i)
    if (r[i] != 0) return false;
  return true;
}

}  // namespace

bool irreducible_by_divisor_search(const std::vector<Integer>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 1 || n > 4) throw FieldError("divisor search supports degrees 1 through 4");
  if (f.back() != 1) throw FieldError("divisor search expects a monic integer polynomial");
  if (n == 1) return true;
  // Monic integer polynomials have integral rational roots dividing the constant term (or 0).
  if (f[0] == 0) return false;
  for (const auto& r : divisors(f[0])) {
    Integer acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * r + f[i];
    if (acc == 0) return false;
  }
  if (n <= 3) return true;
  // Quartic: t^4 + c3 t^3 + c2 t^2 + c1 t + c0 = (t^2 + a t + b)(t^2 + a' t + b'), b b' = c0.
  // By Gauss's lemma the factors may be taken monic with integer coefficients.
  for (const auto& b : divisors(f[0])) {
    const Integer b2 = f[0] / b;
    std::vector<Integer> candidates;
    if (b2 != b) {
      const Integer num = f[1] - b * f[3];
      const Integer den = b2 - b;
      if (num % den == 0) candidates.push_back(num / den);
    } else {
      // a^2 - c3 a + (c2 - 2b) = 0
      const Integer disc = f[3] * f[3] - 4 * (f[2] - 2 * b);
      if (disc >= 0) {
        Integer s = sqrt(disc);
        if (s * s == disc) {
          for (const Integer& root : {Integer(f[3] + s), Integer(f[3] - s)})
            if (root % 2 == 0) candidates.push_back(root / 2);
        }
      }
    }
    for (const auto& a : candidates) {
      if (divides_integer_poly(f, {b, a, 1})) return false;
    }
  }
  return true;
}

}  // namespace octic
