#include "octic/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace octic {

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

WeightVector::WeightVector(long p_, long q_, long r_) : p(p_), q(q_), r(r_) {
  if (p <= 0 || q <= 0 || r <= 0) throw PolyError("weights must be positive");
  if (std::gcd(p, q) != 1 || std::gcd(p, r) != 1 || std::gcd(q, r) != 1)
    throw PolyError("weights must be pairwise coprime");
}

MultiPoly::MultiPoly(std::vector<std::string> vars, Field field) : vars_(std::move(vars)), field_(field) {
  std::set<std::string> seen(vars_.begin(), vars_.end());
  if (seen.size() != vars_.size()) throw PolyError("duplicate variable name");
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const FieldElement& c) {
  MultiPoly p(std::move(vars), c.field());
  p.add_term(Exponents(p.nvars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, Field field, std::size_t index) {
  MultiPoly p(std::move(vars), field);
  if (index >= p.nvars()) throw PolyError("variable index out of range");
  Exponents e(p.nvars(), 0);
  e[index] = 1;
  p.add_term(e, field->one());
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, Field field, const std::string& name) {
  MultiPoly p(vars, field);
  return variable(std::move(vars), field, p.var_index(name));
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, const FieldElement& c, Exponents e) {
  MultiPoly p(std::move(vars), c.field());
  p.add_term(e, c);
  return p;
}

std::size_t MultiPoly::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw PolyError("unknown variable '" + name + "'");
}

bool MultiPoly::has_variable(const std::string& name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

FieldElement MultiPoly::constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

void MultiPoly::add_term(const Exponents& e, const FieldElement& c) {
  if (e.size() != vars_.size()) throw PolyError("exponent vector length mismatch");
  if (c.is_zero()) return;
  for (int x : e)
    if (x < 0) throw PolyError("negative exponent");
  FieldElement cc = c.field() == field_ ? c : c.lift_to(field_);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, std::move(cc));
    return;
  }
  it->second += cc;
  if (it->second.is_zero()) terms_.erase(it);
}

FieldElement MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_->zero() : it->second;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw PolyError("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const FieldElement& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw PolyError("zero polynomial has no leading term");
  return terms_.begin()->second;
}

long MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0L);
}

long MultiPoly::min_total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0L);
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MultiPoly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
  return d;
}

bool MultiPoly::involves(std::size_t var) const { return degree_in(var) > 0; }

DegreeInfo MultiPoly::degree(const std::vector<long>& weights) const {
  if (weights.size() != vars_.size()) throw PolyError("weight vector length mismatch");
  DegreeInfo info;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += weights[i] * e[i];
    if (first) {
      info.degree = d;
      first = false;
    } else {
      if (d != info.degree) info.homogeneous = false;
      info.degree = std::max(info.degree, d);
    }
  }
  return info;
}

DegreeInfo MultiPoly::degree() const { return degree(std::vector<long>(vars_.size(), 1)); }

DegreeInfo MultiPoly::degree(const WeightVector& w) const {
  if (vars_.size() != 3) throw PolyError("a weight vector (p,q,r) needs three variables");
  return degree(std::vector<long>{w.p, w.q, w.r});
}

MultiPoly MultiPoly::homogeneous_part(long d) const {
  MultiPoly out(vars_, field_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0L) == d) out.terms_.emplace(e, c);
  return out;
}

MultiPoly MultiPoly::lift_to(Field target) const {
  if (target == field_) return *this;
  MultiPoly out(vars_, target);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.lift_to(target));
  return out;
}

bool MultiPoly::lies_in(Field sub) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.second.lies_in(sub); });
}

MultiPoly MultiPoly::project_to(Field sub) const {
  if (sub == field_) return *this;
  MultiPoly out(vars_, sub);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.project_to(sub));
  return out;
}

MultiPoly MultiPoly::with_variables(const std::vector<std::string>& vars) const {
  MultiPoly out(vars, field_);
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    map[i] = it == vars.end() ? vars.size() : static_cast<std::size_t>(it - vars.begin());
  }
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] == vars.size()) throw PolyError("variable '" + vars_[i] + "' missing from target list");
      ne[map[i]] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

MultiPoly MultiPoly::map_coefficients(const FieldAutomorphism& phi) const {
  MultiPoly out(vars_, phi.field());
  for (const auto& [e, c] : terms_) out.add_term(e, phi.apply(c));
  return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  const int d = degree_in(var);
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d, -1) + 1), MultiPoly(vars_, field_));
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[var] = 0;
    out[static_cast<std::size_t>(e[var])].terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var) {
  if (coeffs.empty()) throw PolyError("empty coefficient list");
  MultiPoly out(coeffs[0].vars_, coeffs[0].field_);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].field_ != out.field_) throw PolyError("coefficient field mismatch");
    for (const auto& [e, c] : coeffs[k].terms_) {
      Exponents ne = e;
      ne[var] += static_cast<int>(k);
      out.add_term(ne, c);
    }
  }
  return out;
}

FieldElement MultiPoly::evaluate(const std::vector<FieldElement>& point) const {
  if (point.size() != vars_.size()) throw PolyError("point dimension mismatch");
  Field f = field_;
  for (const auto& x : point) f = common_field(f, x.field());
  std::vector<std::vector<FieldElement>> powers(vars_.size());
  FieldElement acc = f->zero();
  for (const auto& [e, c] : terms_) {
    FieldElement t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(f->one());
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
      t *= pw[static_cast<std::size_t>(e[i])];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::partial_evaluate(std::size_t var, const FieldElement& value) const {
  Field f = common_field(field_, value.field());
  MultiPoly out(vars_, f);
  std::vector<FieldElement> pw{f->one()};
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(pw.size()) <= e[var]) pw.push_back(pw.back() * value);
    Exponents ne = e;
    ne[var] = 0;
    out.add_term(ne, c * pw[static_cast<std::size_t>(e[var])]);
  }
  return out;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw PolyError("variable list mismatch");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  if (field_ != o.field_) {
    Field f = common_field(field_, o.field_);
    *this = lift_to(f);
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  if (field_ != o.field_) {
    Field f = common_field(field_, o.field_);
    *this = lift_to(f);
  }
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  Field f = common_field(a.field_, b.field_);
  MultiPoly out(a.vars_, f);
  Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly operator*(const MultiPoly& a, const FieldElement& s) {
  Field f = common_field(a.field_, s.field());
  MultiPoly out(a.vars_, f);
  if (s.is_zero()) return out;
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, c * s);
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (it->first != e || it->second != c) return false;
    ++it;
  }
  return true;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw PolyError("negative power of a polynomial");
  MultiPoly result = MultiPoly::constant(vars_, field_->one());
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef;
    bool neg = false;
    if (c.is_rational()) {
      Rational q = c.rational_value();
      neg = sgn(q) < 0;
      if (neg) q = -q;
      coef = (q == 1 && !mono.empty()) ? "" : rational_to_string(q);
    } else {
      coef = "(" + c.to_string() + ")";
    }
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    out << coef;
    if (!coef.empty() && !mono.empty()) out << "*";
    out << mono;
  }
  return out.str();
}

MultiPoly derivative(const MultiPoly& f, const std::string& var) {
  const std::size_t k = f.var_index(var);
  MultiPoly out(f.variables(), f.field());
  for (const auto& [e, c] : f.terms()) {
    if (e[k] == 0) continue;
    Exponents ne = e;
    ne[k] -= 1;
    out.add_term(ne, c * FieldElement(static_cast<long>(e[k])));
  }
  return out;
}

MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& assignments) {
  if (assignments.empty()) return f;
  const MultiPoly& first = assignments.begin()->second;
  const auto& vars = first.variables();
  Field field = f.field();
  for (const auto& [name, p] : assignments) {
    if (p.variables() != vars) throw PolyError("assignment polynomials must share a variable list");
    field = common_field(field, p.field());
  }
  std::vector<MultiPoly> images;
  bool monomial_images = true;
  for (const auto& name : f.variables()) {
    auto it = assignments.find(name);
    if (it != assignments.end()) {
      images.push_back(it->second.lift_to(field));
    } else {
      auto pos = std::find(vars.begin(), vars.end(), name);
      if (pos == vars.end()) throw PolyError("variable '" + name + "' is neither assigned nor in the target list");
      images.push_back(MultiPoly::variable(vars, field, static_cast<std::size_t>(pos - vars.begin())));
    }
    if (images.back().num_terms() > 1) monomial_images = false;
  }
  for (const auto& [name, p] : assignments) f.var_index(name);

  MultiPoly out(vars, field);
  if (monomial_images) {
    bool any_zero = false;
    for (const auto& im : images) any_zero |= im.is_zero();
    for (const auto& [e, c] : f.terms()) {
      Exponents ne(vars.size(), 0);
      FieldElement coef = c.lift_to(field);
      bool vanishes = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (images[i].is_zero()) {
          vanishes = true;
          break;
        }
        const auto& [ie, ic] = *images[i].terms().begin();
        for (std::size_t j = 0; j < ne.size(); ++j) ne[j] += ie[j] * e[i];
        if (!ic.is_one()) coef *= ic.pow(e[i]);
      }
      if (!vanishes) out.add_term(ne, coef);
    }
    (void)any_zero;
    return out;
  }
  std::vector<std::vector<MultiPoly>> powers(images.size());
  for (const auto& [e, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(vars, c.lift_to(field));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(MultiPoly::constant(vars, field->one()));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[static_cast<std::size_t>(e[i])];
    }
    out += t;
  }
  return out;
}

MultiPoly linear_change(const MultiPoly& f, const std::vector<std::vector<FieldElement>>& matrix) {
  const auto& vars = f.variables();
  if (matrix.size() != vars.size()) throw PolyError("matrix size does not match variable count");
  Field field = f.field();
  for (const auto& row : matrix) {
    if (row.size() != vars.size()) throw PolyError("matrix must be square");
    for (const auto& x : row) field = common_field(field, x.field());
  }
  std::map<std::string, MultiPoly> assign;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    MultiPoly image(vars, field);
    for (std::size_t j = 0; j < vars.size(); ++j) {
      Exponents e(vars.size(), 0);
      e[j] = 1;
      image.add_term(e, matrix[i][j]);
    }
    assign.emplace(vars[i], std::move(image));
  }
  return substitute(f, assign);
}

std::optional<MultiPoly> try_divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw PolyError("division by zero polynomial");
  if (f.variables() != g.variables()) throw PolyError("variable list mismatch");
  Field field = common_field(f.field(), g.field());
  MultiPoly q(f.variables(), field);
  MultiPoly r = f.lift_to(field);
  const Exponents& ge = g.leading_exponents();
  const FieldElement ginv = g.leading_coefficient().inverse();
  const std::size_t n = ge.size();
  while (!r.is_zero()) {
    const Exponents& re = r.leading_exponents();
    Exponents te(n);
    for (std::size_t i = 0; i < n; ++i) {
      te[i] = re[i] - ge[i];
      if (te[i] < 0) return std::nullopt;
    }
    const FieldElement tc = r.leading_coefficient() * ginv;
    q.add_term(te, tc);
    Exponents e(n);
    for (const auto& [gexp, gc] : g.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = gexp[i] + te[i];
      r.add_term(e, -(tc * gc));
    }
  }
  return q;
}

MultiPoly divide_exact(const MultiPoly& f, const MultiPoly& g) {
  auto q = try_divide(f, g);
  if (!q) throw PolyError("inexact polynomial division");
  return *q;
}

bool is_univariate_in(const MultiPoly& f, std::size_t var) {
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) return false;
  return true;
}

UPoly to_upoly(const MultiPoly& f, std::size_t var) {
  if (!is_univariate_in(f, var)) throw PolyError("polynomial is not univariate in " + f.variables()[var]);
  std::vector<FieldElement> c(static_cast<std::size_t>(std::max(f.degree_in(var), -1) + 1), f.field()->zero());
  for (const auto& [e, x] : f.terms()) c[static_cast<std::size_t>(e[var])] = x;
  return UPoly(f.field(), std::move(c));
}

MultiPoly from_upoly(const UPoly& p, const std::vector<std::string>& vars, std::size_t var) {
  MultiPoly out(vars, p.field());
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    Exponents e(vars.size(), 0);
    e[var] = static_cast<int>(k);
    out.add_term(e, p.coeffs()[k]);
  }
  return out;
}

namespace {

// Coefficient rings for the subresultant PRS.
struct FieldRing {
  using T = FieldElement;
  Field f;
  T zero() const { return f->zero(); }
  T one() const { return f->one(); }
  static bool is_zero(const T& a) { return a.is_zero(); }
  static T div(const T& a, const T& b) { return a / b; }
};

struct UPolyRing {
  using T = UPoly;
  Field f;
  T zero() const { return UPoly(f); }
  T one() const { return UPoly::constant(f->one()); }
  static bool is_zero(const T& a) { return a.is_zero(); }
  static T div(const T& a, const T& b) { return a / b; }
};

struct MultiRing {
  using T = MultiPoly;
  std::vector<std::string> vars;
  Field f;
  T zero() const { return MultiPoly(vars, f); }
  T one() const { return MultiPoly::constant(vars, f->one()); }
  static bool is_zero(const T& a) { return a.is_zero(); }
  static T div(const T& a, const T& b) { return divide_exact(a, b); }
};

template <class Ring>
typename Ring::T ring_pow(const Ring& ring, typename Ring::T a, long e) {
  typename Ring::T r = ring.one();
  while (e > 0) {
    if (e & 1) r = r * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return r;
}

template <class T>
void trim_vec(std::vector<T>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

template <class Ring>
std::vector<typename Ring::T> pseudo_remainder(const Ring& ring, const std::vector<typename Ring::T>& a,
                                               const std::vector<typename Ring::T>& b) {
  using T = typename Ring::T;
  std::vector<T> r = a;
  const std::size_t db = b.size() - 1;
  const T& lb = b.back();
  const std::size_t steps = a.size() - db;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t k = r.size() - 1;
    T c = r[k];
    r.pop_back();
    for (auto& x : r) x = x * lb;
    if (!Ring::is_zero(c))
      for (std::size_t i = 0; i < db; ++i) r[k - db + i] = r[k - db + i] - c * b[i];
  }
  trim_vec(r);
  (void)ring;
  return r;
}

template <class Ring>
typename Ring::T subresultant(const Ring& ring, std::vector<typename Ring::T> a, std::vector<typename Ring::T> b) {
  using T = typename Ring::T;
  trim_vec(a);
  trim_vec(b);
  if (a.empty() || b.empty()) return ring.zero();
  long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
  int s = 1;
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
    if ((da % 2 == 1) && (db % 2 == 1)) s = -s;
  }
  if (db == 0) {
    T r = ring_pow(ring, b[0], da);
    return s < 0 ? T(-r) : r;
  }
  T g = ring.one(), h = ring.one();
  while (true) {
    const long delta = da - db;
    if ((da % 2 == 1) && (db % 2 == 1)) s = -s;
    std::vector<T> r = pseudo_remainder(ring, a, b);
    a = std::move(b);
    da = db;
    if (r.empty()) return ring.zero();
    const T divisor = g * ring_pow(ring, h, delta);
    for (auto& x : r) x = Ring::div(x, divisor);
    b = std::move(r);
    db = static_cast<long>(b.size()) - 1;
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = Ring::div(ring_pow(ring, g, delta), ring_pow(ring, h, delta - 1));
    }
    if (db == 0) {
      T res = (da == 1) ? b[0] : Ring::div(ring_pow(ring, b[0], da), ring_pow(ring, h, da - 1));
      return s < 0 ? T(-res) : res;
    }
  }
}

}  // namespace

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var) {
  if (f.variables() != g.variables()) throw PolyError("variable list mismatch");
  const std::size_t k = f.var_index(var);
  if (f.degree_in(k) <= 0 || g.degree_in(k) <= 0)
    throw PolyError("resultant needs positive degree in " + var + " for both inputs");
  Field field = common_field(f.field(), g.field());
  const auto& vars = f.variables();
  std::set<std::size_t> others;
  for (const MultiPoly* p : {&f, &g})
    for (const auto& [e, c] : p->terms())
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != k && e[i] != 0) others.insert(i);
  const auto fc = f.lift_to(field).coefficients_in(k);
  const auto gc = g.lift_to(field).coefficients_in(k);

  if (others.empty()) {
    FieldRing ring{field};
    std::vector<FieldElement> a, b;
    for (const auto& c : fc) a.push_back(c.constant_term());
    for (const auto& c : gc) b.push_back(c.constant_term());
    return MultiPoly::constant(vars, subresultant(ring, a, b));
  }
  if (others.size() == 1) {
    const std::size_t w = *others.begin();
    UPolyRing ring{field};
    std::vector<UPoly> a, b;
    for (const auto& c : fc) a.push_back(to_upoly(c, w));
    for (const auto& c : gc) b.push_back(to_upoly(c, w));
    return from_upoly(subresultant(ring, a, b), vars, w);
  }
  MultiRing ring{vars, field};
  return subresultant(ring, fc, gc);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars, Field field)
      : text_(text), vars_(vars), field_(field) {
    const auto names = field->generator_names();
    const auto levels = field->tower();
    for (std::size_t i = 0; i < names.size(); ++i) generators_.emplace(names[i], levels[i]->generator().lift_to(field));
  }

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PolyError("parse error at position " + std::to_string(pos_) + ": " + msg);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_power() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return true;
    }
    if (pos_ + 1 < text_.size() && text_[pos_] == '*' && text_[pos_ + 1] == '*') {
      pos_ += 2;
      return true;
    }
    return false;
  }
  bool at_product_star() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == '*' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '*');
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      if (at_product_star()) {
        ++pos_;
        acc = acc * unary();
      } else if (accept('/')) {
        MultiPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc = acc * d.constant_term().inverse();
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept_power()) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      return base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!accept(')')) fail("missing ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return MultiPoly::constant(vars_, field_->from_rational(Rational(Integer(std::string(text_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return MultiPoly::variable(vars_, field_, i);
      if (auto it = generators_.find(name); it != generators_.end()) return MultiPoly::constant(vars_, it->second);
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& vars_;
  Field field_;
  std::map<std::string, FieldElement> generators_;
};

std::vector<std::string> identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\''))
        ++i;
      out.emplace_back(text.substr(start, i - start));
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars, Field field) {
  return Parser(text, vars, field).parse();
}

nlohmann::json to_canonical(const MultiPoly& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) out.push_back({e, c.serialize()});
  return out;
}

MultiPoly from_canonical(const nlohmann::json& j, const std::vector<std::string>& vars, Field field) {
  MultiPoly out(vars, field);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) throw PolyError("canonical term must be [exponents, coordinates]");
    Exponents e = term[0].get<Exponents>();
    auto coords = term[1].get<std::vector<std::string>>();
    out.add_term(e, FieldElement::deserialize(field, coords));
  }
  return out;
}

Field field_from_json(const nlohmann::json& j) {
  Field f = NumberField::rationals();
  const auto names = j.value("vars", std::vector<std::string>{});
  const auto polys = j.value("minpolys", std::vector<std::string>{});
  if (names.size() != polys.size()) throw PolyError("field definition needs one minimal polynomial per generator");
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto known = f->generator_names();
    std::string free_var;
    for (const auto& id : identifiers(polys[k])) {
      if (std::find(known.begin(), known.end(), id) != known.end()) continue;
      if (!free_var.empty() && free_var != id) throw PolyError("minimal polynomial '" + polys[k] + "' has two free variables");
      free_var = id;
    }
    if (free_var.empty()) throw PolyError("minimal polynomial '" + polys[k] + "' has no variable");
    MultiPoly p = parse_poly(polys[k], {free_var}, f);
    UPoly u = to_upoly(p, 0);
    f = NumberField::create(f, names[k], u.coeffs());
  }
  return f;
}

nlohmann::json field_to_json(Field f) {
  nlohmann::json out;
  out["vars"] = f->generator_names();
  std::vector<std::string> polys;
  for (Field level : f->tower()) polys.push_back(UPoly(level->base(), level->minpoly()).to_string(level->variable()));
  out["minpolys"] = polys;
  return out;
}

}  // namespace octic
