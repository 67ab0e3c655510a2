#include <algorithm>
#include <numeric>
#include <sstream>

#include "octic/singular.hpp"

namespace octic {

namespace {

const std::vector<std::string> kLocalVars{"u", "v"};

Field join_fields(Field f, const std::vector<FieldElement>& xs) {
  for (const auto& x : xs) f = common_field(f, x.field());
  return f;
}

MultiPoly local_var(Field field, std::size_t i) { return MultiPoly::variable(kLocalVars, field, i); }

MultiPoly local_const(Field field, const FieldElement& c) { return MultiPoly::constant(kLocalVars, c.lift_to(field)); }

// Coefficients of a binary form of degree m: c[i] multiplies u^(m-i) v^i.
std::vector<FieldElement> binary_coefficients(const MultiPoly& form, int m) {
  std::vector<FieldElement> c(static_cast<std::size_t>(m + 1), form.field()->zero());
  for (const auto& [e, x] : form.terms()) c[static_cast<std::size_t>(e[1])] = x;
  return c;
}

std::string describe_cone(const TangentCone& cone) {
  std::ostringstream os;
  os << "m=" << cone.multiplicity << ", cone " << cone.form.to_string();
  if (cone.perfect_power && cone.line)
    os << " = c*(" << (*cone.line)[0].to_string() << "*u + " << (*cone.line)[1].to_string() << "*v)^" << cone.multiplicity;
  else if (cone.distinct_lines == 2)
    os << ", two distinct lines";
  return os.str();
}

// g(U, V) = f(u, v) where U = L(u, v) and V is a complementary coordinate.
MultiPoly straighten(const MultiPoly& f, const std::array<FieldElement, 2>& line) {
  Field field = join_fields(f.field(), {line[0], line[1]});
  MultiPoly U = local_var(field, 0), V = local_var(field, 1);
  std::map<std::string, MultiPoly> assign;
  if (!line[0].is_zero()) {
    const FieldElement inv = line[0].lift_to(field).inverse();
    assign.emplace("u", (U - V * line[1].lift_to(field)) * inv);
    assign.emplace("v", V);
  } else {
    assign.emplace("u", V);
    assign.emplace("v", U * line[1].lift_to(field).inverse());
  }
  return substitute(f.lift_to(field), assign);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Smooth: return "SMOOTH";
    case Verdict::A1: return "A1";
    case Verdict::A2: return "A2";
    case Verdict::E6: return "E6";
    case Verdict::Composite3Branch: return "COMPOSITE_3BRANCH";
    case Verdict::Other: return "OTHER";
  }
  return "OTHER";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Smooth, Verdict::A1, Verdict::A2, Verdict::E6, Verdict::Composite3Branch, Verdict::Other})
    if (to_string(v) == s) return v;
  throw SingularError("unknown verdict '" + s + "'");
}

CurveGerm::CurveGerm(const MultiPoly& f, const std::vector<FieldElement>& point) {
  if (f.nvars() != 2) throw SingularError("a curve germ needs a polynomial in two variables");
  if (point.size() != 2) throw SingularError("a curve germ needs a point with two coordinates");
  Field field = join_fields(f.field(), point);
  std::map<std::string, MultiPoly> assign;
  for (std::size_t i = 0; i < 2; ++i)
    assign.emplace(f.variables()[i], local_var(field, i) + local_const(field, point[i]));
  local_ = substitute(f.lift_to(field), assign);
  for (const auto& x : point) point_.push_back(x.lift_to(field));
}

CurveGerm CurveGerm::at_origin(const MultiPoly& f) {
  return CurveGerm(f, {f.field()->zero(), f.field()->zero()});
}

CurveGerm CurveGerm::at_projective_point(const MultiPoly& f, const std::vector<FieldElement>& point) {
  if (f.nvars() != 3) throw SingularError("projective germs need a polynomial in three variables");
  if (point.size() != 3) throw SingularError("projective points need three coordinates");
  int chart = -1;
  for (int i = 2; i >= 0; --i)
    if (!point[static_cast<std::size_t>(i)].is_zero()) {
      chart = i;
      break;
    }
  if (chart < 0) throw SingularError("[0:0:0] is not a projective point");
  Field field = join_fields(f.field(), point);
  const FieldElement scale = point[static_cast<std::size_t>(chart)].lift_to(field).inverse();
  std::map<std::string, MultiPoly> assign;
  std::size_t local = 0;
  CurveGerm g;
  for (std::size_t i = 0; i < 3; ++i) {
    if (static_cast<int>(i) == chart) {
      assign.emplace(f.variables()[i], local_const(field, field->one()));
      continue;
    }
    const FieldElement p = point[i].lift_to(field) * scale;
    assign.emplace(f.variables()[i], local_var(field, local) + local_const(field, p));
    g.point_.push_back(p);
    ++local;
  }
  g.local_ = substitute(f.lift_to(field), assign);
  g.chart_ = chart;
  return g;
}

TangentCone multiplicity_and_cone(const CurveGerm& germ) {
  const MultiPoly& f = germ.local();
  if (f.is_zero()) throw SingularError("germ of the zero polynomial");
  TangentCone cone;
  const int m = static_cast<int>(f.min_total_degree());
  cone.multiplicity = m;
  cone.form = f.homogeneous_part(m);
  if (m == 0) return cone;
  Field field = f.field();
  const auto c = binary_coefficients(cone.form, m);
  if (m == 1) {
    cone.perfect_power = true;
    cone.line = std::array<FieldElement, 2>{c[0], c[1]};
    cone.distinct_lines = 1;
    return cone;
  }
  if (m == 2) {
    const FieldElement disc = c[1] * c[1] - FieldElement(4) * c[0] * c[2];
    cone.perfect_power = disc.is_zero();
    cone.distinct_lines = cone.perfect_power ? 1 : 2;
  } else if (m == 3) {
    const MultiPoly fu = derivative(cone.form, "u"), fv = derivative(cone.form, "v");
    const MultiPoly hessian = derivative(fu, "u") * derivative(fv, "v") - derivative(fu, "v") * derivative(fu, "v");
    cone.perfect_power = hessian.is_zero();
    if (cone.perfect_power) cone.distinct_lines = 1;
  } else {
    // Direct comparison with c0*(u + t v)^m or cm*v^m.
    MultiPoly candidate(kLocalVars, field);
    if (!c[0].is_zero()) {
      const FieldElement t = c[1] / (FieldElement(static_cast<long>(m)) * c[0]);
      candidate = (local_var(field, 0) + local_var(field, 1) * t).pow(m) * c[0];
    } else {
      candidate = local_var(field, 1).pow(m) * c[static_cast<std::size_t>(m)];
    }
    cone.perfect_power = candidate == cone.form;
    if (cone.perfect_power) cone.distinct_lines = 1;
  }
  if (cone.perfect_power) {
    if (!c[0].is_zero())
      cone.line = std::array<FieldElement, 2>{field->one(), c[1] / (FieldElement(static_cast<long>(m)) * c[0])};
    else
      cone.line = std::array<FieldElement, 2>{field->zero(), field->one()};
  }
  return cone;
}

int kouchnirenko_segment(int a, int b) {
  // Twice the area under the segment is a*b.
  return a * b - a - b + 1;
}

nlohmann::json SingularityCertificate::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  j["multiplicity"] = multiplicity;
  j["cone"] = cone;
  nlohmann::json seg = nlohmann::json::array();
  for (const auto& p : newton_segment) seg.push_back({p[0], p[1]});
  j["newton_segment"] = seg;
  if (newton_number) j["newton_number"] = *newton_number;
  if (!contacts.empty()) j["contacts"] = contacts;
  if (tangent_intersection) j["tangent_intersection"] = *tangent_intersection;
  if (tangent_contact_sum) j["tangent_contact_sum"] = *tangent_contact_sum;
  if (!reason.empty()) j["reason"] = reason;
  j["audit"] = audit;
  return j;
}

SingularityCertificate certify_type(const CurveGerm& germ, Verdict expected) {
  if (expected != Verdict::A1 && expected != Verdict::A2 && expected != Verdict::E6)
    throw SingularError("certify_type supports A1, A2 and E6");
  SingularityCertificate cert;
  const MultiPoly& f = germ.local();
  cert.audit.push_back("expected " + to_string(expected) + "; local equation " + f.to_string());
  auto fail = [&](Verdict v, std::string why) {
    cert.verdict = v;
    cert.reason = std::move(why);
    cert.audit.push_back("rejected: " + cert.reason);
    return cert;
  };

  const TangentCone cone = multiplicity_and_cone(germ);
  cert.multiplicity = cone.multiplicity;
  if (cone.multiplicity == 0) return fail(Verdict::Other, "point not on curve");
  cert.audit.push_back("f and its partials vanish at the point");
  if (cone.multiplicity == 1) return fail(Verdict::Smooth, "point smooth");
  cert.cone = describe_cone(cone);
  cert.audit.push_back(cert.cone);

  const int want_m = expected == Verdict::E6 ? 3 : 2;
  if (cone.multiplicity != want_m)
    return fail(Verdict::Other, "multiplicity mismatch: m=" + std::to_string(cone.multiplicity) + ", expected " +
                                    std::to_string(want_m));

  if (expected == Verdict::A1) {
    if (cone.distinct_lines != 2) return fail(Verdict::Other, "tangent cone is a double line");
    cert.verdict = Verdict::A1;
    cert.newton_segment = {{2, 0}, {0, 2}};
    cert.newton_number = kouchnirenko_segment(2, 2);
    cert.audit.push_back("quadratic cone with nonzero discriminant: ordinary node");
    return cert;
  }

  if (!cone.perfect_power || !cone.line)
    return fail(Verdict::Other, want_m == 3 ? "cone not a perfect cube (binary-cubic Hessian nonzero)"
                                            : "cone not a perfect square (discriminant nonzero)");

  const int k = expected == Verdict::E6 ? 4 : 3;
  const MultiPoly g = straighten(f, *cone.line);
  cert.audit.push_back("after L -> u: " + g.to_string());
  const FieldElement cv = g.coefficient({0, k});
  if (cv.is_zero())
    return fail(Verdict::Other, "v^" + std::to_string(k) + " coefficient zero: degenerates beyond expected type");
  for (const auto& [e, c] : g.terms()) {
    if (e[0] * k + e[1] * want_m < want_m * k)
      return fail(Verdict::Other, "monomial below the Newton segment (internal inconsistency)");
  }
  cert.verdict = expected;
  cert.newton_segment = {{want_m, 0}, {0, k}};
  cert.newton_number = kouchnirenko_segment(want_m, k);
  std::ostringstream note;
  note << "u^" << want_m << " coefficient " << g.coefficient({want_m, 0}).to_string() << ", v^" << k << " coefficient "
       << cv.to_string() << "; no monomial lies below the segment (" << want_m << ",0)-(0," << k
       << "), which has no interior lattice points, so the germ is Newton-nondegenerate with Newton number "
       << *cert.newton_number << " and topologically u^" << want_m << " = v^" << k;
  cert.audit.push_back(note.str());
  return cert;
}

FieldElement determinant3(const std::array<ProjectiveLine, 3>& r) {
  return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
         r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

bool lines_concurrent(const std::vector<ProjectiveLine>& lines) {
  if (lines.size() < 3) return true;
  Field field = NumberField::rationals();
  for (const auto& l : lines) field = join_fields(field, {l[0], l[1], l[2]});
  // Rank of the coefficient matrix is at most 2.
  std::vector<std::vector<FieldElement>> m;
  for (const auto& l : lines) m.push_back({l[0].lift_to(field), l[1].lift_to(field), l[2].lift_to(field)});
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 3 && rank < m.size(); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      const FieldElement q = m[r][col] / m[rank][col];
      for (std::size_t c = 0; c < 3; ++c) m[r][c] -= q * m[rank][c];
    }
    ++rank;
  }
  return rank <= 2;
}

TangentLines tangent_lines_and_concurrency(const MultiPoly& f, const std::vector<std::vector<FieldElement>>& points) {
  TangentLines out;
  for (const auto& p : points) {
    const CurveGerm germ = CurveGerm::at_projective_point(f, p);
    const TangentCone cone = multiplicity_and_cone(germ);
    if (cone.multiplicity < 2 || !cone.perfect_power || !cone.line)
      throw SingularError("point with non-unique tangent");
    const int k = germ.chart();
    Field field = germ.local().field();
    ProjectiveLine line{field->zero(), field->zero(), field->zero()};
    std::size_t local = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (static_cast<int>(i) == k) continue;
      const FieldElement a = (*cone.line)[local].lift_to(field);
      line[i] = a;
      line[static_cast<std::size_t>(k)] -= a * germ.point()[local];
      ++local;
    }
    for (const auto& c : line)
      if (!c.is_zero()) {
        const FieldElement inv = c.inverse();
        for (auto& x : line) x *= inv;
        break;
      }
    out.lines.push_back(line);
  }
  out.concurrent = lines_concurrent(out.lines);
  return out;
}

Rational weighted_bezout(long d1, long d2, const WeightVector& w) {
  if (d1 < 0 || d2 < 0) throw SingularError("degrees must be nonnegative");
  return Rational(d1 * d2) / Rational(w.p * w.q * w.r);
}

}  // namespace octic
