#include <random>
#include <sstream>

#include "octic/factor.hpp"
#include "octic/singular.hpp"

namespace octic {

namespace {

using Matrix = std::vector<std::vector<FieldElement>>;

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ", " : "") << "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j].to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool invertible3(const Matrix& m) {
  std::array<ProjectiveLine, 3> rows;
  for (std::size_t i = 0; i < 3; ++i) rows[i] = {m[i][0], m[i][1], m[i][2]};
  return !determinant3(rows).is_zero();
}

UPoly gcd_all(const std::vector<UPoly>& polys) {
  UPoly g;
  bool first = true;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = first ? p.monic() : gcd(g, p);
    first = false;
  }
  return g;  // zero when every input vanished
}

struct ChartOutcome {
  SmoothStatus status;
  std::vector<std::string> notes;
};

// Common zeros of the partials of a y-monic model: line z=0 exactly, chart z=1 by resultants.
ChartOutcome examine(const MultiPoly& f, int degree_cap) {
  ChartOutcome out{SmoothStatus::Smooth, {}};
  const auto& vars = f.variables();
  Field field = f.field();
  std::vector<MultiPoly> partials;
  for (const auto& name : vars) {
    MultiPoly d = derivative(f, name);
    if (!d.is_zero()) partials.push_back(std::move(d));
  }

  // Line z = 0: the point [1:0:0] and the points [x:1:0].
  {
    bool all_vanish = true;
    for (const auto& p : partials)
      if (!p.evaluate({field->one(), field->zero(), field->zero()}).is_zero()) all_vanish = false;
    if (all_vanish) {
      out.notes.push_back("partials vanish at [1:0:0]");
      out.status = SmoothStatus::Singular;
      return out;
    }
    std::vector<UPoly> on_line;
    for (const auto& p : partials)
      on_line.push_back(to_upoly(p.partial_evaluate(2, field->zero()).partial_evaluate(1, field->one()), 0));
    const UPoly g = gcd_all(on_line);
    if (g.is_zero() || g.degree() >= 1) {
      out.notes.push_back("partials share a zero on z=0: gcd " + (g.is_zero() ? std::string("0") : g.to_string("x")));
      out.status = SmoothStatus::Singular;
      return out;
    }
    out.notes.push_back("no common zero on z=0");
  }

  // Chart z = 1.
  std::vector<MultiPoly> affine;
  for (const auto& p : partials) affine.push_back(p.partial_evaluate(2, field->one()));
  if (affine.size() == 1) {
    out.notes.push_back("a single nonzero partial: its zero set is a common zero locus");
    out.status = SmoothStatus::Singular;
    return out;
  }
  std::vector<UPoly> res;
  for (std::size_t a = 0; a < affine.size(); ++a)
    for (std::size_t b = a + 1; b < affine.size(); ++b) {
      const MultiPoly r = resultant(affine[a], affine[b], vars[1]);
      std::ostringstream os;
      os << "Res_" << vars[1] << "(d" << a << ", d" << b << ") has degree " << r.total_degree();
      out.notes.push_back(os.str());
      if (r.is_zero()) {
        out.notes.push_back("partials share a component");
        out.status = SmoothStatus::Singular;
        return out;
      }
      res.push_back(to_upoly(r.partial_evaluate(2, field->one()), 0));
    }
  const UPoly h = gcd_all(res);
  if (h.degree() < 1) {
    out.notes.push_back("gcd of resultants is 1: no common zero in z=1");
    return out;
  }
  out.notes.push_back("gcd of resultants " + h.to_string("x") + "; checking its factors");
  FactorOptions fo;
  fo.degree_cap = degree_cap;
  const FactorResult fr = factor(squarefree_part(h), fo);
  if (!fr.complete()) {
    out.notes.push_back("gcd has a factor beyond the degree cap");
    out.status = SmoothStatus::Inconclusive;
    return out;
  }
  for (const auto& sf : fr.irreducible) {
    const UPoly& q = sf.factor;
    FieldElement x0;
    Field ext = field;
    if (q.degree() == 1) {
      x0 = -q.coeff(0);
    } else {
      try {
        ext = NumberField::create(field, "xr", q.coeffs());
      } catch (const FieldError&) {
        out.notes.push_back("cannot adjoin a root of " + q.to_string("x"));
        out.status = SmoothStatus::Inconclusive;
        return out;
      }
      x0 = ext->generator();
    }
    std::vector<UPoly> fibre;
    for (const auto& a : affine) {
      const MultiPoly s = a.lift_to(ext).partial_evaluate(0, x0);
      fibre.push_back(to_upoly(s.partial_evaluate(2, ext->one()), 1));
    }
    const UPoly g = gcd_all(fibre);
    if (g.is_zero() || g.degree() >= 1) {
      out.notes.push_back("common zero over the root of " + q.to_string("x"));
      out.status = SmoothStatus::Singular;
      return out;
    }
    out.notes.push_back("factor " + q.to_string("x") + " is spurious");
  }
  return out;
}

}  // namespace

nlohmann::json SmoothnessCertificate::to_json() const {
  const char* s = status == SmoothStatus::Smooth ? "smooth" : status == SmoothStatus::Singular ? "singular" : "inconclusive";
  return {{"status", s}, {"witness", witness}};
}

SmoothnessCertificate certify_smooth_projective(const MultiPoly& f, const SmoothnessOptions& opts) {
  if (f.nvars() != 3) throw SingularError("projective smoothness needs three variables");
  const DegreeInfo deg = f.degree();
  if (f.is_zero() || !deg.homogeneous) throw SingularError("polynomial is not homogeneous");
  SmoothnessCertificate cert;
  if (deg.degree == 0) throw SingularError("constant polynomial defines no curve");
  if (deg.degree == 1) {
    cert.status = SmoothStatus::Smooth;
    cert.witness.push_back("a line is smooth");
    return cert;
  }
  Field field = f.field();
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<long> entry(-3, 3);
  Matrix identity(3, std::vector<FieldElement>(3, field->zero()));
  for (std::size_t i = 0; i < 3; ++i) identity[i][i] = field->one();

  for (int attempt = 0; attempt < opts.attempts; ++attempt) {
    // Find coordinates in which [0:1:0] is not a zero of any nonzero partial.
    Matrix m = identity;
    MultiPoly g;
    for (int tries = 0;; ++tries) {
      if (attempt > 0 || tries > 0) {
        do {
          for (auto& row : m)
            for (auto& x : row) x = FieldElement(entry(rng)).lift_to(field);
        } while (!invertible3(m));
      }
      g = linear_change(f, m);
      bool ok = true;
      for (const auto& name : g.variables()) {
        const MultiPoly d = derivative(g, name);
        if (!d.is_zero() && d.evaluate({field->zero(), field->one(), field->zero()}).is_zero()) ok = false;
      }
      if (ok) break;
      if (tries > 200) throw SingularError("no admissible coordinate change found");
    }
    cert.witness.push_back("attempt " + std::to_string(attempt + 1) + ": coordinates " + matrix_text(m));
    ChartOutcome oc = examine(g, opts.degree_cap);
    for (auto& n : oc.notes) cert.witness.push_back("  " + n);
    if (oc.status != SmoothStatus::Inconclusive) {
      cert.status = oc.status;
      return cert;
    }
  }
  cert.status = SmoothStatus::Inconclusive;
  return cert;
}

}  // namespace octic
