#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>

#include "octic/curves.hpp"
#include "octic/factor.hpp"

namespace octic {

namespace {

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw CurveError("cannot open " + p.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CurveError(p.string() + ": " + e.what());
  }
}

std::vector<std::string> serialize_point(const std::vector<FieldElement>& p) {
  std::vector<std::string> out;
  for (const auto& c : p) out.push_back(c.to_string());
  return out;
}

Field join(Field f, const std::vector<FieldElement>& xs) {
  for (const auto& x : xs) f = common_field(f, x.field());
  return f;
}

std::string status_word(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("OCTIC_DATA"); env && *env) return env;
  return OCTIC_DATA_DIR;
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  const auto dir = data_dir() / "curves";
  if (!std::filesystem::exists(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

Matrix3 parse_matrix(const std::vector<std::vector<std::string>>& rows, Field field) {
  if (rows.size() != 3) throw CurveError("automorphism matrices are 3x3");
  Matrix3 out;
  for (const auto& row : rows) {
    if (row.size() != 3) throw CurveError("automorphism matrices are 3x3");
    std::vector<FieldElement> r;
    for (const auto& s : row) {
      const MultiPoly c = parse_poly(s, {}, field);
      r.push_back(c.is_zero() ? field->zero() : c.constant_term());
    }
    out.push_back(std::move(r));
  }
  return out;
}

Matrix3 diagonal_action(const std::vector<FieldElement>& diag) {
  if (diag.size() != 3) throw CurveError("diagonal actions need three entries");
  Field f = join(NumberField::rationals(), diag);
  Matrix3 out(3, std::vector<FieldElement>(3, f->zero()));
  for (std::size_t i = 0; i < 3; ++i) out[i][i] = diag[i].lift_to(f);
  return out;
}

Matrix3 matrix_product(const Matrix3& a, const Matrix3& b) {
  Field f = NumberField::rationals();
  for (const auto& r : a) f = join(f, r);
  for (const auto& r : b) f = join(f, r);
  Matrix3 out(3, std::vector<FieldElement>(3, f->zero()));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) out[i][j] += a[i][k].lift_to(f) * b[k][j].lift_to(f);
  return out;
}

std::vector<FieldElement> apply_matrix(const Matrix3& a, const std::vector<FieldElement>& p) {
  Field f = join(NumberField::rationals(), p);
  for (const auto& r : a) f = join(f, r);
  std::vector<FieldElement> out(3, f->zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += a[i][j].lift_to(f) * p[j].lift_to(f);
  return out;
}

CurveRecord curve_from_json(const nlohmann::json& j) {
  CurveRecord c;
  c.name = j.at("name").get<std::string>();
  c.description = j.value("description", "");
  c.equation = j.value("equation", "");
  c.variables = j.value("variables", std::vector<std::string>{"x", "y", "z"});
  c.field = field_from_json(j.value("field", nlohmann::json::object()));
  c.polynomial = from_canonical(j.at("polynomial"), c.variables, c.field);
  if (!c.polynomial.degree().homogeneous) throw CurveError(c.name + ": polynomial is not homogeneous");
  c.point_field = c.field;
  if (j.contains("points")) {
    const auto& pts = j.at("points");
    if (pts.contains("field")) c.point_field = common_field(c.field, field_from_json(pts.at("field")));
    c.derivation = pts.value("derivation", "");
    for (const auto& p : pts.at("list")) {
      DeclaredPoint d;
      d.label = p.at("label").get<std::string>();
      for (const auto& coord : p.at("coords"))
        d.coords.push_back(FieldElement::deserialize(c.point_field, coord.get<std::vector<std::string>>()));
      d.expected = verdict_from_string(p.at("expected").get<std::string>());
      c.points.push_back(std::move(d));
    }
  }
  for (const auto& a : j.value("automorphisms", nlohmann::json::array())) {
    DeclaredMap m;
    m.name = a.at("name").get<std::string>();
    m.matrix = parse_matrix(a.at("matrix").get<std::vector<std::vector<std::string>>>(), c.field);
    m.expect_invariant = a.value("invariant", true);
    m.orbit_sizes = a.value("orbit_sizes", std::vector<int>{});
    c.automorphisms.push_back(std::move(m));
  }
  if (j.contains("smooth")) c.expect_smooth = j.at("smooth").get<bool>();
  c.tangents_concurrent = j.value("tangents_concurrent", false);
  if (j.contains("genus")) c.genus = j.at("genus").get<int>();

  // A curve given over an extension together with a coordinate change that makes it rational
  // over a subfield: store the changed form, keep the original as the source.
  if (j.contains("rationalize")) {
    const auto& r = j.at("rationalize");
    std::map<std::string, MultiPoly> assign;
    for (const auto& [var, text] : r.at("substitution").items())
      assign.emplace(var, parse_poly(text.get<std::string>(), c.variables, c.field));
    const Field target = field_from_json(r.at("target_field"));
    const MultiPoly changed = substitute(c.polynomial, assign);
    if (!changed.lies_in(target)) throw CurveError(c.name + ": rationalized polynomial escapes " + target->describe());
    c.source_polynomial = c.polynomial;
    c.polynomial = changed.project_to(target);
    c.field = target;
  }
  return c;
}

nlohmann::json curve_to_json(const CurveRecord& c) {
  nlohmann::json j;
  j["name"] = c.name;
  if (!c.description.empty()) j["description"] = c.description;
  if (!c.equation.empty()) j["equation"] = c.equation;
  j["variables"] = c.variables;
  j["field"] = field_to_json(c.field);
  j["polynomial"] = to_canonical(c.polynomial);
  if (!c.points.empty()) {
    nlohmann::json pts;
    pts["field"] = field_to_json(c.point_field);
    if (!c.derivation.empty()) pts["derivation"] = c.derivation;
    pts["list"] = nlohmann::json::array();
    for (const auto& p : c.points) {
      nlohmann::json coords = nlohmann::json::array();
      for (const auto& x : p.coords) coords.push_back(x.lift_to(c.point_field).serialize());
      pts["list"].push_back({{"label", p.label}, {"coords", coords}, {"expected", to_string(p.expected)}});
    }
    j["points"] = pts;
  }
  if (!c.automorphisms.empty()) {
    j["automorphisms"] = nlohmann::json::array();
    for (const auto& m : c.automorphisms) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : m.matrix) rows.push_back(serialize_point(r));
      nlohmann::json a{{"name", m.name}, {"matrix", rows}, {"invariant", m.expect_invariant}};
      if (!m.orbit_sizes.empty()) a["orbit_sizes"] = m.orbit_sizes;
      j["automorphisms"].push_back(a);
    }
  }
  if (c.expect_smooth) j["smooth"] = *c.expect_smooth;
  if (c.tangents_concurrent) j["tangents_concurrent"] = true;
  if (c.genus) j["genus"] = *c.genus;
  return j;
}

CurveRecord corpus_get(const std::string& name) {
  std::string base = name, root;
  if (auto open = name.find('('); open != std::string::npos) {
    if (name.back() != ')') throw CurveError("malformed curve name '" + name + "'");
    base = name.substr(0, open);
    root = name.substr(open + 1, name.size() - open - 2);
  }
  const auto path = data_dir() / "curves" / (base + ".json");
  if (!std::filesystem::exists(path)) throw CurveError("unknown curve '" + base + "'");
  CurveRecord c = curve_from_json(read_json(path));
  if (!root.empty()) {
    static const std::set<std::string> labels{"eta1", "eta2", "eta3", "eta4"};
    if (!labels.count(root)) throw CurveError("root label must be one of eta1..eta4");
    if (c.field->is_rational()) throw CurveError(base + " is defined over Q and takes no root label");
    c.root_label = root;
  }
  return c;
}

MultiPoly kummer_pullback(const MultiPoly& f, const std::vector<int>& exponents) {
  if (exponents.size() != f.nvars()) throw CurveError("one exponent per variable");
  for (int n : exponents)
    if (n < 1) throw CurveError("pullback exponent must be at least 1");
  MultiPoly out(f.variables(), f.field());
  for (const auto& [e, c] : f.terms()) {
    Exponents ne = e;
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] *= exponents[i];
    out.add_term(ne, c);
  }
  return out;
}

MultiPoly kummer_pullback(const MultiPoly& f, int n) {
  return kummer_pullback(f, std::vector<int>(f.nvars(), n));
}

MultiPoly theta_pullback(const MultiPoly& f) {
  if (f.nvars() != 3) throw CurveError("the cubic map acts on three variables");
  MultiPoly out(f.variables(), f.field());
  for (const auto& [e, c] : f.terms()) out.add_term({3 * e[0] + e[2], 3 * e[1] + e[2], e[2]}, c);
  return out;
}

Invariance invariance_check(const MultiPoly& f, const Matrix3& a) {
  Invariance out;
  if (f.is_zero()) return out;
  Field field = f.field();
  for (const auto& r : a) field = join(field, r);
  const MultiPoly base = f.lift_to(field);
  const MultiPoly moved = linear_change(base, a);
  const FieldElement c = moved.coefficient(base.leading_exponents());
  if (c.is_zero()) return out;
  const FieldElement lambda = c / base.leading_coefficient();
  if (moved == base * lambda) {
    out.invariant = true;
    out.scalar = lambda;
  }
  return out;
}

bool projectively_equal(const std::vector<FieldElement>& p, const std::vector<FieldElement>& q) {
  if (p.size() != q.size()) return false;
  Field f = join(join(NumberField::rationals(), p), q);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i].lift_to(f) * q[j].lift_to(f) != p[j].lift_to(f) * q[i].lift_to(f)) return false;
  bool pz = true, qz = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pz &= p[i].is_zero();
    qz &= q[i].is_zero();
  }
  return pz == qz;
}

int delta_invariant(Verdict v) {
  switch (v) {
    case Verdict::Smooth: return 0;
    case Verdict::A1:
    case Verdict::A2: return 1;
    case Verdict::E6: return 3;
    case Verdict::Composite3Branch: return 7;  // three smooth branches with contacts 2, 2, 3
    case Verdict::Other: break;
  }
  throw CurveError("no delta invariant for type OTHER");
}

int genus_bookkeeping(int degree, const std::vector<Verdict>& singularities) {
  int g = (degree - 1) * (degree - 2) / 2;
  for (Verdict v : singularities) g -= delta_invariant(v);
  return g;
}

nlohmann::json CheckLine::to_json() const { return {{"name", name}, {"status", status}, {"detail", detail}}; }

bool CurveReport::passed() const {
  for (const auto& p : points)
    if (!p.ok) return false;
  for (const auto& c : checks)
    if (c.status != "pass") return false;
  return true;
}

nlohmann::json CurveReport::to_json() const {
  nlohmann::json j;
  j["curve"] = curve;
  j["status"] = passed() ? "pass" : "fail";
  j["points"] = nlohmann::json::array();
  for (const auto& p : points)
    j["points"].push_back({{"label", p.label},
                           {"coords", p.coords},
                           {"expected", to_string(p.expected)},
                           {"status", status_word(p.ok)},
                           {"certificate", p.certificate.to_json()}});
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back(c.to_json());
  return j;
}

CurveReport certify_curve_spec(const CurveRecord& record, const CertifyOptions& opts) {
  CurveReport report;
  report.curve = record.name + (record.root_label.empty() ? "" : "(" + record.root_label + ")");
  const MultiPoly& f = record.polynomial;
  const DegreeInfo deg = f.degree();
  report.checks.push_back({"homogeneous", status_word(deg.homogeneous), "degree " + std::to_string(deg.degree)});

  auto certify_one = [&](const DeclaredPoint& p) {
    PointResult r;
    r.label = p.label;
    r.coords = serialize_point(p.coords);
    r.expected = p.expected;
    try {
      const CurveGerm germ = CurveGerm::at_projective_point(f, p.coords);
      r.certificate = p.expected == Verdict::Composite3Branch ? certify_composite(germ, opts.puiseux)
                                                             : certify_type(germ, p.expected);
    } catch (const std::exception& e) {
      r.certificate.verdict = Verdict::Other;
      r.certificate.reason = e.what();
    }
    r.ok = r.certificate.verdict == p.expected;
    return r;
  };
  if (opts.parallel && record.points.size() > 1) {
    std::vector<std::future<PointResult>> jobs;
    for (const auto& p : record.points) jobs.push_back(std::async(std::launch::async, certify_one, std::cref(p)));
    for (auto& j : jobs) report.points.push_back(j.get());
  } else {
    for (const auto& p : record.points) report.points.push_back(certify_one(p));
  }

  if (record.points.size() > 1) {
    std::string clash;
    for (std::size_t i = 0; i < record.points.size() && clash.empty(); ++i)
      for (std::size_t j = i + 1; j < record.points.size(); ++j)
        if (projectively_equal(record.points[i].coords, record.points[j].coords)) {
          clash = record.points[i].label + " = " + record.points[j].label;
          break;
        }
    report.checks.push_back({"points pairwise distinct", status_word(clash.empty()), clash});
  }

  if (record.tangents_concurrent) {
    std::vector<std::vector<FieldElement>> pts;
    for (const auto& p : record.points) pts.push_back(p.coords);
    try {
      const TangentLines t = tangent_lines_and_concurrency(f, pts);
      std::string lines;
      for (const auto& l : t.lines) lines += (lines.empty() ? "" : ", ") + std::string("(") + l[0].to_string() + ", " +
                                             l[1].to_string() + ", " + l[2].to_string() + ")";
      report.checks.push_back({"tangents concurrent", status_word(t.concurrent), lines});
    } catch (const SingularError& e) {
      report.checks.push_back({"tangents concurrent", "fail", e.what()});
    }
  }

  for (const auto& m : record.automorphisms) {
    const Invariance inv = invariance_check(f, m.matrix);
    std::string detail = inv.invariant ? "scalar " + inv.scalar->to_string() : "not invariant";
    report.checks.push_back({"invariance " + m.name + (m.expect_invariant ? "" : " (expected false)"),
                             status_word(inv.invariant == m.expect_invariant), detail});
    if (m.orbit_sizes.empty()) continue;
    // Permutation of the declared points induced by P -> A·P.
    std::vector<int> image;
    std::string missing;
    for (const auto& p : record.points) {
      const auto q = apply_matrix(m.matrix, p.coords);
      int hit = -1;
      for (std::size_t k = 0; k < record.points.size(); ++k)
        if (projectively_equal(q, record.points[k].coords)) hit = static_cast<int>(k);
      if (hit < 0 && missing.empty()) missing = p.label;
      image.push_back(hit);
    }
    if (!missing.empty()) {
      report.checks.push_back({"orbits " + m.name, "fail", "image of " + missing + " is not a declared point"});
      continue;
    }
    std::vector<int> sizes;
    std::vector<bool> seen(image.size(), false);
    for (std::size_t s = 0; s < image.size(); ++s) {
      if (seen[s]) continue;
      int len = 0;
      for (auto k = s; !seen[k]; k = static_cast<std::size_t>(image[k])) {
        seen[k] = true;
        ++len;
      }
      sizes.push_back(len);
    }
    std::sort(sizes.begin(), sizes.end());
    std::string got;
    for (int s : sizes) got += (got.empty() ? "" : ",") + std::to_string(s);
    report.checks.push_back({"orbits " + m.name, status_word(sizes == m.orbit_sizes), "sizes " + got});
  }

  if (record.expect_smooth) {
    const SmoothnessCertificate s = certify_smooth_projective(f, opts.smoothness);
    std::string status = s.status == SmoothStatus::Inconclusive ? "unresolved" : status_word(s.smooth() == *record.expect_smooth);
    std::string detail = s.witness.empty() ? "" : s.witness.back();
    report.checks.push_back({*record.expect_smooth ? "smooth" : "singular", status, detail});
  }

  if (record.genus) {
    std::vector<Verdict> types;
    for (const auto& p : record.points) types.push_back(p.expected);
    const int g = genus_bookkeeping(static_cast<int>(deg.degree), types);
    report.checks.push_back({"degree-genus bookkeeping", status_word(g == *record.genus), "genus " + std::to_string(g)});
  }
  return report;
}

// ---- singular-point derivation ----

namespace {

std::vector<FieldElement> all_roots(const UPoly& q, Field& field, const std::string& name, std::vector<std::string>& log,
                                    int cap) {
  // Roots of q (over Q) in `field`, adjoining one extension named `name` when needed.
  FactorOptions fo;
  fo.degree_cap = cap;
  auto roots = roots_in_field(q.lift_to(field));
  if (static_cast<int>(roots.size()) == q.degree()) return roots;
  const FactorResult fr = factor(q.lift_to(field), fo);
  for (const auto& part : fr.irreducible) {
    if (part.factor.degree() <= 1) continue;
    if (field->depth() >= NumberField::kMaxDepth) break;
    std::vector<FieldElement> mp = part.factor.coeffs();
    field = NumberField::create(field, name, mp);
    log.push_back("adjoined " + name + " with minimal polynomial " + part.factor.to_string(name));
    break;
  }
  return roots_in_field(q.lift_to(field));
}

}  // namespace

DerivedPoints derive_singular_points(const MultiPoly& f, const ElimBudgets& budgets) {
  if (f.nvars() != 3 || !f.degree().homogeneous) throw CurveError("expected a homogeneous polynomial in three variables");
  if (!f.field()->is_rational()) throw CurveError("singular-point derivation runs over Q");
  DerivedPoints out;
  out.field = NumberField::rationals();
  const auto& vars = f.variables();
  const std::vector<std::string> xy{vars[0], vars[1]};
  std::vector<MultiPoly> partials;
  for (const auto& v : vars) partials.push_back(derivative(f, v));

  struct Pending {
    FieldElement x, y, z;
  };
  std::vector<Pending> affine;

  // Affine chart: elimination tree on {f, f_x, f_y}, variables ordered [y, x].
  const MultiPoly aff = f.partial_evaluate(2, FieldElement(1)).with_variables(xy);
  const std::vector<MultiPoly> gens{aff, derivative(aff, xy[0]), derivative(aff, xy[1])};
  const TreeReport tree = search(gens, {xy[1], xy[0]}, {}, budgets);
  out.log.push_back("elimination tree: " + std::to_string(tree.nodes.size()) + " nodes, " + tree.status);
  if (tree.status != "complete") out.complete = false;
  if (!tree.leaves(NodeStatus::UnresolvedLeaf).empty()) {
    out.complete = false;
    out.log.push_back(std::to_string(tree.leaves(NodeStatus::UnresolvedLeaf).size()) + " unresolved leaves");
  }
  for (int leaf : tree.leaves(NodeStatus::SolvedLeaf)) {
    const BackSubstitution bs = back_substitute(tree, leaf, budgets);
    if (!bs.discarded.empty())
      out.log.push_back(std::to_string(bs.discarded.size()) + " branches without a common root discarded");
    for (const auto& u : bs.unresolved) {
      out.complete = false;
      out.log.push_back("unresolved branch: " + u);
    }
    for (const auto& s : bs.solutions) {
      const FieldElement& x = s.values.at(xy[0]);
      const FieldElement& y = s.values.at(xy[1]);
      if (s.field->is_rational()) {
        out.log.push_back("rational point (" + x.to_string() + ", " + y.to_string() + ")");
        affine.push_back({x, y, FieldElement(1)});
        continue;
      }
      if (s.field->depth() != 1 || x != s.field->generator()) {
        out.log.push_back("solution over " + s.field->describe() + " kept without conjugates");
        out.complete = false;
        continue;
      }
      // x generates a simple extension Q(x): the conjugate points are (r, Y(r)) over the roots r
      // of its minimal polynomial, with y = Y(x) read off the power basis.
      std::vector<Rational> qc;
      for (const auto& c : s.field->minpoly()) qc.push_back(c.rational_value());
      const UPoly q = UPoly::from_rationals(qc);
      Field split = NumberField::create(NumberField::rationals(), "alpha", q.coeffs());
      out.log.push_back("x-coordinates: roots of " + q.to_string(xy[0]));
      const auto roots = all_roots(q, split, "beta", out.log, budgets.degree_cap);
      if (static_cast<int>(roots.size()) < q.degree()) {
        out.complete = false;
        out.log.push_back("x-minimal polynomial does not split in a tower of depth 2");
      }
      UPoly ypoly(NumberField::rationals());
      {
        std::vector<FieldElement> yc;
        for (const auto& c : y.coords()) yc.emplace_back(c);
        ypoly = UPoly(NumberField::rationals(), yc);
      }
      out.log.push_back("y = " + ypoly.to_string(xy[0]));
      for (const auto& r : roots) affine.push_back({r, ypoly.lift_to(r.field()).eval(r), FieldElement(1)});
    }
  }

  // Line z = 0: the point [1:0:0] and the points [x:1:0].
  std::vector<Pending> infinity;
  {
    const std::vector<FieldElement> e1{FieldElement(1), FieldElement(0), FieldElement(0)};
    bool sing = f.evaluate(e1).is_zero();
    for (const auto& p : partials) sing &= p.evaluate(e1).is_zero();
    if (sing) infinity.push_back({FieldElement(1), FieldElement(0), FieldElement(0)});
    UPoly g(NumberField::rationals());
    auto restrict_line = [&](const MultiPoly& p) {
      return to_upoly(p.partial_evaluate(2, FieldElement(0)).partial_evaluate(1, FieldElement(1)), 0);
    };
    g = restrict_line(f);
    for (const auto& p : partials) g = gcd(g, restrict_line(p));
    if (g.is_zero()) throw CurveError("the line z = 0 is a component of the curve");
    const auto roots = roots_in_field(g);
    if (static_cast<int>(roots.size()) < squarefree_part(g).degree()) {
      out.complete = false;
      out.log.push_back("irrational singular points on z = 0 skipped: " + g.to_string(xy[0]));
    }
    for (const auto& r : roots) infinity.push_back({r, FieldElement(1), FieldElement(0)});
  }

  for (const auto& p : infinity) out.field = join(out.field, {p.x, p.y, p.z});
  for (const auto& p : affine) {
    Field next = out.field;
    try {
      next = join(out.field, {p.x, p.y});
    } catch (const FieldError&) {
      out.complete = false;
      out.log.push_back("points over unrelated fields cannot share a tower");
      continue;
    }
    out.field = next;
  }
  for (const auto* group : {&infinity, &affine})
    for (const auto& p : *group) {
      if (!out.field->contains(p.x.field()) || !out.field->contains(p.y.field())) continue;
      std::vector<FieldElement> pt{p.x.lift_to(out.field), p.y.lift_to(out.field), p.z.lift_to(out.field)};
      bool ok = f.lift_to(out.field).evaluate(pt).is_zero();
      for (const auto& d : partials) ok &= d.lift_to(out.field).evaluate(pt).is_zero();
      if (!ok) throw CurveError("derived point fails the singularity check");
      bool seen = false;
      for (const auto& q : out.points) seen |= projectively_equal(q, pt);
      if (!seen) out.points.push_back(std::move(pt));
    }
  out.log.push_back(std::to_string(out.points.size()) + " singular points over " + out.field->describe());
  return out;
}

}  // namespace octic
