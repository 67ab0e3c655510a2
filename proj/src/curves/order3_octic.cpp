#include <fstream>

#include "octic/curves.hpp"

namespace octic {

namespace {

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw CurveError("cannot open " + p.string());
  return nlohmann::json::parse(in);
}

std::string monomial_text(const Exponents& e) {
  static const char* names[] = {"x", "y", "z"};
  std::string s;
  for (std::size_t i = 0; i < e.size() && i < 3; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string first_monomials(const std::vector<Exponents>& es, std::size_t limit = 6) {
  std::string s;
  for (std::size_t i = 0; i < es.size() && i < limit; ++i) s += (s.empty() ? "" : ", ") + monomial_text(es[i]);
  if (es.size() > limit) s += ", ... (" + std::to_string(es.size()) + " total)";
  return s;
}

Matrix3 inverse3(const Matrix3& a) {
  Field f = NumberField::rationals();
  for (const auto& r : a)
    for (const auto& x : r) f = common_field(f, x.field());
  auto at = [&](int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].lift_to(f); };
  const FieldElement det = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  if (det.is_zero()) throw CurveError("singular matrix");
  Matrix3 out(3, std::vector<FieldElement>(3, f->zero()));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0)) / det;
    }
  return out;
}

}  // namespace

Order3OcticData load_order3_octic(const std::filesystem::path& file) {
  const auto path = file.empty() ? data_dir() / "order3_octic" / "constants.json" : file;
  const nlohmann::json j = read_json(path);
  Order3OcticData d;
  d.base = field_from_json(j.at("base_field"));
  d.extension = field_from_json(j.at("field"));
  if (!d.extension->contains(d.base)) throw CurveError("the extension field must contain the base field");
  for (const auto& [name, text] : j.at("constants").items()) {
    const MultiPoly c = parse_poly(text.get<std::string>(), {}, d.base);
    d.constants.emplace(name, c.is_zero() ? d.base->zero() : c.constant_term());
  }
  for (const auto& [name, text] : j.at("templates").items()) d.templates.emplace(name, text.get<std::string>());
  d.open_names = j.value("open_names", std::vector<std::string>{});
  for (const char* t : {"F0", "F1", "F2"})
    if (!d.templates.count(t)) throw CurveError(std::string("missing template ") + t);
  return d;
}

ConstantMapping load_mapping(const std::filesystem::path& file) {
  const nlohmann::json j = read_json(file);
  ConstantMapping m;
  m.name = j.value("name", file.stem().string());
  m.names = j.at("names").get<std::map<std::string, std::string>>();
  return m;
}

std::vector<std::filesystem::path> mapping_files() {
  std::vector<std::filesystem::path> out;
  const auto dir = data_dir() / "order3_octic";
  if (!std::filesystem::exists(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().filename().string().rfind("mapping_", 0) == 0 && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json Order3OcticResult::to_json() const {
  nlohmann::json j;
  j["mapping"] = mapping;
  j["root"] = root_label;
  j["pattern_status"] = pattern_status;
  j["notes"] = notes;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back(c.to_json());
  j["F_terms"] = f.num_terms();
  j["G0_terms"] = g0.num_terms();
  if (g) {
    j["G_terms"] = g->num_terms();
    j["G"] = to_canonical(*g);
  }
  return j;
}

Order3OcticResult assemble_order3_octic(const Order3OcticData& data, const ConstantMapping& mapping,
                                    const std::string& root_label, const AssemblyOptions& opts) {
  Order3OcticResult out;
  out.mapping = mapping.name;
  out.root_label = root_label;
  const Field k1 = data.extension;
  const Field k = data.base;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.checks.push_back({std::move(name), ok ? "pass" : "fail", std::move(detail)});
  };

  // Resolve template names: shipped constants plus the mapping for the open ones.
  std::map<std::string, FieldElement> values = data.constants;
  for (const auto& open : data.open_names) {
    auto it = mapping.names.find(open);
    if (it == mapping.names.end()) throw CurveError("mapping " + mapping.name + " does not assign " + open);
    auto c = data.constants.find(it->second);
    if (c == data.constants.end()) throw CurveError("mapping target " + it->second + " is not a shipped constant");
    values[open] = c->second;
  }
  std::vector<std::string> tvars{"t", "z"};
  for (const auto& [name, v] : values) tvars.push_back(name);
  std::map<std::string, MultiPoly> constant_assign;
  for (const auto& [name, v] : values) constant_assign.emplace(name, MultiPoly::constant({"t", "z"}, v.lift_to(k1)));
  auto load = [&](const std::string& key) { return substitute(parse_poly(data.templates.at(key), tvars, k1), constant_assign); };
  const MultiPoly f0 = load("F0"), f1 = load("F1"), f2 = load("F2");
  add("F0 over K", f0.lies_in(k), "");

  const FieldAutomorphism sigma = FieldAutomorphism::quadratic_conjugation(k1);
  const std::vector<std::string> xyz{"x", "y", "z"};
  const MultiPoly x = MultiPoly::variable(xyz, k1, 0), y = MultiPoly::variable(xyz, k1, 1), z = MultiPoly::variable(xyz, k1, 2);
  const MultiPoly t = x * y;
  auto at_t = [&](const MultiPoly& p) { return substitute(p, {{"t", t}, {"z", z}}); };
  const MultiPoly two = MultiPoly::constant(xyz, FieldElement(2).lift_to(k1));
  out.f = at_t(f0) + two * t * z * (x * at_t(f1) + y * at_t(f1.map_coefficients(sigma))) +
          t * t * (x * x * at_t(f2) + y * y * at_t(f2.map_coefficients(sigma)));

  const DegreeInfo deg = out.f.degree();
  add("F homogeneous of degree 8", deg.homogeneous && deg.degree == 8, "degree " + std::to_string(deg.degree));
  const Matrix3 swap{{k1->zero(), k1->one(), k1->zero()}, {k1->one(), k1->zero(), k1->zero()}, {k1->zero(), k1->zero(), k1->one()}};
  add("F fixed by x<->y composed with sigma", linear_change(out.f, swap).map_coefficients(sigma) == out.f, "");

  // F(x^3, y^3, xyz) / (x^8 y^8), checked term by term.
  const MultiPoly lifted = theta_pullback(out.f);
  std::vector<Exponents> bad;
  out.g0 = MultiPoly(xyz, k1);
  for (const auto& [e, c] : lifted.terms()) {
    if (e[0] < 8 || e[1] < 8) {
      bad.push_back(e);
      continue;
    }
    out.g0.add_term({e[0] - 8, e[1] - 8, e[2]}, c);
  }
  add("F(x^3,y^3,xyz) divisible by x^8 y^8", bad.empty(), bad.empty() ? "" : "failing monomials " + first_monomials(bad));

  const FieldElement zeta = k1->generator();
  const FieldElement zeta_bar = -zeta - k1->one();
  const Matrix3 phi3 = diagonal_action({zeta, zeta_bar, k1->one()});
  const Invariance g0inv = invariance_check(out.g0, phi3);
  add("G0 invariant under diag(zeta, zeta^2, 1)", g0inv.invariant && g0inv.scalar->is_one(),
      g0inv.invariant ? "scalar " + g0inv.scalar->to_string() : "not invariant");

  // G = G0(x + zeta*y, x + zeta_bar*y, z).
  const Matrix3 change{{k1->one(), zeta, k1->zero()}, {k1->one(), zeta_bar, k1->zero()}, {k1->zero(), k1->zero(), k1->one()}};
  const MultiPoly g = linear_change(out.g0, change);
  bad.clear();
  for (const auto& [e, c] : g.terms())
    if (!c.lies_in(k)) bad.push_back(e);
  add("G coefficients in K", bad.empty(), bad.empty() ? "" : "coefficients outside K at " + first_monomials(bad));
  if (bad.empty()) out.g = g.project_to(k);

  // Φ3 in the coordinates of G: change^-1 · diag · change.
  const Matrix3 transported = matrix_product(inverse3(change), matrix_product(phi3, change));
  bool rational = true;
  for (const auto& r : transported)
    for (const auto& c : r) rational &= c.is_rational();
  const Invariance ginv = invariance_check(g, transported);
  std::string desc;
  for (const auto& r : transported) {
    desc += desc.empty() ? "[" : "; ";
    for (std::size_t i = 0; i < 3; ++i) desc += (i ? " " : "") + r[i].to_string();
  }
  desc += "]";
  add("G invariant under the transported order-3 action", rational && ginv.invariant && ginv.scalar->is_one(),
      "matrix " + desc + (ginv.invariant ? ", scalar " + ginv.scalar->to_string() : ", not invariant"));
  const Invariance direct = invariance_check(g, phi3);
  out.notes.push_back(std::string("diag(zeta, zeta^2, 1) applied directly to G: ") +
                      (direct.invariant ? "invariant" : "not invariant"));

  // Singularity pattern of F: three-branch composites at [1:0:0] and [0:1:0] plus two E6 points.
  out.pattern_status = "unresolved";
  if (!opts.certify_pattern) return out;
  std::vector<std::string> notes;
  bool composites = true;
  for (const auto& p : {std::vector<FieldElement>{k1->one(), k1->zero(), k1->zero()},
                        std::vector<FieldElement>{k1->zero(), k1->one(), k1->zero()}}) {
    const std::string label = p[0].is_one() ? "[1:0:0]" : "[0:1:0]";
    try {
      const auto cert = certify_composite(CurveGerm::at_projective_point(out.f, p), opts.puiseux);
      composites &= cert.verdict == Verdict::Composite3Branch;
      notes.push_back(label + " " + to_string(cert.verdict) + (cert.reason.empty() ? "" : " (" + cert.reason + ")"));
    } catch (const std::exception& e) {
      composites = false;
      notes.push_back(label + " not certified: " + e.what());
    }
  }
  std::string detail = composites ? "three-branch composites certified" : "three-branch composites not certified";
  for (const auto& n : notes) detail += "; " + n;
  detail += "; E6 points not located";
  out.checks.push_back({"singularity pattern", "unresolved", detail});
  return out;
}

}  // namespace octic
