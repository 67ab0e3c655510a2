#include "octic/manifest.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <sstream>

#include "octic/braid.hpp"
#include "octic/curves.hpp"
#include "octic/group_corpus.hpp"

namespace octic {

namespace {

CheckOutcome verdict(bool ok, std::string observed, std::vector<std::string> diagnostics = {}) {
  return {ok ? "pass" : "fail", std::move(observed), std::move(diagnostics)};
}

std::string series_text(const std::vector<AbelianInvariants>& q) {
  std::string s = "[";
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? ", " : "") + q[i].to_string();
  return s + "]";
}

std::vector<AbelianInvariants> parse_series(const std::vector<std::string>& texts) {
  std::vector<AbelianInvariants> out;
  for (const auto& t : texts) out.push_back(parse_abelian_invariants(t));
  return out;
}

CheckOutcome series_check(const Presentation& p, const std::vector<std::string>& expected_texts, int depth,
                          const RunOptions& opts) {
  const auto expected = parse_series(expected_texts);
  const DerivedSeriesResult r = derived_series_quotients(p, depth, opts.series);
  std::vector<AbelianInvariants> want(expected.begin(), expected.begin() + depth);
  CheckOutcome out = verdict(r.complete() && r.quotients == want, series_text(r.quotients), r.log);
  if (!r.complete()) out.diagnostics.push_back("status: " + r.status);
  return out;
}

std::vector<std::string> failing_checks(const std::vector<CheckLine>& lines) {
  std::vector<std::string> out;
  for (const auto& l : lines)
    if (l.status != "pass") out.push_back(l.name + ": " + l.status + (l.detail.empty() ? "" : " (" + l.detail + ")"));
  return out;
}

std::vector<std::string> report_failures(const CurveReport& r) {
  std::vector<std::string> out;
  for (const auto& p : r.points)
    if (!p.ok)
      out.push_back(r.curve + " " + p.label + ": " + to_string(p.certificate.verdict) + " (" + p.certificate.reason + ")");
  for (const auto& c : failing_checks(r.checks)) out.push_back(r.curve + " " + c);
  return out;
}

std::vector<CheckSpec> build_manifest() {
  std::vector<CheckSpec> m;

  m.push_back({"deltoid-presentation",
               "presentation of the deltoid-plus-tangents complement from the braids (s2 s1)^2 and (s2 s3)^2",
               {"groups"},
               "octic group show gdl",
               "braid-monodromy output equals the printed relations up to free reduction",
               [](const RunOptions&) {
                 const Presentation p = corpus::gdl();
                 return verdict(corpus::same_relators(p, corpus::gdl_printed()),
                                std::to_string(p.ngens()) + " generators, " + std::to_string(p.relators.size()) + " relators");
               }});

  m.push_back({"g0-braid-relations",
               "the four commutation relations of the quotient by the two braid relations",
               {"groups"},
               "octic group g0-check",
               "all four relations hold; the planted control fails",
               [](const RunOptions&) {
                 const auto checks = g0_commutation_checks(deltoid_tau1(), deltoid_tau2());
                 bool ok = checks.size() == 4;
                 std::string obs;
                 for (const auto& c : checks) {
                   ok &= c.equal;
                   obs += "i=" + std::to_string(c.index) + (c.equal ? " holds; " : " fails; ");
                 }
                 const bool control = verify_g0_relations(deltoid_tau1(), BraidWord(4, {2, 2}));
                 obs += control ? "control holds (unexpected)" : "control fails";
                 return verdict(ok && !control, obs);
               }});

  m.push_back({"cremona24-group",
               "the group of order 24 attached to the Cremona quartic",
               {"groups"},
               "octic group order cremona24",
               "order 24, abelianization Z/8, derived quotient Z/3, c2 of order 8, c2*c3^-1 = (c2*c3)^4",
               [](const RunOptions& opts) {
                 const Presentation p = corpus::cremona24();
                 const RegularRepresentation reg(p);
                 const Word c2 = p.parse("c2"), c3 = p.parse("c3");
                 const auto series = derived_series_quotients(p, 2, opts.series);
                 const bool ok = reg.order() == 24 && series.complete() &&
                                 series.quotients == parse_series({"Z/8", "Z/3"}) && reg.element_order(c2) == 8 &&
                                 reg.equal(c2 * c3.inverse(), (c2 * c3).pow(4)) && reg.table().verify(p);
                 return verdict(ok, "order " + std::to_string(reg.order()) + ", series " + series_text(series.quotients) +
                                        ", ord(c2) " + std::to_string(reg.element_order(c2)));
               }});

  m.push_back({"gsymp-derived-series",
               "derived series quotients of the symplectic-complement group to depth 4",
               {"groups", "slow"},
               "octic group derived-series g_symp --depth 4",
               "[Z/8, Z/3, (Z/2)^6, Z^9 + (Z/2)^5 + Z/4]; --ci stops after level 3",
               [](const RunOptions& opts) {
                 CheckOutcome out = series_check(corpus::g_symp(), {"Z/8", "Z/3", "(Z/2)^6", "Z^9 + (Z/2)^5 + Z/4"},
                                                 opts.ci ? 3 : 4, opts);
                 if (opts.ci) out.observed += " (levels 1-3 only)";
                 return out;
               }});

  m.push_back({"g2-derived-series",
               "derived series quotients of the order-2 symmetric octic complement group",
               {"groups"},
               "octic group derived-series g2 --depth 4",
               "[Z/8, Z/3, (Z/2)^4, Z^3 + Z/2]",
               [](const RunOptions& opts) {
                 return series_check(corpus::g2(), {"Z/8", "Z/3", "(Z/2)^4", "Z^3 + Z/2"}, 4, opts);
               }});

  m.push_back({"orbifold-kernel-consistency",
               "the kernel of the orbifold group onto (Z/2)^2 agrees with the stated symplectic presentation",
               {"groups"},
               "octic group kernel g_orb22",
               "equal abelianization, derived quotients to depth 3, and Hom counts to S3, S4, D4, Q8",
               [](const RunOptions& opts) {
                 const auto map = corpus::g_orb22_kummer_map();
                 const Presentation kernel = rs_kernel(corpus::g_orb22(), {map.moduli, map.images});
                 const Presentation stated = corpus::g_symp();
                 bool ok = abelianization(kernel) == abelianization(stated);
                 const auto a = derived_series_quotients(kernel, 3, opts.series);
                 const auto b = derived_series_quotients(stated, 3, opts.series);
                 ok &= a.complete() && b.complete() && a.quotients == b.quotients;
                 std::string obs = "series " + series_text(a.quotients) + "; homs";
                 for (const char* t : {"S3", "S4", "D4", "Q8"}) {
                   const FiniteGroup target = FiniteGroup::by_name(t);
                   const auto hk = count_homs(kernel, target), hs = count_homs(stated, target);
                   ok &= hk == hs;
                   obs += std::string(" ") + t + " " + std::to_string(hk) + (hk == hs ? "" : "!=" + std::to_string(hs));
                 }
                 return verdict(ok, obs);
               }});

  m.push_back({"c82-certification",
               "the octic with six E6 points fixed by an involution",
               {"curves", "elim"},
               "octic curve certify c82 && octic curve derive-points c82 --check",
               "six E6 points, two of them [1:0:0] and [0:1:0]; invariant under z -> -z, not under x <-> y; "
               "point data regenerated by elimination",
               [](const RunOptions& opts) {
                 const CurveRecord rec = corpus_get("c82");
                 const CurveReport r = certify_curve_spec(rec);
                 auto diag = report_failures(r);
                 bool ok = r.passed() && rec.points.size() == 6;
                 const std::vector<FieldElement> e1{FieldElement(1), FieldElement(0), FieldElement(0)};
                 const std::vector<FieldElement> e2{FieldElement(0), FieldElement(1), FieldElement(0)};
                 int on_line = 0;
                 for (const auto& p : rec.points)
                   if (p.coords[2].is_zero()) {
                     ++on_line;
                     ok &= projectively_equal(p.coords, e1) || projectively_equal(p.coords, e2);
                   }
                 ok &= on_line == 2;
                 const DerivedPoints d = derive_singular_points(rec.polynomial, opts.budgets);
                 bool same = d.complete && d.points.size() == rec.points.size();
                 for (const auto& p : rec.points) {
                   bool found = false;
                   for (const auto& q : d.points) found |= projectively_equal(p.coords, q);
                   same &= found;
                 }
                 if (!same) diag.push_back("derived singular points differ from the shipped data");
                 int e6 = 0;
                 for (const auto& p : r.points) e6 += p.certificate.verdict == Verdict::E6;
                 return verdict(ok && same, std::to_string(e6) + " E6 points certified, " + std::to_string(on_line) +
                                                " on z=0, derivation " + (same ? "matches" : "differs"),
                                diag);
               }});

  m.push_back({"deltoid-cusps",
               "the deltoid has three ordinary cusps with concurrent tangents",
               {"curves"},
               "octic curve certify deltoid_symmetric && octic curve certify deltoid_affine",
               "three A2 cusps with concurrent tangents; affine cusps at (0,0) and (1,-3)",
               [](const RunOptions&) {
                 const CurveReport a = certify_curve_spec(corpus_get("deltoid_symmetric"));
                 const CurveReport b = certify_curve_spec(corpus_get("deltoid_affine"));
                 auto diag = report_failures(a);
                 for (auto& d : report_failures(b)) diag.push_back(d);
                 return verdict(a.passed() && b.passed() && a.points.size() == 3,
                                std::to_string(a.points.size()) + " + " + std::to_string(b.points.size()) + " cusps certified",
                                diag);
               }});

  m.push_back({"kummer-e6",
               "each cusp tangent to a branch line pulls back to two E6 points; the pulled-back deltoid has degree 8",
               {"curves"},
               "octic curve pullback deltoid_symmetric --n 2",
               "u^4 - v^3 certifies E6; degree 4 -> 8",
               [](const RunOptions&) {
                 const std::vector<std::string> uv{"u", "v"};
                 const MultiPoly pulled =
                     kummer_pullback(parse_poly("u^2 - v^3", uv, NumberField::rationals()), std::vector<int>{2, 1});
                 const auto cert = certify_type(CurveGerm::at_origin(pulled), Verdict::E6);
                 const long deg = kummer_pullback(corpus_get("deltoid_symmetric").polynomial, 2).degree().degree;
                 return verdict(cert.verdict == Verdict::E6 && deg == 8,
                                pulled.to_string() + " is " + to_string(cert.verdict) + "; degree " + std::to_string(deg));
               }});

  m.push_back({"order3-octic-assembly",
               "assembly of the order-3 symmetric octic from the tabulated constants",
               {"curves"},
               "octic curve assemble-order3 --root eta1 --mapping <each mapping file>",
               "structural checks pass for every mapping; singularity pattern reported per mapping, never silently passed",
               [](const RunOptions&) {
                 const Order3OcticData data = load_order3_octic();
                 bool structural = true, pattern = false;
                 std::vector<std::string> diag;
                 std::string obs;
                 for (const auto& file : mapping_files()) {
                   const Order3OcticResult r = assemble_order3_octic(data, load_mapping(file), "eta1");
                   int passed = 0, total = 0;
                   for (const auto& c : r.checks) {
                     if (c.name == "singularity pattern") {
                       diag.push_back(r.mapping + ": pattern " + c.status + " (" + c.detail + ")");
                       continue;
                     }
                     ++total;
                     passed += c.status == "pass";
                     if (c.status != "pass") diag.push_back(r.mapping + ": " + c.name + " " + c.status + " " + c.detail);
                   }
                   structural &= passed == total;
                   pattern |= r.pattern_status == "pass";
                   obs += (obs.empty() ? "" : "; ") + r.mapping + ": " + std::to_string(passed) + "/" + std::to_string(total) +
                          " structural, pattern " + r.pattern_status;
                 }
                 if (!structural) return CheckOutcome{"fail", obs, diag};
                 return CheckOutcome{pattern ? "pass" : "unresolved", obs, diag};
               }});

  m.push_back({"quartic-models",
               "the smooth quartic models birational to the two octic families",
               {"curves"},
               "octic curve certify c82_quartic && octic curve certify 'c83_quartic(eta1)'",
               "both smooth; the second has coefficients in K after the coordinate change",
               [](const RunOptions&) {
                 const CurveRecord c83 = corpus_get("c83_quartic(eta1)");
                 const CurveReport a = certify_curve_spec(corpus_get("c82_quartic"));
                 const CurveReport b = certify_curve_spec(c83);
                 auto diag = report_failures(a);
                 for (auto& d : report_failures(b)) diag.push_back(d);
                 const bool in_k = c83.field->absolute_degree() == 4 && c83.polynomial.field() == c83.field;
                 return verdict(a.passed() && b.passed() && in_k,
                                std::string("c82_quartic ") + (a.passed() ? "smooth" : "not certified") + ", c83_quartic " +
                                    (b.passed() ? "smooth" : "not certified") + " over " + c83.field->describe(),
                                diag);
               }});

  m.push_back({"sturm-real-roots",
               "the defining polynomial of K has two real roots",
               {"field"},
               "octic field sturm 't^4 - 2*t^3 + t^2 - 2*t - 2'",
               "2 real roots",
               [](const RunOptions&) {
                 const int n = sturm_real_roots(UPoly::from_rationals({-2, -2, 1, -2, 1}));
                 return verdict(n == 2, std::to_string(n) + " real roots");
               }});
  return m;
}

}  // namespace

nlohmann::json CheckEntry::to_json(bool with_runtime) const {
  nlohmann::json j{{"id", id},
                   {"anchor", anchor},
                   {"tags", tags},
                   {"command", command},
                   {"expected", expected},
                   {"status", status},
                   {"observed", observed},
                   {"diagnostics", diagnostics}};
  if (with_runtime) j["runtime_seconds"] = runtime_seconds;
  return j;
}

bool VerificationManifest::any_failed() const {
  for (const auto& e : entries)
    if (e.status == "fail") return true;
  return false;
}

nlohmann::json VerificationManifest::to_json(bool with_runtime) const {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"skipped", 0}, {"unresolved", 0}};
  for (const auto& e : entries) {
    j["checks"].push_back(e.to_json(with_runtime));
    ++counts[e.status];
  }
  j["summary"] = counts;
  return j;
}

std::string VerificationManifest::summary_table() const {
  std::ostringstream os;
  std::size_t width = 2;
  for (const auto& e : entries) width = std::max(width, e.id.size());
  for (const auto& e : entries)
    os << std::left << std::setw(static_cast<int>(width) + 2) << e.id << std::setw(12) << e.status << std::fixed
       << std::setprecision(2) << std::setw(9) << e.runtime_seconds << e.observed << "\n";
  return os.str();
}

const std::vector<CheckSpec>& manifest() {
  static const std::vector<CheckSpec> m = build_manifest();
  return m;
}

CheckEntry run_check(const std::string& id, const RunOptions& opts) {
  const auto& m = manifest();
  auto it = std::find_if(m.begin(), m.end(), [&](const CheckSpec& c) { return c.id == id; });
  if (it == m.end()) throw ManifestError("unknown check id '" + id + "'");
  CheckEntry e{it->id, it->anchor, it->tags, it->command, it->expected, "fail", "", {}, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    CheckOutcome out = it->run(opts);
    e.status = out.status;
    e.observed = out.observed;
    e.diagnostics = out.diagnostics;
  } catch (const std::exception& ex) {
    e.status = "fail";
    e.diagnostics.push_back(std::string("error: ") + ex.what());
  }
  e.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return e;
}

VerificationManifest run_all(const std::vector<std::string>& tags, const RunOptions& opts) {
  std::vector<std::string> ids;
  for (const auto& c : manifest()) {
    bool selected = tags.empty();
    for (const auto& t : tags) selected |= std::find(c.tags.begin(), c.tags.end(), t) != c.tags.end();
    if (selected) ids.push_back(c.id);
  }
  VerificationManifest out;
  if (opts.parallel) {
    std::vector<std::future<CheckEntry>> jobs;
    for (const auto& id : ids) jobs.push_back(std::async(std::launch::async, [&opts, id] { return run_check(id, opts); }));
    for (auto& j : jobs) out.entries.push_back(j.get());
  } else {
    for (const auto& id : ids) out.entries.push_back(run_check(id, opts));
  }
  return out;
}

}  // namespace octic
