#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "octic/braid.hpp"
#include "octic/curves.hpp"
#include "octic/factor.hpp"
#include "octic/group_corpus.hpp"
#include "octic/manifest.hpp"

using namespace octic;
using json = nlohmann::json;

namespace {

struct Globals {
  std::string report_path;
  bool parallel = false;
  bool ci = false;
  std::optional<int> budget_nodes;
  std::optional<int> budget_degree;
  std::optional<double> budget_time;
  long budget_index = DerivedSeriesLimits{}.max_index;
  std::size_t budget_cosets = ToddCoxeterOptions{}.max_cosets;

  // Flags given on the command line override `base`.
  ElimBudgets budgets(ElimBudgets base = {}) const {
    if (budget_nodes) base.node_cap = *budget_nodes;
    if (budget_degree) base.degree_cap = *budget_degree;
    if (budget_time) base.time_cap_seconds = *budget_time;
    return base;
  }
  RunOptions run_options() const {
    RunOptions o;
    o.ci = ci;
    o.parallel = parallel;
    o.budgets = budgets();
    o.series.max_index = budget_index;
    return o;
  }
};

// Result of one command: a machine-readable document and whether anything failed.
struct Outcome {
  json doc = json::object();
  bool failed = false;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Field field_by_name(const std::string& name) {
  if (name.empty() || name == "Q") return NumberField::rationals();
  const std::string eta = "eta^4 - 2*eta^3 + eta^2 - 2*eta - 2";
  if (name == "K") return field_from_json(json{{"vars", {"eta"}}, {"minpolys", {eta}}});
  if (name == "K1") return field_from_json(json{{"vars", {"eta", "zeta"}}, {"minpolys", {eta, "zeta^2 + zeta + 1"}}});
  std::ifstream in(name);
  if (in) return field_from_json(json::parse(in));
  return field_from_json(json::parse(name));
}

void print_checks(const std::vector<CheckLine>& checks) {
  for (const auto& c : checks)
    std::cout << "  " << c.status << "  " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
}

// ---- field / poly ----

Outcome field_calc(const std::string& expr, const std::string& field) {
  const Field f = field_by_name(field);
  const MultiPoly p = parse_poly(expr, {}, f);
  const FieldElement v = p.is_zero() ? f->zero() : p.constant_term();
  std::cout << v.to_string() << "\n";
  return {{{"field", field_to_json(f)}, {"value", v.serialize()}, {"text", v.to_string()}}};
}

Outcome field_sturm(const std::string& poly, const std::string& var) {
  const UPoly u = to_upoly(parse_poly(poly, {var}, NumberField::rationals()), 0);
  const int n = sturm_real_roots(u);
  std::cout << n << " real roots\n";
  return {{{"polynomial", u.to_string(var)}, {"real_roots", n}}};
}

Outcome poly_resultant(const std::string& a, const std::string& b, const std::string& var, const std::string& vars,
                       const std::string& field) {
  const Field f = field_by_name(field);
  const auto vs = split_list(vars);
  const MultiPoly r = resultant(parse_poly(a, vs, f), parse_poly(b, vs, f), var);
  std::cout << r.to_string() << "\n";
  return {{{"resultant", r.to_string()}, {"canonical", to_canonical(r)}}};
}

Outcome poly_factor(const std::string& poly, const std::string& var, const std::string& field, int cap) {
  const Field f = field_by_name(field);
  const UPoly u = to_upoly(parse_poly(poly, {var}, f), 0);
  FactorOptions fo;
  fo.degree_cap = cap;
  const FactorResult r = factor(u, fo);
  json doc{{"unit", r.unit.to_string()}, {"irreducible", json::array()}, {"unresolved", json::array()}};
  std::cout << "unit " << r.unit.to_string() << "\n";
  for (const auto& s : r.irreducible) {
    std::cout << "  (" << s.factor.to_string(var) << ")^" << s.multiplicity << "\n";
    doc["irreducible"].push_back({{"factor", s.factor.to_string(var)}, {"multiplicity", s.multiplicity}});
  }
  for (const auto& s : r.unresolved) {
    std::cout << "  unresolved (" << s.factor.to_string(var) << ")^" << s.multiplicity << "\n";
    doc["unresolved"].push_back({{"factor", s.factor.to_string(var)}, {"multiplicity", s.multiplicity}});
  }
  return {doc};
}

// ---- curve ----

Outcome curve_list() {
  json doc = json::array();
  for (const auto& n : corpus_names()) {
    const CurveRecord c = corpus_get(n);
    std::cout << n << "  degree " << c.polynomial.degree().degree << " over " << c.field->describe() << ", "
              << c.points.size() << " declared points\n";
    doc.push_back(n);
  }
  return {{{"curves", doc}}};
}

Outcome curve_show(const std::string& name) {
  const CurveRecord c = corpus_get(name);
  std::cout << c.name << ": " << c.description << "\n  " << c.polynomial.to_string() << "\n";
  for (const auto& p : c.points) {
    std::cout << "  " << p.label << " [";
    for (std::size_t i = 0; i < p.coords.size(); ++i) std::cout << (i ? " : " : "") << p.coords[i].to_string();
    std::cout << "] " << to_string(p.expected) << "\n";
  }
  return {curve_to_json(c)};
}

Outcome curve_certify(const std::string& name, const Globals& g) {
  CertifyOptions opts;
  opts.parallel = g.parallel;
  const CurveReport r = certify_curve_spec(corpus_get(name), opts);
  std::cout << r.curve << ": " << (r.passed() ? "pass" : "fail") << "\n";
  for (const auto& p : r.points)
    std::cout << "  " << (p.ok ? "pass" : "fail") << "  " << p.label << " " << to_string(p.certificate.verdict)
              << (p.certificate.reason.empty() ? "" : " (" + p.certificate.reason + ")") << "\n";
  print_checks(r.checks);
  return {r.to_json(), !r.passed()};
}

Outcome curve_pullback(const std::string& name, int n) {
  const CurveRecord c = corpus_get(name);
  const MultiPoly p = kummer_pullback(c.polynomial, n);
  std::cout << "degree " << c.polynomial.degree().degree << " -> " << p.degree().degree << "\n" << p.to_string() << "\n";
  return {{{"curve", name}, {"n", n}, {"degree", p.degree().degree}, {"polynomial", to_canonical(p)}}};
}

Outcome curve_assemble_order3(const std::string& root, const std::string& mapping) {
  const Order3OcticData data = load_order3_octic();
  std::vector<std::filesystem::path> files;
  if (mapping.empty()) {
    files = mapping_files();
  } else {
    files.emplace_back(mapping);
  }
  Outcome out;
  out.doc = json{{"root", root}, {"mappings", json::array()}};
  for (const auto& f : files) {
    const Order3OcticResult r = assemble_order3_octic(data, load_mapping(f), root);
    std::cout << "mapping " << r.mapping << " (root " << root << "): pattern " << r.pattern_status << "\n";
    print_checks(r.checks);
    for (const auto& n : r.notes) std::cout << "  note  " << n << "\n";
    for (const auto& c : r.checks) out.failed |= c.status == "fail";
    out.doc["mappings"].push_back(r.to_json());
  }
  return out;
}

Outcome curve_derive_points(const std::string& name, bool check, bool write, const Globals& g) {
  CurveRecord c = corpus_get(name);
  const DerivedPoints d = derive_singular_points(c.polynomial, g.budgets());
  for (const auto& l : d.log) std::cout << "  " << l << "\n";
  Outcome out;
  json pts = json::array();
  for (const auto& p : d.points) {
    json row = json::array();
    for (const auto& x : p) row.push_back(x.serialize());
    pts.push_back(row);
  }
  out.doc = json{{"curve", name}, {"field", field_to_json(d.field)}, {"points", pts}, {"complete", d.complete}, {"log", d.log}};
  if (check) {
    bool same = d.points.size() == c.points.size();
    for (const auto& p : c.points) {
      bool found = false;
      for (const auto& q : d.points) found |= projectively_equal(p.coords, q);
      same &= found;
    }
    std::cout << (same ? "pass" : "fail") << "  derived points " << (same ? "match" : "differ from") << " the shipped data\n";
    out.doc["matches_data"] = same;
    out.failed = !same;
  }
  if (write) {
    std::vector<Verdict> expected;
    for (const auto& p : c.points) expected.push_back(p.expected);
    c.points.clear();
    c.point_field = d.field;
    for (std::size_t i = 0; i < d.points.size(); ++i)
      c.points.push_back({"P" + std::to_string(i + 1), d.points[i], i < expected.size() ? expected[i] : Verdict::Other});
    const auto path = data_dir() / "curves" / (name + ".json");
    std::ofstream(path) << curve_to_json(c).dump(2) << "\n";
    std::cout << "wrote " << path.string() << "\n";
  }
  return out;
}

// ---- group ----

Outcome group_show(const std::string& name) {
  const Presentation p = corpus::by_name(name);
  std::cout << "generators: ";
  for (std::size_t i = 0; i < p.ngens(); ++i) std::cout << (i ? ", " : "") << p.generators[i];
  std::cout << "\nrelators:\n";
  for (const auto& r : p.relator_strings()) std::cout << "  " << r << "\n";
  return {{{"group", name}, {"generators", p.generators}, {"relators", p.relator_strings()}}};
}

Outcome group_derived_series(const std::string& name, int depth, const Globals& g) {
  if (g.ci && depth > 3) {
    std::cout << "--ci: depth capped at 3\n";
    depth = 3;
  }
  const auto r = derived_series_quotients(corpus::by_name(name), depth, g.run_options().series);
  json q = json::array();
  for (std::size_t i = 0; i < r.quotients.size(); ++i) {
    std::cout << "level " << i + 1 << ": " << r.quotients[i].to_string() << "\n";
    q.push_back(r.quotients[i].to_string());
  }
  std::cout << r.status << "\n";
  return {{{"group", name}, {"depth", depth}, {"quotients", q}, {"status", r.status}}, !r.complete()};
}

Outcome group_order(const std::string& name, const Globals& g) {
  ToddCoxeterOptions o;
  o.max_cosets = g.budget_cosets;
  const CosetTable t = todd_coxeter(corpus::by_name(name), {}, o);
  if (!t.complete) {
    std::cout << "coset enumeration stopped at " << t.cosets << " cosets\n";
    return {{{"group", name}, {"status", "limit"}, {"cosets", t.cosets}}, true};
  }
  std::cout << "order " << t.cosets << "\n";
  return {{{"group", name}, {"order", t.cosets}}};
}

Outcome group_homs(const std::string& name, const std::string& target) {
  const auto n = count_homs(corpus::by_name(name), FiniteGroup::by_name(target));
  std::cout << n << " homomorphisms to " << target << "\n";
  return {{{"group", name}, {"target", target}, {"count", n}}};
}

Outcome group_abelianization(const std::string& name) {
  const auto a = abelianization(corpus::by_name(name));
  std::cout << a.to_string() << "\n";
  return {{{"group", name}, {"abelianization", a.to_string()}}};
}

Outcome group_kernel(const std::string& name) {
  const Presentation p = corpus::by_name(name);
  AbelianImages target;
  if (name == "g_orb22") {
    const auto m = corpus::g_orb22_kummer_map();
    target = {m.moduli, m.images};
  } else {
    target = abelianization_map(p);
  }
  const Presentation k = rs_kernel(p, target);
  std::cout << "kernel of index " << target.order() << ": " << k.ngens() << " generators, " << k.relators.size()
            << " relators, abelianization " << abelianization(k).to_string() << "\n";
  for (const auto& r : k.relator_strings()) std::cout << "  " << r << "\n";
  return {{{"group", name}, {"index", target.order()}, {"generators", k.generators}, {"relators", k.relator_strings()}}};
}

Outcome group_g0_check() {
  const auto checks = g0_commutation_checks(deltoid_tau1(), deltoid_tau2());
  Outcome out;
  out.doc = json{{"relations", json::array()}};
  for (const auto& c : checks) {
    std::cout << "i=" << c.index << " " << (c.equal ? "holds" : "fails") << "\n";
    out.doc["relations"].push_back({{"index", c.index}, {"holds", c.equal}});
    out.failed |= !c.equal;
  }
  return out;
}

// ---- solve ----

Outcome solve_run(const std::string& file, const std::string& order, int degree_cap, const Globals& g) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  SystemSpec spec = system_from_json(json::parse(in));
  if (!order.empty()) spec.order = split_list(order);
  ElimBudgets b = g.budgets(spec.budgets);
  if (degree_cap > 0) b.degree_cap = degree_cap;
  const TreeReport tree = search(spec.generators, spec.order, spec.filters, b);
  json sols = json::array();
  for (int leaf : tree.leaves(NodeStatus::SolvedLeaf)) {
    const BackSubstitution bs = back_substitute(tree, leaf, b);
    for (const auto& s : bs.solutions) {
      sols.push_back(s.to_json());
      std::cout << "solution over " << s.field->describe() << ":";
      for (const auto& [k, v] : s.values) std::cout << " " << k << "=" << v.to_string();
      std::cout << "\n";
    }
  }
  std::cout << tree.nodes.size() << " nodes, " << tree.leaves(NodeStatus::SolvedLeaf).size() << " solved leaves, "
            << tree.leaves(NodeStatus::UnresolvedLeaf).size() << " unresolved leaves, " << sols.size() << " solutions ("
            << tree.status << ")\n";
  return {{{"tree", tree.to_json()}, {"solutions", sols}}, tree.status != "complete"};
}

// ---- check / verify ----

Outcome check_one(const std::string& id, bool list, const Globals& g) {
  if (list || id.empty()) {
    json doc = json::array();
    for (const auto& c : manifest()) {
      std::cout << c.id << "  [" << c.anchor << "]\n    " << c.command << "\n    expect: " << c.expected << "\n";
      doc.push_back({{"id", c.id}, {"anchor", c.anchor}, {"tags", c.tags}, {"command", c.command}, {"expected", c.expected}});
    }
    return {{{"manifest", doc}}};
  }
  const CheckEntry e = run_check(id, g.run_options());
  std::cout << e.id << ": " << e.status << " (" << e.runtime_seconds << " s)\n  " << e.observed << "\n";
  for (const auto& d : e.diagnostics) std::cout << "  " << d << "\n";
  return {e.to_json(), e.status == "fail"};
}

Outcome verify(const std::vector<std::string>& tags, const Globals& g) {
  const VerificationManifest m = run_all(tags, g.run_options());
  std::cout << m.summary_table();
  const json doc = m.to_json();
  std::cout << "summary: " << doc["summary"].dump() << "\n";
  return {doc, m.any_failed()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"octic: exact verification of plane-curve singularities and fundamental groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--report", g.report_path, "Write the machine-readable report (JSON) to this path");
  app.add_flag("--parallel", g.parallel, "Run independent checks or point certificates concurrently");
  app.add_flag("--ci", g.ci, "Derived series of the symplectic group to level 3 only");
  app.add_option("--budget-nodes", g.budget_nodes, "Elimination tree node cap");
  app.add_option("--budget-degree", g.budget_degree, "Degree cap for factors and field extensions");
  app.add_option("--budget-time", g.budget_time, "Elimination time cap in seconds");
  app.add_option("--budget-index", g.budget_index, "Largest subgroup index in one derived-series step");
  app.add_option("--budget-cosets", g.budget_cosets, "Coset enumeration limit");

  std::function<Outcome()> action;

  auto* field = app.add_subcommand("field", "Number-field arithmetic");
  field->require_subcommand(1);
  {
    static std::string expr, fname, poly, var = "t";
    auto* calc = field->add_subcommand("calc", "Evaluate an expression in Q, K, K1 or a JSON field");
    calc->add_option("expr", expr)->required();
    calc->add_option("--field", fname, "Q, K, K1, or a field JSON document/file");
    calc->callback([&] { action = [&] { return field_calc(expr, fname); }; });
    auto* sturm = field->add_subcommand("sturm", "Count real roots of a polynomial over Q");
    sturm->add_option("poly", poly)->required();
    sturm->add_option("--var", var);
    sturm->callback([&] { action = [&] { return field_sturm(poly, var); }; });
  }

  auto* poly = app.add_subcommand("poly", "Polynomial operations");
  poly->require_subcommand(1);
  {
    static std::string a, b, var = "x", vars = "x,y,z", fname, p, uvar = "t";
    static int cap = 4;
    auto* res = poly->add_subcommand("resultant", "Resultant of two polynomials");
    res->add_option("f", a)->required();
    res->add_option("g", b)->required();
    res->add_option("--var", var, "Variable to eliminate");
    res->add_option("--vars", vars, "Comma-separated variable list");
    res->add_option("--field", fname);
    res->callback([&] { action = [&] { return poly_resultant(a, b, var, vars, fname); }; });
    auto* fac = poly->add_subcommand("factor", "Bounded-degree factorization of a univariate polynomial");
    fac->add_option("poly", p)->required();
    fac->add_option("--var", uvar);
    fac->add_option("--field", fname);
    fac->add_option("--cap", cap, "Degree cap of the factor search");
    fac->callback([&] { action = [&] { return poly_factor(p, uvar, fname, cap); }; });
  }

  auto* curve = app.add_subcommand("curve", "Curve corpus and certificates");
  curve->require_subcommand(1);
  {
    static std::string name, root = "eta1", mapping;
    static int n = 2;
    static bool check = false, write = false;
    curve->add_subcommand("list", "List corpus curves")->callback([&] { action = [] { return curve_list(); }; });
    auto* show = curve->add_subcommand("show", "Print a corpus curve");
    show->add_option("name", name)->required();
    show->callback([&] { action = [&] { return curve_show(name); }; });
    auto* cert = curve->add_subcommand("certify", "Certify the declared singular points and automorphisms");
    cert->add_option("name", name)->required();
    cert->callback([&] { action = [&] { return curve_certify(name, g); }; });
    auto* pb = curve->add_subcommand("pullback", "Pull back by [x:y:z] -> [x^n:y^n:z^n]");
    pb->add_option("name", name)->required();
    pb->add_option("--n", n)->check(CLI::PositiveNumber);
    pb->callback([&] { action = [&] { return curve_pullback(name, n); }; });
    auto* ab = curve->add_subcommand("assemble-order3", "Assemble the order-3 symmetric octic from the tabulated constants");
    ab->add_option("--root", root, "Root label eta1..eta4");
    ab->add_option("--mapping", mapping, "Constant-name mapping file (default: every shipped mapping)");
    ab->callback([&] { action = [&] { return curve_assemble_order3(root, mapping); }; });
    auto* dp = curve->add_subcommand("derive-points", "Recompute singular points by elimination");
    dp->add_option("name", name)->required();
    dp->add_flag("--check", check, "Compare with the shipped point list");
    dp->add_flag("--write", write, "Rewrite the shipped point list");
    dp->callback([&] { action = [&] { return curve_derive_points(name, check, write, g); }; });
  }

  auto* group = app.add_subcommand("group", "Finitely presented groups");
  group->require_subcommand(1);
  {
    static std::string name, target = "S4";
    static int depth = 3;
    group->add_subcommand("list", "List corpus groups")->callback([&] {
      action = [] {
        for (const auto& n : corpus::names()) std::cout << n << "\n";
        return Outcome{{{"groups", corpus::names()}}};
      };
    });
    auto* show = group->add_subcommand("show", "Print a presentation");
    show->add_option("name", name)->required();
    show->callback([&] { action = [&] { return group_show(name); }; });
    auto* ds = group->add_subcommand("derived-series", "Derived series quotients");
    ds->add_option("name", name)->required();
    ds->add_option("--depth", depth)->check(CLI::PositiveNumber);
    ds->callback([&] { action = [&] { return group_derived_series(name, depth, g); }; });
    auto* ord = group->add_subcommand("order", "Order by coset enumeration");
    ord->add_option("name", name)->required();
    ord->callback([&] { action = [&] { return group_order(name, g); }; });
    auto* homs = group->add_subcommand("homs", "Count homomorphisms to a small group");
    homs->add_option("name", name)->required();
    homs->add_option("--target", target, "S3, S4, D4, Q8 or Z<n>");
    homs->callback([&] { action = [&] { return group_homs(name, target); }; });
    auto* ab = group->add_subcommand("abelianization", "Abelian invariants");
    ab->add_option("name", name)->required();
    ab->callback([&] { action = [&] { return group_abelianization(name); }; });
    auto* ker = group->add_subcommand("kernel", "Reidemeister-Schreier kernel of the abelianization (Kummer map for g_orb22)");
    ker->add_option("name", name)->required();
    ker->callback([&] { action = [&] { return group_kernel(name); }; });
    group->add_subcommand("g0-check", "Commutation relations in the braid-relation quotient")->callback([&] {
      action = [] { return group_g0_check(); };
    });
  }

  auto* solve = app.add_subcommand("solve", "Elimination-tree solver");
  solve->require_subcommand(1);
  {
    static std::string file, order;
    static int cap = 0;
    auto* run = solve->add_subcommand("run", "Run the solver on a system document");
    run->add_option("system", file)->required()->check(CLI::ExistingFile);
    run->add_option("--order", order, "Elimination order, comma-separated");
    run->add_option("--degree-cap", cap, "Degree cap for factors and extensions");
    run->callback([&] { action = [&] { return solve_run(file, order, cap, g); }; });
  }

  {
    static std::string id;
    static bool list = false;
    auto* check = app.add_subcommand("check", "Run one manifest check");
    check->add_option("id", id);
    check->add_flag("--list", list, "List the manifest");
    check->callback([&] { action = [&] { return check_one(id, list, g); }; });
  }
  {
    static std::vector<std::string> tags;
    auto* ver = app.add_subcommand("verify", "Run every manifest check (or those with the given tags)");
    ver->add_option("--tag", tags, "Tag filter; repeatable");
    ver->callback([&] { action = [&] { return verify(tags, g); }; });
  }

  CLI11_PARSE(app, argc, argv);
  if (!action) return 2;
  Outcome out;
  try {
    out = action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    out.doc = json{{"error", e.what()}};
    out.failed = true;
    if (g.report_path.empty()) return 1;
  }
  if (!g.report_path.empty()) {
    std::ofstream f(g.report_path);
    if (!f) {
      std::cerr << "error: cannot write " << g.report_path << "\n";
      return 1;
    }
    f << out.doc.dump(2) << "\n";
  }
  return out.failed ? 1 : 0;
}
