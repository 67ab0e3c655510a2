#include <gtest/gtest.h>

#include <random>

#include "octic/elim.hpp"
#include "test_support.hpp"

using namespace octic;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

MultiPoly xy(const std::string& s) { return parse_poly(s, XY, NumberField::rationals()); }

EliminationNode node_of(std::vector<MultiPoly> gens, std::vector<std::string> remaining) {
  EliminationNode n;
  n.generators = std::move(gens);
  n.remaining = std::move(remaining);
  return n;
}

std::vector<SolutionRecord> solve_all(const TreeReport& tree) {
  std::vector<SolutionRecord> out;
  for (int id : tree.leaves(NodeStatus::SolvedLeaf))
    for (auto& s : back_substitute(tree, id).solutions) out.push_back(std::move(s));
  return out;
}

}  // namespace

TEST(EliminateStep, Examples) {
  ElimLog log;
  auto n = node_of({xy("x^2 + y^2 - 1"), xy("x - y")}, {"x", "y"});
  ASSERT_EQ(choose_pivot(n.generators, "x"), std::optional<std::size_t>(1));
  auto res = eliminate_step(n, 1, "x", {}, {}, log);
  ASSERT_EQ(res.size(), 1u);
  ASSERT_EQ(res[0].factors.size(), 1u);
  EXPECT_EQ(res[0].factors[0].poly, xy("y^2 - 1/2"));
  EXPECT_EQ(res[0].resultant, xy("2*y^2 - 1"));

  n = node_of({xy("x - 1"), xy("x - 2")}, {"x", "y"});
  res = eliminate_step(n, 0, "x", {}, {}, log);
  ASSERT_EQ(res.size(), 1u);
  EXPECT_TRUE(res[0].constant);
  EXPECT_TRUE(expand_children(n, "x", res, {}, log).empty());

  n = node_of({xy("x*y"), xy("x")}, {"x", "y"});
  res = eliminate_step(n, 1, "x", {}, {}, log);
  ASSERT_EQ(res.size(), 1u);
  EXPECT_TRUE(res[0].zero);

  EXPECT_THROW(eliminate_step(node_of({xy("y"), xy("x")}, {"x"}), 0, "x", {}, {}, log), ElimError);
}

TEST(ExpandChildren, CartesianAndFilters) {
  ElimLog log;
  auto n = node_of({xy("x"), xy("x - y^2 + y")}, {"x", "y"});
  auto res = eliminate_step(n, 0, "x", {}, {}, log);
  auto kids = expand_children(n, "x", res, {}, log);
  EXPECT_EQ(kids.size(), 2u);  // factors y and y - 1

  const auto degenerate = FactorFilter::monomial("vanishing coordinate");
  res = eliminate_step(n, 0, "x", {degenerate}, {}, log);
  kids = expand_children(n, "x", res, {degenerate}, log);
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_EQ(kids[0].generators, std::vector<MultiPoly>{xy("y - 1")});
  EXPECT_NE(std::find_if(log.lines.begin(), log.lines.end(),
                         [](const std::string& l) { return l.find("filter vanishing coordinate removed y") != std::string::npos; }),
            log.lines.end());

  const auto both = FactorFilter::divides("collision", xy("y^2 - y"));
  kids = expand_children(n, "x", eliminate_step(n, 0, "x", {both}, {}, log), {both}, log);
  EXPECT_TRUE(kids.empty());
}

TEST(Search, PlantedRational) {
  const auto tree = search({xy("x + y - 3"), xy("x - y - 1")}, {"x", "y"}, {});
  const auto sols = solve_all(tree);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].values.at("x"), FieldElement(2));
  EXPECT_EQ(sols[0].values.at("y"), FieldElement(1));
  EXPECT_TRUE(sols[0].verified);
}

TEST(Search, PlantedSqrt2) {
  const auto tree = search({xy("x^2 - 2"), xy("y - x - 1")}, {"y", "x"}, {});
  const auto sols = solve_all(tree);
  ASSERT_EQ(sols.size(), 1u);
  const auto& s = sols[0];
  ASSERT_EQ(s.extensions.size(), 1u);
  EXPECT_EQ(s.values.at("x") * s.values.at("x"), FieldElement(2).lift_to(s.field));
  EXPECT_EQ(s.values.at("y"), s.values.at("x") + FieldElement(1).lift_to(s.field));
}

TEST(Search, Inconsistent) {
  const auto tree = search({xy("x^2 + y"), xy("x^2 + y + 1")}, {"x", "y"}, {});
  EXPECT_TRUE(tree.leaves(NodeStatus::SolvedLeaf).empty());
  EXPECT_FALSE(tree.leaves(NodeStatus::Contradictory).empty());
  EXPECT_TRUE(solve_all(tree).empty());
}

TEST(BackSubstitute, LeafExamples) {
  const auto tree = search({parse_poly("x - 3", {"x"}, NumberField::rationals())}, {"x"}, {});
  auto sols = solve_all(tree);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].values.at("x"), FieldElement(3));

  // Quartic leaf defining K: one solution per root label, field of degree 4.
  const auto t = search({parse_poly("t^4 - 2*t^3 + t^2 - 2*t - 2", {"t"}, NumberField::rationals())}, {"t"}, {});
  sols = solve_all(t);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].field->absolute_degree(), 4u);

  ElimBudgets low;
  low.degree_cap = 2;
  const auto t2 = search({parse_poly("t^4 - 2*t^3 + t^2 - 2*t - 2", {"t"}, NumberField::rationals())}, {"t"}, {}, low);
  EXPECT_EQ(t2.leaves(NodeStatus::UnresolvedLeaf).size(), 1u);
}

TEST(BackSubstitute, ReducedReconstructionOverK) {
  // A small system whose solution lives in K: s = eta^2 - eta, with eta a root of p.
  const auto tree = search({parse_poly("t^4 - 2*t^3 + t^2 - 2*t - 2", {"t", "s"}, NumberField::rationals()),
                            parse_poly("s - t^2 + t", {"t", "s"}, NumberField::rationals()),
                            parse_poly("s^2 - s*t^2 + s*t", {"t", "s"}, NumberField::rationals())},
                           {"s", "t"}, {});
  const auto sols = solve_all(tree);
  ASSERT_EQ(sols.size(), 1u);
  const auto& v = sols[0].values;
  EXPECT_EQ(v.at("s"), v.at("t") * v.at("t") - v.at("t"));
}

TEST(Search, DeterministicAndFilterTransparency) {
  const auto gens = std::vector<MultiPoly>{xy("x*y - x"), xy("x^2 + y^2 - 1 - x*y")};
  const auto a = search(gens, {"x", "y"}, {FactorFilter::monomial()});
  const auto b = search(gens, {"x", "y"}, {FactorFilter::monomial()});
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  const auto open = search(gens, {"x", "y"}, {});
  EXPECT_GE(open.leaves(NodeStatus::SolvedLeaf).size(), a.leaves(NodeStatus::SolvedLeaf).size());
  EXPECT_GE(solve_all(open).size(), solve_all(a).size());
}

TEST(Search, BudgetAndSystemDocument) {
  ElimBudgets tiny;
  tiny.node_cap = 1;
  const auto t = search({xy("x - y^2"), xy("x^2 - y"), xy("x*y - 1")}, {"x", "y"}, {}, tiny);
  EXPECT_NE(t.status, "complete");

  const auto spec = system_from_json(nlohmann::json::parse(R"({
    "variables": ["x", "y"],
    "generators": ["x^2 + y^2 - 1", "x - y"],
    "filters": [{"type": "monomial", "name": "coordinate"}],
    "budgets": {"degree_cap": 2}
  })"));
  EXPECT_EQ(spec.order, (std::vector<std::string>{"y", "x"}));
  EXPECT_EQ(spec.budgets.degree_cap, 2);
  const auto sols = solve_all(search(spec.generators, spec.order, spec.filters, spec.budgets));
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].values.at("x") * sols[0].values.at("x") * FieldElement(2),
            FieldElement(1).lift_to(sols[0].field));
}

// ---- properties ----

TEST(Property, SoundnessAndNecessityOnPlantedSystems) {
  std::mt19937_64 rng(211);
  std::uniform_int_distribution<int> coord(-4, 4);
  int found = 0, runs = 0;
  while (runs < 150) {
    const int nvars = 2 + static_cast<int>(rng() % 2);
    const std::vector<std::string> vars = nvars == 2 ? XY : XYZ;
    std::vector<FieldElement> point;
    for (int i = 0; i < nvars; ++i) point.emplace_back(coord(rng));
    std::vector<MultiPoly> gens;
    for (int i = 0; i < nvars; ++i) {
      MultiPoly g = octic::testing::random_poly(vars, NumberField::rationals(), 2, rng, 0.5);
      g -= MultiPoly::constant(vars, g.evaluate(point));
      if (g.is_zero()) break;
      gens.push_back(g);
    }
    if (static_cast<int>(gens.size()) != nvars) continue;
    ++runs;
    std::vector<std::string> order(vars.rbegin(), vars.rend());
    ElimBudgets b;
    b.node_cap = 400;
    const auto tree = search(gens, order, {}, b);
    bool hit = false;
    for (int id : tree.leaves(NodeStatus::SolvedLeaf)) {
      const auto bs = back_substitute(tree, id, b);  // throws if any emitted solution fails
      for (const auto& s : bs.solutions) {
        ASSERT_TRUE(s.verified);
        std::vector<FieldElement> p;
        for (const auto& v : vars) p.push_back(s.values.at(v));
        for (const auto& g : gens) ASSERT_TRUE(g.lift_to(s.field).evaluate(p).is_zero());
        bool same = true;
        for (int i = 0; i < nvars; ++i) same &= p[static_cast<std::size_t>(i)] == point[static_cast<std::size_t>(i)].lift_to(s.field);
        hit |= same;
      }
    }
    // Resultant necessity: the planted point annihilates every resultant taken at the root.
    ElimLog log;
    EliminationNode root;
    root.generators = gens;
    root.remaining = order;
    const auto piv = choose_pivot(gens, order.front());
    if (piv) {
      for (const auto& r : eliminate_step(root, *piv, order.front(), {}, b, log))
        ASSERT_TRUE(r.resultant.evaluate(point).is_zero());
    }
    found += hit;
  }
  // Most planted systems are zero-dimensional and their point is recovered.
  EXPECT_GE(found, 100);
}
