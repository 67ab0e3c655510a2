#include <gtest/gtest.h>

#include <random>

#include "octic/multipoly.hpp"
#include "test_support.hpp"

using namespace octic;
using octic::testing::field_k;
using octic::testing::random_element;
using octic::testing::random_poly;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kUV{"u", "v"};

MultiPoly q(const std::string& text, const std::vector<std::string>& vars = kXYZ) {
  return parse_poly(text, vars, NumberField::rationals());
}

}  // namespace

TEST(MultiPoly, DeltoidDegreeAndHomogeneity) {
  MultiPoly f = q("y^2*z^2+z^2*x^2+x^2*y^2-2*x*y*z*(x+y+z)");
  DegreeInfo d = f.degree();
  EXPECT_EQ(d.degree, 4);
  EXPECT_TRUE(d.homogeneous);
  EXPECT_TRUE((f + (-f)).is_zero());
}

TEST(MultiPoly, WeightedDegree) {
  MultiPoly g = q("x^4*z + y^2*z^2 + x^8");
  DegreeInfo d = g.degree(WeightVector(1, 1, 2));
  EXPECT_EQ(d.degree, 8);
  EXPECT_FALSE(d.homogeneous);
  EXPECT_TRUE(q("x^4*z^2 + z^4 + x^2*y^2*z^2").degree(WeightVector(1, 1, 2)).homogeneous);
  EXPECT_THROW(WeightVector(2, 4, 1), PolyError);
}

TEST(MultiPoly, ParserHandlesPowersAndFieldConstants) {
  Field k = field_k();
  MultiPoly f = parse_poly("(eta*x - 1)^2", {"x"}, k);
  FieldElement eta = k->generator();
  EXPECT_EQ(f.coefficient({2}), eta * eta);
  EXPECT_EQ(f.coefficient({1}), FieldElement(-2) * eta);
  EXPECT_EQ(f.coefficient({0}), FieldElement(1));
  EXPECT_EQ(q("x**2 - 1/3*y"), q("x^2 - y/3"));
  EXPECT_THROW(q("x + w"), PolyError);
}

TEST(MultiPoly, CanonicalRoundTrip) {
  Field k = field_k();
  MultiPoly f = parse_poly("437*eta^3*x^2*y - 1/2*z^3 + eta", kXYZ, k);
  auto j = to_canonical(f);
  EXPECT_EQ(from_canonical(j, kXYZ, k), f);
  // leading term first
  EXPECT_EQ(j[0][0], (nlohmann::json{2, 1, 0}));
}

TEST(MultiPoly, Derivatives) {
  EXPECT_EQ(derivative(q("v^2-u^3", kUV), "u"), q("-3*u^2", kUV));
  MultiPoly deltoid = q("v^4+4*(1+u)*v^3+18*u*v^2-27*u^2", kUV);
  EXPECT_EQ(derivative(deltoid, "v"), q("4*v^3+12*(1+u)*v^2+36*u*v", kUV));
  EXPECT_THROW(derivative(deltoid, "w"), PolyError);
}

TEST(MultiPoly, SubstituteMonomials) {
  MultiPoly f = q("x*y*z");
  std::map<std::string, MultiPoly> a{{"x", q("x^2")}, {"y", q("y^2")}, {"z", q("z^2")}};
  EXPECT_EQ(substitute(f, a), q("x^2*y^2*z^2"));
}

TEST(Resultant, HandExamples) {
  MultiPoly r = resultant(q("x^2-2", {"x", "y"}), q("x-y", {"x", "y"}), "x");
  EXPECT_EQ(r, q("y^2-2", {"x", "y"}));
  std::vector<std::string> v{"x", "a", "b"};
  EXPECT_EQ(resultant(q("x-a", v), q("x-b", v), "x"), q("a-b", v));
}

TEST(Resultant, CommonRootOverK) {
  Field k = field_k();
  MultiPoly p = parse_poly("t^4-2*t^3+t^2-2*t-2", {"t"}, k);
  MultiPoly l = parse_poly("t-eta", {"t"}, k);
  EXPECT_TRUE(resultant(p, l, "t").is_zero());
}

TEST(Resultant, DegreeZeroIsReported) {
  EXPECT_THROW(resultant(q("y^2+1"), q("x-y"), "x"), PolyError);
}

TEST(Squarefree, DecompositionAndGcd) {
  UPoly f = UPoly::from_rationals({2, -3, 0, 1});  // (t-1)^2 (t+2)
  auto dec = squarefree_decomposition(f);
  ASSERT_EQ(dec.size(), 2u);
  EXPECT_EQ(dec[0].multiplicity, 1);
  EXPECT_EQ(dec[0].factor, UPoly::from_rationals({2, 1}));
  EXPECT_EQ(dec[1].multiplicity, 2);
  EXPECT_EQ(dec[1].factor, UPoly::from_rationals({-1, 1}));
  EXPECT_EQ(gcd(UPoly::from_rationals({-1, 0, 1}), UPoly::from_rationals({1, -2, 1})), UPoly::from_rationals({-1, 1}));
  EXPECT_THROW(squarefree_decomposition(UPoly::from_rationals({})), FieldError);
}

TEST(Squarefree, DeltoidDiscriminantVanishesAtCuspAbscissas) {
  MultiPoly f = q("v^4+4*(1+u)*v^3+18*u*v^2-27*u^2", kUV);
  MultiPoly r = resultant(f, derivative(f, "v"), "v");
  UPoly sf = squarefree_part(to_upoly(r, 0));
  EXPECT_TRUE(sf.eval(FieldElement(0L)).is_zero());
  EXPECT_TRUE(sf.eval(FieldElement(1L)).is_zero());
}

TEST(PolyProperties, ResultantSymmetrySign) {
  std::mt19937_64 rng(21);
  const std::vector<std::string> vars{"x", "y"};
  int checked = 0;
  while (checked < 120) {
    MultiPoly f = random_poly(vars, NumberField::rationals(), 1 + checked % 3, rng);
    MultiPoly g = random_poly(vars, NumberField::rationals(), 1 + (checked / 3) % 3, rng);
    const int df = f.degree_in(0), dg = g.degree_in(0);
    if (df < 1 || dg < 1) continue;
    MultiPoly a = resultant(f, g, "x"), b = resultant(g, f, "x");
    ASSERT_EQ(a, (df * dg) % 2 ? -b : b);
    ++checked;
  }
}

TEST(PolyProperties, ResultantMultiplicativity) {
  std::mt19937_64 rng(22);
  const std::vector<std::string> vars{"x", "y"};
  int checked = 0;
  while (checked < 100) {
    MultiPoly f = random_poly(vars, NumberField::rationals(), 2, rng);
    MultiPoly h = random_poly(vars, NumberField::rationals(), 2, rng);
    MultiPoly g = random_poly(vars, NumberField::rationals(), 2, rng);
    if (f.degree_in(0) < 1 || h.degree_in(0) < 1 || g.degree_in(0) < 1) continue;
    ASSERT_EQ(resultant(f * h, g, "x"), resultant(f, g, "x") * resultant(h, g, "x"));
    ++checked;
  }
}

TEST(PolyProperties, ResultantMultiplicativityOverK) {
  std::mt19937_64 rng(23);
  Field k = field_k();
  const std::vector<std::string> vars{"x", "y"};
  int checked = 0;
  while (checked < 100) {
    MultiPoly f = random_poly(vars, k, 1 + checked % 2, rng, 0.5);
    MultiPoly h = random_poly(vars, k, 1, rng, 0.7);
    MultiPoly g = random_poly(vars, k, 2, rng, 0.5);
    if (f.degree_in(0) < 1 || h.degree_in(0) < 1 || g.degree_in(0) < 1) continue;
    ASSERT_EQ(resultant(f * h, g, "x"), resultant(f, g, "x") * resultant(h, g, "x"));
    ++checked;
  }
}

TEST(PolyProperties, PlantedCommonRootKillsResultant) {
  std::mt19937_64 rng(24);
  const std::vector<std::string> vars{"x", "y"};
  std::uniform_int_distribution<int> pick(-4, 4);
  int checked = 0;
  while (checked < 120) {
    // f and g share the factor (x - a*y - b): their resultant vanishes identically; shifting by
    // y0 makes the common root appear only at the chosen parameter value y = y0.
    const long y0 = pick(rng);
    MultiPoly root = q("x", vars) - MultiPoly::constant(vars, FieldElement(static_cast<long>(pick(rng))));
    MultiPoly f1 = random_poly(vars, NumberField::rationals(), 1, rng);
    MultiPoly g1 = random_poly(vars, NumberField::rationals(), 1, rng);
    MultiPoly shift = q("y", vars) - MultiPoly::constant(vars, FieldElement(y0));
    MultiPoly f = root * f1 + shift * random_poly(vars, NumberField::rationals(), 1, rng);
    MultiPoly g = root * g1 + shift * random_poly(vars, NumberField::rationals(), 1, rng);
    if (f.degree_in(0) < 1 || g.degree_in(0) < 1) continue;
    MultiPoly r = resultant(f, g, "x");
    ASSERT_TRUE(r.partial_evaluate(1, FieldElement(y0)).is_zero());
    ++checked;
  }
}

TEST(PolyProperties, SquarefreeFactorsAreSquarefree) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> root(-5, 5), mult(1, 3);
  for (int trial = 0; trial < 120; ++trial) {
    UPoly f = UPoly::from_rationals({1});
    for (int k = 0; k < 3; ++k) f = f * UPoly::from_rationals({Rational(root(rng)), 1}).pow(mult(rng));
    if (trial % 2) f = f * UPoly::from_rationals({Rational(root(rng) * root(rng) + 1), 0, 1});
    auto dec = squarefree_decomposition(f);
    UPoly prod = UPoly::from_rationals({1});
    for (std::size_t i = 0; i < dec.size(); ++i) {
      ASSERT_EQ(gcd(dec[i].factor, dec[i].factor.derivative()).degree(), 0);
      for (std::size_t j = 0; j < i; ++j) ASSERT_EQ(gcd(dec[i].factor, dec[j].factor).degree(), 0);
      prod = prod * dec[i].factor.pow(dec[i].multiplicity);
    }
    ASSERT_EQ(prod, f.monic());
  }
}

TEST(PolyProperties, EulerIdentityForHomogeneous) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 5;
    MultiPoly f = random_poly(kXYZ, NumberField::rationals(), d, rng).homogeneous_part(d);
    MultiPoly euler = q("x") * derivative(f, "x") + q("y") * derivative(f, "y") + q("z") * derivative(f, "z");
    ASSERT_EQ(euler, f * FieldElement(static_cast<long>(d)));
  }
}
