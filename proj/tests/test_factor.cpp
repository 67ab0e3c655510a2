#include <gtest/gtest.h>

#include <random>

#include "octic/factor.hpp"
#include "test_support.hpp"

using namespace octic;
using octic::testing::field_k;
using octic::testing::field_k1;
using octic::testing::random_nonzero;

namespace {

UPoly rebuild(const FactorResult& r, Field f) {
  UPoly prod = UPoly::constant(r.unit.lift_to(f));
  for (const auto& part : {r.irreducible, r.unresolved})
    for (const auto& sf : part) prod = prod * sf.factor.lift_to(f).pow(sf.multiplicity);
  return prod;
}

UPoly linear(const FieldElement& root) {
  return UPoly(root.field(), {-root, root.field()->one()});
}

}  // namespace

TEST(Factor, DefiningQuarticIsIrreducibleOverQ) {
  UPoly p = UPoly::from_rationals({-2, -2, 1, -2, 1});
  EXPECT_TRUE(is_irreducible(p));
  FactorResult r = factor(p);
  EXPECT_TRUE(r.complete());
  ASSERT_EQ(r.irreducible.size(), 1u);
}

TEST(Factor, RepeatedFactorsOverQ) {
  UPoly f = UPoly::from_rationals({-1, 1}).pow(2) * UPoly::from_rationals({-2, 1}).pow(2) *
            UPoly::from_rationals({1, 0, 1});
  FactorResult r = factor(f);
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(r.irreducible.size(), 3u);
  EXPECT_EQ(rebuild(r, NumberField::rationals()), f);
}

TEST(Factor, HighDegreeCofactorIsUnresolvedAboveCap) {
  // Swinnerton-Dyer style degree-4 irreducible: x^4 - 10x^2 + 1 splits mod every prime into
  // factors of degree <= 2, so recombination does the work; with cap 1 it is not certified.
  UPoly f = UPoly::from_rationals({1, 0, -10, 0, 1});
  FactorResult capped = factor(f, {.degree_cap = 1});
  EXPECT_FALSE(capped.complete());
  FactorResult full = factor(f, {.degree_cap = 2});
  EXPECT_TRUE(full.complete());
  EXPECT_EQ(full.irreducible.size(), 1u);
}

TEST(Factor, DefiningQuarticSplitsOverK) {
  Field k = field_k();
  UPoly p = UPoly::from_rationals({-2, -2, 1, -2, 1}).lift_to(k);
  auto roots = roots_in_field(p);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0], k->generator());
  FactorResult r = factor(p, {.degree_cap = 3});
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(r.irreducible.size(), 2u);
}

TEST(Factor, CyclotomicSplitsOverK1) {
  Field k1 = field_k1();
  UPoly f = UPoly::from_rationals({1, 1, 1}).lift_to(k1);
  auto roots = roots_in_field(f);
  EXPECT_EQ(roots.size(), 2u);
  EXPECT_FALSE(is_irreducible(f));
  EXPECT_TRUE(is_irreducible(UPoly::from_rationals({1, 1, 1}).lift_to(field_k())));
}

TEST(FactorProperties, PlantedRationalFactorizations) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> c(-6, 6), kind(0, 2);
  for (int trial = 0; trial < 120; ++trial) {
    UPoly f = UPoly::from_rationals({Rational(c(rng) == 0 ? 3 : 2)});
    int planted = 0;
    for (int k = 0; k < 3; ++k) {
      switch (kind(rng)) {
        case 0: f = f * UPoly::from_rationals({Rational(c(rng)), Rational(1 + std::abs(c(rng)))}); break;
        case 1: f = f * UPoly::from_rationals({Rational(1 + std::abs(c(rng))), Rational(c(rng)), 1}); break;
        default: f = f * UPoly::from_rationals({Rational(c(rng)), 0, 0, 1}); break;
      }
      ++planted;
    }
    FactorResult r = factor(f, {.degree_cap = 3});
    ASSERT_TRUE(r.complete()) << f.to_string("t");
    ASSERT_EQ(rebuild(r, NumberField::rationals()), f);
    for (const auto& sf : r.irreducible) ASSERT_LE(sf.factor.degree(), 3);
    int count = 0;
    for (const auto& sf : r.irreducible) count += sf.multiplicity * (sf.factor.degree() > 0);
    ASSERT_GE(count, 1);
    ASSERT_LE(count, 3 * planted);
  }
}

TEST(FactorProperties, PlantedRootsOverK) {
  std::mt19937_64 rng(32);
  Field k = field_k();
  for (int trial = 0; trial < 100; ++trial) {
    FieldElement a = octic::testing::random_element(k, rng, 3);
    FieldElement b = octic::testing::random_element(k, rng, 3);
    if (a == b) continue;
    // (t - a)(t - b)(t^2 - eta) with t^2 - eta irreducible over K
    UPoly quad(k, {-k->generator(), k->zero(), k->one()});
    UPoly f = linear(a) * linear(b) * quad;
    auto roots = roots_in_field(f);
    ASSERT_EQ(roots.size(), 2u);
    for (const auto& r : roots) ASSERT_TRUE(r == a || r == b);
    if (trial % 5 == 0) {
      FactorResult r = factor(f);
      ASSERT_TRUE(r.complete());
      ASSERT_EQ(rebuild(r, k), f);
    }
  }
}

TEST(FactorProperties, NonzeroScalarsDoNotChangeFactors) {
  std::mt19937_64 rng(33);
  Field k1 = field_k1();
  for (int trial = 0; trial < 100; ++trial) {
    FieldElement s = random_nonzero(k1, rng);
    UPoly f = UPoly::from_rationals({1, 1, 1}).lift_to(k1) * s;
    auto roots = roots_in_field(f);
    ASSERT_EQ(roots.size(), 2u);
    for (const auto& r : roots) ASSERT_TRUE(f.eval(r).is_zero());
  }
}
