#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "octic/singular.hpp"
#include "test_support.hpp"

using namespace octic;
using octic::testing::random_nonzero;

namespace {

const std::vector<std::string> UV{"u", "v"};
const std::vector<std::string> XYZ{"x", "y", "z"};

MultiPoly uv(const std::string& text, Field f = NumberField::rationals()) { return parse_poly(text, UV, f); }
MultiPoly xyz(const std::string& text, Field f = NumberField::rationals()) { return parse_poly(text, XYZ, f); }

const char* kDeltoidAffine = "v^4 + 4*(1+u)*v^3 + 18*u*v^2 - 27*u^2";
const char* kDeltoidSymmetric = "y^2*z^2 + z^2*x^2 + x^2*y^2 - 2*x*y*z*(x+y+z)";

std::vector<FieldElement> pt(std::initializer_list<long> xs) {
  std::vector<FieldElement> p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

// Random invertible 2x2 change with small entries, applied to a germ at the origin.
MultiPoly random_change(const MultiPoly& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-3, 3);
  for (;;) {
    std::vector<std::vector<FieldElement>> m{{FieldElement(e(rng)), FieldElement(e(rng))},
                                             {FieldElement(e(rng)), FieldElement(e(rng))}};
    if ((m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero()) continue;
    return linear_change(f, m);
  }
}

MultiPoly random_higher_terms(std::mt19937_64& rng, int min_degree, int max_degree) {
  MultiPoly p(UV, NumberField::rationals());
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int d = min_degree; d <= max_degree; ++d)
    for (int i = 0; i <= d; ++i)
      if (rng() % 3 == 0) p.add_term({i, d - i}, FieldElement(coef(rng)));
  return p;
}

}  // namespace

TEST(Cone, Examples) {
  auto c = multiplicity_and_cone(CurveGerm::at_origin(uv("u^3 - v^4")));
  EXPECT_EQ(c.multiplicity, 3);
  EXPECT_TRUE(c.perfect_power);
  EXPECT_EQ(c.form, uv("u^3"));

  c = multiplicity_and_cone(CurveGerm::at_origin(uv("u^2 - v^2")));
  EXPECT_EQ(c.multiplicity, 2);
  EXPECT_FALSE(c.perfect_power);
  EXPECT_EQ(c.distinct_lines, 2);

  c = multiplicity_and_cone(CurveGerm(uv(kDeltoidAffine), pt({1, -3})));
  EXPECT_EQ(c.multiplicity, 2);
  EXPECT_TRUE(c.perfect_power);

  EXPECT_THROW(multiplicity_and_cone(CurveGerm::at_origin(MultiPoly(UV, NumberField::rationals()))), SingularError);
}

TEST(CertifyType, PublishedAndModelExamples) {
  auto cert = certify_type(CurveGerm::at_origin(parse_poly("s^4 - v^3", {"s", "v"}, NumberField::rationals())), Verdict::E6);
  EXPECT_EQ(cert.verdict, Verdict::E6);
  EXPECT_EQ(cert.newton_number, 6);

  cert = certify_type(CurveGerm(uv(kDeltoidAffine), pt({0, 0})), Verdict::A2);
  EXPECT_EQ(cert.verdict, Verdict::A2);
  cert = certify_type(CurveGerm(uv(kDeltoidAffine), pt({1, -3})), Verdict::A2);
  EXPECT_EQ(cert.verdict, Verdict::A2);

  cert = certify_type(CurveGerm::at_origin(uv("u^3 - v^5")), Verdict::E6);
  EXPECT_EQ(cert.verdict, Verdict::Other);
  EXPECT_NE(cert.reason.find("v^4 coefficient zero"), std::string::npos) << cert.reason;

  EXPECT_EQ(certify_type(CurveGerm::at_origin(uv("u^2 - v^2 + u^3")), Verdict::A1).verdict, Verdict::A1);
  EXPECT_EQ(certify_type(CurveGerm::at_origin(uv("u^2 + v^3")), Verdict::A1).verdict, Verdict::Other);
}

TEST(CertifyType, ErrorVerdicts) {
  auto cert = certify_type(CurveGerm(uv("u^3 - v^4"), pt({1, 2})), Verdict::E6);
  EXPECT_EQ(cert.verdict, Verdict::Other);
  EXPECT_EQ(cert.reason, "point not on curve");
  cert = certify_type(CurveGerm::at_origin(uv("u + v^2")), Verdict::A2);
  EXPECT_EQ(cert.verdict, Verdict::Smooth);
  cert = certify_type(CurveGerm::at_origin(uv("u^2 - v^3")), Verdict::E6);
  EXPECT_NE(cert.reason.find("multiplicity mismatch"), std::string::npos);
  cert = certify_type(CurveGerm::at_origin(uv("u^3 - v^3 + v^4")), Verdict::E6);
  EXPECT_NE(cert.reason.find("perfect cube"), std::string::npos);
  EXPECT_NO_THROW(cert.to_json().dump());
}

TEST(CertifyType, DeltoidSymmetricVertices) {
  const MultiPoly f = xyz(kDeltoidSymmetric);
  EXPECT_EQ(f.degree().degree, 4);
  std::vector<std::vector<FieldElement>> cusps{pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})};
  for (const auto& p : cusps)
    EXPECT_EQ(certify_type(CurveGerm::at_projective_point(f, p), Verdict::A2).verdict, Verdict::A2);
  const TangentLines t = tangent_lines_and_concurrency(f, cusps);
  ASSERT_EQ(t.lines.size(), 3u);
  EXPECT_TRUE(t.concurrent);
  // Tangent at [0:0:1] of the symmetric model is x = y.
  EXPECT_EQ(t.lines[2][0], FieldElement(1));
  EXPECT_EQ(t.lines[2][1], FieldElement(-1));
  EXPECT_EQ(t.lines[2][2], FieldElement(0));
  // A smooth point has no unique singular tangent.
  EXPECT_THROW(tangent_lines_and_concurrency(xyz("x^2 + y^2 - z^2"), {pt({1, 0, 1})}), SingularError);
}

TEST(Concurrency, LineTriples) {
  auto line = [](long a, long b, long c) { return ProjectiveLine{FieldElement(a), FieldElement(b), FieldElement(c)}; };
  EXPECT_FALSE(lines_concurrent({line(1, 0, 0), line(0, 1, 0), line(0, 0, 1)}));
  EXPECT_TRUE(lines_concurrent({line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)}));
  EXPECT_TRUE(determinant3({line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)}).is_zero());
}

TEST(Puiseux, Examples) {
  auto br = puiseux_branches(CurveGerm::at_origin(uv("(u - v^2)*(u - v^3)*(u + v^3)")));
  ASSERT_EQ(br.size(), 3u);
  std::vector<std::string> shown;
  for (const auto& b : br) shown.push_back(b.to_string());
  std::sort(shown.begin(), shown.end());
  EXPECT_EQ(shown[0], "u = (-1)*v^3 + O(v^9)");
  EXPECT_EQ(shown[1], "u = (1)*v^2 + O(v^9)");
  EXPECT_EQ(shown[2], "u = (1)*v^3 + O(v^9)");

  auto br2 = puiseux_branches(CurveGerm::at_origin(uv("(u - v^2)*(u^2 - v^6)")));
  EXPECT_EQ(br2.size(), 3u);

  auto br3 = puiseux_branches(CurveGerm::at_origin(uv("u - v - v^2")));
  ASSERT_EQ(br3.size(), 1u);
  EXPECT_EQ(br3[0].to_string(), "u = (1)*v^1 + (1)*v^2 + O(v^9)");

  EXPECT_THROW(puiseux_branches(CurveGerm::at_origin(uv("u^2 - v^3"))), SingularError);
  PuiseuxOptions shallow;
  shallow.truncation = 2;
  EXPECT_THROW(puiseux_branches(CurveGerm::at_origin(uv("(u - v^3)*(u + v^3)")), shallow), SingularError);
  EXPECT_THROW(puiseux_branches(CurveGerm::at_origin(uv("(u - v)^2"))), SingularError);
}

TEST(Puiseux, ExtensionBranches) {
  // u^2 = 2 v^2: branches u = ±sqrt(2) v.
  auto br = puiseux_branches(CurveGerm::at_origin(uv("u^2 - 2*v^2 + u^3")));
  ASSERT_EQ(br.size(), 2u);
  EXPECT_EQ(br[0].coeffs[1] * br[0].coeffs[1], FieldElement(2).lift_to(br[0].field));
  for (const auto& b : br) EXPECT_GT(branch_residual_valuation(CurveGerm::at_origin(uv("u^2 - 2*v^2 + u^3")).local(), b, 20), 8);
}

TEST(Composite, Examples) {
  auto cert = certify_composite(CurveGerm::at_origin(uv("(u - v^2)*(u^2 - v^6)")));
  EXPECT_EQ(cert.verdict, Verdict::Composite3Branch);
  EXPECT_EQ(cert.contacts, (std::vector<int>{2, 2, 3}));
  ASSERT_TRUE(cert.tangent_intersection && cert.tangent_contact_sum);
  EXPECT_EQ(*cert.tangent_intersection, 8);
  EXPECT_EQ(*cert.tangent_contact_sum, 8);

  cert = certify_composite(CurveGerm::at_origin(uv("(u - v^2)*(u - v^3)")));
  EXPECT_EQ(cert.verdict, Verdict::Other);
  EXPECT_NE(cert.reason.find("branch count 2"), std::string::npos);

  cert = certify_composite(CurveGerm::at_origin(uv("(u - v)*(u^2 - v^6)")));
  EXPECT_EQ(cert.reason, "distinct tangents");

  cert = certify_composite(CurveGerm::at_origin(uv("(u - v^2)*(u - v^4)*(u + v^4)")));
  EXPECT_EQ(cert.verdict, Verdict::Other);
  EXPECT_EQ(cert.reason, "contact multiset (2,2,4)");
}

TEST(Bezout, Weighted) {
  EXPECT_EQ(weighted_bezout(1, 8, WeightVector(1, 1, 2)), Rational(4));
  EXPECT_EQ(weighted_bezout(2, 8, WeightVector(1, 1, 2)), Rational(8));
  for (long d = 0; d < 6; ++d) EXPECT_EQ(weighted_bezout(d, d, WeightVector()), Rational(d * d));
  EXPECT_EQ(weighted_bezout(3, 4, WeightVector(2, 3, 5)), Rational(2, 5));
  EXPECT_THROW(WeightVector(2, 4, 1), PolyError);
  EXPECT_THROW(weighted_bezout(-1, 2, WeightVector()), SingularError);
}

TEST(Smoothness, Examples) {
  EXPECT_EQ(certify_smooth_projective(xyz("x^2 + y^2 + z^2")).status, SmoothStatus::Smooth);
  EXPECT_EQ(certify_smooth_projective(xyz("x*y*z")).status, SmoothStatus::Singular);
  const auto c = certify_smooth_projective(xyz("z^4 - 3*x^2*z^2 + y^2*z^2 - 36*x^3*y + 45*x^2*y^2 - 12*x*y^3"));
  EXPECT_EQ(c.status, SmoothStatus::Smooth);
  EXPECT_FALSE(c.witness.empty());
  EXPECT_EQ(certify_smooth_projective(xyz(kDeltoidSymmetric)).status, SmoothStatus::Singular);
  // Nodal cubic: singular at [0:0:1].
  EXPECT_EQ(certify_smooth_projective(xyz("y^2*z - x^3 - x^2*z")).status, SmoothStatus::Singular);
  // Fermat quartic over K.
  const Field k = octic::testing::field_k();
  EXPECT_EQ(certify_smooth_projective(xyz("x^4 + y^4 + eta*z^4", k)).status, SmoothStatus::Smooth);
  EXPECT_THROW(certify_smooth_projective(xyz("x^2 + y")), SingularError);
}

TEST(Smoothness, SingularPointsOverExtensions) {
  // Conic pair meeting at points with irrational coordinates: x^2 + y^2 = 2 z^2 doubled with a line.
  // Product of two smooth conics intersecting in 4 points; singular there.
  const auto c = certify_smooth_projective(xyz("(x^2 + y^2 - 2*z^2)*(x^2 - 3*y^2 + z^2)"));
  EXPECT_EQ(c.status, SmoothStatus::Singular);
}

// ---- properties ----

TEST(Property, CertificateInvariantUnderLinearChanges) {
  std::mt19937_64 rng(101);
  struct Model {
    const char* eq;
    Verdict expected;
    Verdict outcome;
    int higher_from;
  };
  const std::vector<Model> models{{"u^3 - v^4", Verdict::E6, Verdict::E6, 5},
                                  {"u^3 + 2*v^4 + u^2*v^2", Verdict::E6, Verdict::E6, 5},
                                  {"u^2 - v^3", Verdict::A2, Verdict::A2, 4},
                                  {"u^2 - v^2", Verdict::A1, Verdict::A1, 3},
                                  {"u^3 - v^5", Verdict::E6, Verdict::Other, 6},
                                  {"u^2 - v^4", Verdict::A2, Verdict::Other, 5}};
  int cases = 0;
  for (int round = 0; round < 25; ++round)
    for (const auto& m : models) {
      const MultiPoly base = uv(m.eq) + random_higher_terms(rng, m.higher_from, m.higher_from + 1);
      const MultiPoly changed = random_change(base, rng) * FieldElement(static_cast<long>(rng() % 7 + 1));
      const auto a = certify_type(CurveGerm::at_origin(base), m.expected);
      const auto b = certify_type(CurveGerm::at_origin(changed), m.expected);
      ASSERT_EQ(a.verdict, m.outcome) << base.to_string() << " " << a.reason;
      ASSERT_EQ(b.verdict, m.outcome) << changed.to_string() << " " << b.reason;
      // Translation to a random point is also invisible.
      const auto shift = pt({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2});
      const MultiPoly moved = substitute(changed, {{"u", uv("u") - MultiPoly::constant(UV, shift[0])},
                                                   {"v", uv("v") - MultiPoly::constant(UV, shift[1])}});
      ASSERT_EQ(certify_type(CurveGerm(moved, shift), m.expected).verdict, m.outcome);
      ++cases;
    }
  EXPECT_GE(cases, 100);
}

TEST(Property, CertificateInvariantOverNumberField) {
  std::mt19937_64 rng(103);
  const Field k = octic::testing::field_k();
  for (int i = 0; i < 100; ++i) {
    const FieldElement a = random_nonzero(k, rng), b = random_nonzero(k, rng), c = random_nonzero(k, rng);
    std::vector<std::vector<FieldElement>> m{{a, b}, {c, random_nonzero(k, rng)}};
    if ((m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero()) continue;
    const MultiPoly f = linear_change(uv("u^3 - v^4 + u*v^3"), m) * random_nonzero(k, rng);
    ASSERT_EQ(certify_type(CurveGerm::at_origin(f), Verdict::E6).verdict, Verdict::E6);
  }
}

TEST(Property, KouchnirenkoConsistency) {
  EXPECT_EQ(kouchnirenko_segment(3, 4), 6);
  EXPECT_EQ(kouchnirenko_segment(2, 3), 2);
  std::mt19937_64 rng(107);
  for (int i = 0; i < 100; ++i) {
    const MultiPoly e6 = random_change(uv("u^3 + v^4") + random_higher_terms(rng, 5, 6), rng);
    const MultiPoly a2 = random_change(uv("u^2 + v^3") + random_higher_terms(rng, 4, 5), rng);
    ASSERT_EQ(certify_type(CurveGerm::at_origin(e6), Verdict::E6).newton_number, 6);
    ASSERT_EQ(certify_type(CurveGerm::at_origin(a2), Verdict::A2).newton_number, 2);
  }
}

TEST(Property, PuiseuxRoundTrip) {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> coef(-3, 3), nb(1, 3);
  int cases = 0;
  while (cases < 120) {
    // Planted branches u = phi_i(v) with distinct series, multiplied by a unit.
    const int n = nb(rng);
    std::vector<MultiPoly> phis;
    MultiPoly f = uv("1 + u + v");
    for (int i = 0; i < n; ++i) {
      MultiPoly phi(UV, NumberField::rationals());
      for (int k = 1; k <= 4; ++k) phi.add_term({0, k}, FieldElement(coef(rng)));
      phis.push_back(phi);
      f = f * (uv("u") - phi);
    }
    bool distinct = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) distinct &= phis[static_cast<std::size_t>(i)] != phis[static_cast<std::size_t>(j)];
    if (!distinct) continue;
    const auto br = puiseux_branches(CurveGerm::at_origin(f));
    ASSERT_EQ(static_cast<int>(br.size()), n) << f.to_string();
    for (const auto& b : br) ASSERT_GT(branch_residual_valuation(f, b, 64), b.truncation) << f.to_string();
    ++cases;
  }
}

TEST(Property, ContactSumInvariantUnderShear) {
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<int> coef(-2, 2);
  int cases = 0;
  while (cases < 100) {
    // Three branches through the origin with a common random tangent slope.
    const int slope = coef(rng);
    MultiPoly f = uv("1");
    std::vector<std::vector<int>> series;
    for (int i = 0; i < 3; ++i) {
      std::vector<int> s{0, slope, coef(rng), coef(rng), coef(rng)};
      series.push_back(s);
      MultiPoly phi(UV, NumberField::rationals());
      for (int k = 1; k <= 4; ++k) phi.add_term({0, k}, FieldElement(s[static_cast<std::size_t>(k)]));
      f = f * (uv("u") - phi);
    }
    if (series[0] == series[1] || series[0] == series[2] || series[1] == series[2]) continue;
    int expected = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        int k = 0;
        while (series[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ==
               series[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
          ++k;
        expected += k;
      }
    for (long s : {0L, 1L, -1L, 2L}) {
      PuiseuxOptions o;
      o.shear = s;
      std::vector<BranchExpansion> br;
      try {
        br = puiseux_branches(CurveGerm::at_origin(f), o);
      } catch (const SingularError&) {
        continue;  // shear value not admissible for this tangent
      }
      ASSERT_EQ(br.size(), 3u);
      int sum = 0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) sum += contact_order(br[i], br[j]);
      ASSERT_EQ(sum, expected) << f.to_string() << " shear " << s;
    }
    ++cases;
  }
}
