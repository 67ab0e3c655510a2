#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "octic/braid.hpp"
#include "octic/group_corpus.hpp"
#include "octic/subgroups.hpp"

using namespace octic;

namespace {

Word random_word(std::mt19937_64& rng, int ngens, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, ngens - 1), sign(0, 1);
  std::vector<Letter> l;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) l.push_back(letter(gen(rng), sign(rng) ? 1 : -1));
  return Word(std::move(l));
}

BraidWord random_braid(std::mt19937_64& rng, int strands, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(1, strands - 1), sign(0, 1);
  std::vector<int> l;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) l.push_back(sign(rng) ? gen(rng) : -gen(rng));
  return BraidWord(strands, std::move(l));
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> v(-bound, bound);
  IntMatrix m(rows, std::vector<Integer>(cols));
  for (auto& r : m)
    for (auto& x : r) x = v(rng);
  return m;
}

}  // namespace

TEST(Words, FreeReductionAndParsing) {
  std::vector<std::string> g{"a", "b"};
  EXPECT_TRUE(parse_word("a*b*b^-1*a^-1", g).empty());
  EXPECT_EQ(format_word(parse_word("a^3*b^-2", g), g), "a^3*b^-2");
  EXPECT_EQ(parse_word("[a,b]", g), parse_word("a^-1*b^-1*a*b", g));
  EXPECT_EQ(parse_word("a*b = b*a", g), parse_word("a*b*a^-1*b^-1", g));
  EXPECT_THROW(parse_word("a*c", g), GroupError);
}

TEST(Words, CanonicalRelatorIdentifiesConjugatesAndInverses) {
  std::vector<std::string> g{"a", "b"};
  Word r = parse_word("a*b*a^-1*b^-1", g);
  EXPECT_EQ(canonical_relator(r), canonical_relator(parse_word("b*a^-1*b^-1*a", g)));
  EXPECT_EQ(canonical_relator(r), canonical_relator(r.inverse()));
  EXPECT_EQ(canonical_relator(parse_word("b*a*a*b^-1", g)), canonical_relator(parse_word("a^2", g)));
}

TEST(Braid, ActionOfDeltoidBraids) {
  EXPECT_EQ(artin_act(deltoid_tau1(), Word::generator(3), 4), Word::generator(3));
  EXPECT_EQ(artin_act(deltoid_tau2(), Word::generator(3), 4), Word::generator(1));
  Word c1 = Word::generator(0), c2 = Word::generator(1), c3 = Word::generator(2);
  EXPECT_EQ(artin_act(deltoid_tau1(), c3, 4), c1 * c2 * c1.inverse());
  EXPECT_EQ(artin_act(deltoid_tau1(), c1, 4), conjugate(c3, (c1 * c2).inverse()));
  EXPECT_EQ(artin_act(BraidWord(4, {}), c1 * c3, 4), c1 * c3);
  EXPECT_THROW(BraidWord(3, {3}), GroupError);
}

TEST(Braid, FullTwistOnTwoStrands) {
  Presentation p = zvk_presentation(2, {{"l", BraidWord(2, {1, 1})}}, false);
  Presentation expected = Presentation::from_text({"c1", "c2", "l"}, {"l^-1*c1*l = c1*c2*c1*c2^-1*c1^-1", "l^-1*c2*l = c1*c2*c1^-1"});
  EXPECT_TRUE(corpus::same_relators(p, expected));
  Presentation z = zvk_presentation(1, {}, false);
  EXPECT_EQ(z.ngens(), 1u);
  EXPECT_TRUE(z.relators.empty());
}

TEST(Braid, ZvkReproducesPrintedRelations) { EXPECT_TRUE(corpus::same_relators(corpus::gdl(), corpus::gdl_printed())); }

TEST(Braid, G0RelationsAndControl) {
  auto checks = g0_commutation_checks(deltoid_tau1(), deltoid_tau2());
  ASSERT_EQ(checks.size(), 4u);
  for (const auto& c : checks) EXPECT_TRUE(c.equal) << "i=" << c.index;
  EXPECT_FALSE(verify_g0_relations(deltoid_tau1(), BraidWord(4, {2, 2})));
  // Braid relation holds, commutation of c1 and c2 does not.
  Word c1 = Word::generator(0), c2 = Word::generator(1), c3 = Word::generator(2);
  EXPECT_TRUE(g0_equal(c1 * c2 * c1, c2 * c1 * c2));
  EXPECT_FALSE(g0_equal(c1 * c2, c2 * c1));
  EXPECT_FALSE(g0_is_trivial(commutator(c1, c3)));
}

TEST(Smith, HandExamples) {
  SmithForm s = smith_normal_form({{2, 4}, {6, 8}});
  EXPECT_EQ(s.diagonal, (std::vector<Integer>{2, 4}));
  EXPECT_EQ(smith_normal_form({{1, 0}, {0, 1}}).diagonal, (std::vector<Integer>{1, 1}));
  AbelianInvariants z = invariants_from_diagonal(smith_normal_form({{0}}).diagonal, 1);
  EXPECT_EQ(z.free_rank, 1);
  EXPECT_TRUE(z.torsion.empty());
}

TEST(Abelian, InvariantsTextRoundTrip) {
  AbelianInvariants a = parse_abelian_invariants("Z^9 + (Z/2)^5 + Z/4");
  EXPECT_EQ(a.free_rank, 9);
  EXPECT_EQ(a.to_string(), "Z^9 + (Z/2)^5 + Z/4");
  EXPECT_EQ(parse_abelian_invariants("Z/2 + Z/3").to_string(), "Z/6");
}

TEST(Abelian, CorpusAbelianizations) {
  EXPECT_EQ(abelianization(corpus::g_symp()).to_string(), "Z/8");
  EXPECT_EQ(abelianization(corpus::g2()).to_string(), "Z/8");
  EXPECT_EQ(abelianization(Presentation({"a", "b"})).to_string(), "Z^2");
}

TEST(ReidemeisterSchreier, FreeGroupOntoZ2) {
  Presentation f2({"a", "b"});
  Presentation k = rs_kernel(f2, {{2}, {{1}, {1}}});
  EXPECT_EQ(k.ngens(), 3u);
  EXPECT_TRUE(k.relators.empty());
}

TEST(ReidemeisterSchreier, TrivialTargetGivesSameGroup) {
  Presentation p = corpus::g2();
  Presentation k = rs_kernel(p, {{}, {{}, {}, {}}}, {.simplify = false});
  EXPECT_EQ(k.ngens(), p.ngens());
  EXPECT_EQ(abelianization(k), abelianization(p));
}

TEST(ReidemeisterSchreier, RejectsNonSurjection) {
  EXPECT_THROW(rs_kernel(Presentation({"a", "b"}), {{4}, {{2}, {0}}}), GroupError);
}

TEST(DerivedSeries, StopsOnInfiniteAbelianization) {
  DerivedSeriesResult r = derived_series_quotients(Presentation({"x"}), 2);
  ASSERT_EQ(r.quotients.size(), 1u);
  EXPECT_EQ(r.quotients[0].to_string(), "Z");
  EXPECT_EQ(r.status, "infinite abelianization");
}

TEST(Tietze, SimpleEliminations) {
  Presentation p = Presentation::from_text({"a", "b"}, {"b*a^-1"});
  Presentation s = tietze_simplify(p);
  EXPECT_EQ(s.ngens(), 1u);
  EXPECT_TRUE(s.relators.empty());
  Presentation q = Presentation::from_text({"a", "b"}, {"a*b*a^-1*b^-1", "b^2"});
  EXPECT_EQ(abelianization(tietze_simplify(q)).to_string(), "Z + Z/2");
}

TEST(ToddCoxeter, CyclicAndCremona) {
  Presentation c8 = Presentation::from_text({"x"}, {"x^8"});
  CosetTable t = todd_coxeter(c8, {});
  EXPECT_TRUE(t.complete);
  EXPECT_EQ(t.cosets, 8u);
  EXPECT_TRUE(t.verify(c8));
  RegularRepresentation reg(corpus::cremona24());
  EXPECT_EQ(reg.order(), 24u);
  Presentation p = corpus::cremona24();
  Word c2 = p.parse("c2"), c3 = p.parse("c3");
  EXPECT_EQ(reg.element_order(c2), 8);
  EXPECT_TRUE(reg.equal(c2 * c3.inverse(), (c2 * c3).pow(4)));
  EXPECT_TRUE(reg.table().verify(p));
}

TEST(ToddCoxeter, CosetLimitIsReported) {
  CosetTable t = todd_coxeter(Presentation({"x", "y"}), {}, {.max_cosets = 50});
  EXPECT_FALSE(t.complete);
}

TEST(ToddCoxeter, SubgroupIndex) {
  Presentation s3 = Presentation::from_text({"a", "b"}, {"a^2", "b^3", "(a*b)^2"});
  EXPECT_EQ(todd_coxeter(s3, {s3.parse("a")}).cosets, 3u);
  EXPECT_EQ(todd_coxeter(s3, {s3.parse("b")}).cosets, 2u);
}

TEST(Homs, SmallCounts) {
  EXPECT_EQ(count_homs(Presentation::from_text({"x"}, {"x^8"}), FiniteGroup::cyclic(2)), 2u);
  EXPECT_EQ(count_homs(Presentation({"a", "b"}), FiniteGroup::symmetric(3)), 36u);
  EXPECT_EQ(FiniteGroup::symmetric(4).order(), 24u);
  EXPECT_EQ(FiniteGroup::dihedral(4).order(), 8u);
  EXPECT_EQ(FiniteGroup::quaternion().order(), 8u);
  EXPECT_THROW(count_homs(Presentation({"a"}), FiniteGroup::symmetric(6)), GroupError);
}

TEST(Homs, QuaternionTableIsAGroupNotAbelian) {
  FiniteGroup q = FiniteGroup::quaternion();
  bool abelian = true;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      if (q.mul[a][b] != q.mul[b][a]) abelian = false;
      for (std::size_t c = 0; c < 8; ++c)
        ASSERT_EQ(q.mul[static_cast<std::size_t>(q.mul[a][b])][c], q.mul[a][static_cast<std::size_t>(q.mul[b][c])]);
    }
  EXPECT_FALSE(abelian);
  // Q8 has a unique involution, so Hom(Z/2, Q8) = 2.
  EXPECT_EQ(count_homs(Presentation::from_text({"x"}, {"x^2"}), q), 2u);
}

TEST(GroupProperties, ArtinActionIsAutomorphism) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 4;
    BraidWord b = random_braid(rng, n, 8);
    Word u = random_word(rng, n, 8), v = random_word(rng, n, 8);
    ASSERT_EQ(artin_act(b, u * v, n), artin_act(b, u, n) * artin_act(b, v, n));
    ASSERT_EQ(artin_act(b.inverse(), artin_act(b, u, n), n), u);
    Word product;
    for (int i = 0; i < n; ++i) product *= Word::generator(i);
    ASSERT_EQ(artin_act(b, product, n), product);
  }
}

TEST(GroupProperties, SmithRoundTrip) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    IntMatrix m = random_matrix(rng, r, c, 6);
    SmithForm s = smith_normal_form(m);
    IntMatrix d = multiply(multiply(s.left, m), s.right);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) ASSERT_EQ(d[i][j], i == j ? s.diagonal[i] : Integer(0));
    ASSERT_EQ(abs(determinant(s.left)), 1);
    ASSERT_EQ(abs(determinant(s.right)), 1);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      if (s.diagonal[i + 1] == 0) continue;
      ASSERT_NE(s.diagonal[i], 0);
      ASSERT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
    }
    // Invariance under row and column shuffles.
    IntMatrix shuffled = m;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<std::size_t> perm(c);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& row : shuffled) {
      std::vector<Integer> copy = row;
      for (std::size_t j = 0; j < c; ++j) row[j] = copy[perm[j]];
    }
    ASSERT_EQ(smith_normal_form(shuffled).diagonal, s.diagonal);
    // The sparse path agrees on the invariants.
    std::vector<SparseRow> rows;
    for (const auto& row : m) {
      SparseRow sr;
      for (std::size_t j = 0; j < c; ++j)
        if (row[j] != 0) sr[static_cast<int>(j)] = row[j];
      rows.push_back(sr);
    }
    ASSERT_EQ(sparse_abelian_invariants(rows, static_cast<int>(c)), invariants_from_diagonal(s.diagonal, c));
  }
}

TEST(GroupProperties, NielsenSchreierRank) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> rank(1, 4), mod(2, 6);
  int checked = 0;
  while (checked < 120) {
    const int n = rank(rng);
    std::vector<long> moduli{mod(rng)};
    if (checked % 3 == 0) moduli.push_back(2);
    std::vector<std::vector<long>> images;
    std::uniform_int_distribution<long> r0(0, moduli[0] - 1);
    for (int g = 0; g < n; ++g) {
      std::vector<long> img{r0(rng)};
      if (moduli.size() > 1) img.push_back(rng() % 2);
      images.push_back(img);
    }
    std::vector<std::string> names;
    for (int g = 0; g < n; ++g) names.push_back("g" + std::to_string(g));
    Presentation free(names);
    Presentation k;
    try {
      k = rs_kernel(free, {moduli, images}, {.simplify = false});
    } catch (const GroupError&) {
      continue;  // images not surjective
    }
    long m = 1;
    for (long x : moduli) m *= x;
    ASSERT_EQ(static_cast<long>(k.ngens()), 1 + m * (n - 1));
    ASSERT_TRUE(k.relators.empty());
    ++checked;
  }
}

TEST(GroupProperties, TietzePreservesAbelianization) {
  for (const auto& name : corpus::names()) {
    Presentation p = corpus::by_name(name);
    EXPECT_EQ(abelianization(tietze_simplify(p)), abelianization(p)) << name;
  }
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<Word> rels;
    for (int k = 0; k < 3; ++k) rels.push_back(random_word(rng, 3, 7));
    Presentation p({"a", "b", "c"}, rels);
    ASSERT_EQ(abelianization(tietze_simplify(p)), abelianization(p));
  }
}

TEST(GroupProperties, BraidQuotientOrdersMatchHomBounds) {
  // <x, y | xyx = yxy, x^k> is finite of order 6, 24, 96, 600 for k = 2..5.
  const std::size_t orders[] = {6, 24, 96, 600};
  for (int k = 2; k <= 5; ++k) {
    Presentation p = Presentation::from_text({"x", "y"}, {"x*y*x = y*x*y", "x^" + std::to_string(k)});
    RegularRepresentation reg(p);
    EXPECT_EQ(reg.order(), orders[k - 2]);
    // Homomorphisms into Z/n factor through the abelianization Z/k.
    for (int n = 2; n <= 6; ++n)
      EXPECT_EQ(count_homs(p, FiniteGroup::cyclic(n)), static_cast<std::uint64_t>(std::gcd(k, n)));
    // x has order exactly k.
    EXPECT_EQ(reg.element_order(p.parse("x")), k);
  }
}
