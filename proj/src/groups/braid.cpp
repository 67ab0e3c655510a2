#include "octic/braid.hpp"

#include <map>

#include "octic/field.hpp"

namespace octic {

BraidWord::BraidWord(int n, std::vector<int> l) : strands(n), letters(std::move(l)) {
  if (n < 1) throw GroupError("braid needs at least one strand");
  for (int a : letters)
    if (a == 0 || std::abs(a) > n - 1)
      throw GroupError("braid generator index " + std::to_string(a) + " out of range for " + std::to_string(n) +
                       " strands");
}

BraidWord BraidWord::inverse() const {
  std::vector<int> l;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) l.push_back(-*it);
  return BraidWord(strands, std::move(l));
}

BraidWord BraidWord::operator*(const BraidWord& o) const {
  if (o.strands != strands) throw GroupError("strand mismatch in braid product");
  std::vector<int> l = letters;
  l.insert(l.end(), o.letters.begin(), o.letters.end());
  return BraidWord(strands, std::move(l));
}

BraidWord BraidWord::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  BraidWord r(strands, {});
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

namespace {

// Image of the letter x_g^{+-1} under sigma_i^{s}, with generators 0-based and i 1-based.
Word sigma_image(int i, int s, Letter a) {
  const int g = generator_of(a);
  const int lo = i - 1, hi = i;
  Word img;
  if (s > 0) {
    if (g == lo) {
      img = Word{letter(lo), letter(hi), letter(lo, -1)};
    } else if (g == hi) {
      img = Word::generator(lo);
    } else {
      img = Word::generator(g);
    }
  } else {
    if (g == lo) {
      img = Word::generator(hi);
    } else if (g == hi) {
      img = Word{letter(hi, -1), letter(lo), letter(hi)};
    } else {
      img = Word::generator(g);
    }
  }
  return a > 0 ? img : img.inverse();
}

}  // namespace

Word artin_act(const BraidWord& b, const Word& w, int n) {
  if (b.strands != n) throw GroupError("braid has " + std::to_string(b.strands) + " strands, expected " + std::to_string(n));
  if (w.max_generator() >= n) throw GroupError("word uses a generator beyond the fiber rank");
  Word cur = w;
  for (int s : b.letters) {
    Word next;
    for (Letter a : cur) next *= sigma_image(std::abs(s), s > 0 ? 1 : -1, a);
    cur = std::move(next);
  }
  return cur;
}

Presentation zvk_presentation(int n, const std::vector<LineBraid>& lines, bool infinity,
                              const std::string& infinity_name) {
  if (n < 1) throw GroupError("fiber rank must be positive");
  std::vector<std::string> gens;
  for (int i = 1; i <= n; ++i) gens.push_back("c" + std::to_string(i));
  for (const auto& l : lines) {
    if (l.braid.strands != n) throw GroupError("strand mismatch for line " + l.name);
    gens.push_back(l.name);
  }
  if (infinity) gens.push_back(infinity_name);
  std::vector<Word> rels;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Word ell = Word::generator(n + static_cast<int>(k));
    for (int i = 0; i < n; ++i) {
      const Word c = Word::generator(i);
      rels.push_back(conjugate(c, ell) * artin_act(lines[k].braid, c, n).inverse());
    }
  }
  if (infinity) {
    Word r;
    for (int i = 0; i < static_cast<int>(gens.size()); ++i) r *= Word::generator(i);
    rels.push_back(r);
  }
  return Presentation(std::move(gens), std::move(rels), {"Zariski-van Kampen presentation"});
}

namespace {

// Laurent polynomial in t with integer coefficients.
using Laurent = std::map<int, Integer>;

void add_into(Laurent& a, const Laurent& b, int shift, const Integer& scale) {
  for (const auto& [e, c] : b) {
    Integer& slot = a[e + shift];
    slot += c * scale;
    if (slot == 0) a.erase(e + shift);
  }
}

Laurent mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [e, c] : a) add_into(out, b, e, c);
  return out;
}

struct Mat2 {
  Laurent m[2][2];
  static Mat2 identity() {
    Mat2 r;
    r.m[0][0][0] = 1;
    r.m[1][1][0] = 1;
    return r;
  }
  bool is_identity() const {
    return m[0][1].empty() && m[1][0].empty() && m[0][0].size() == 1 && m[0][0].count(0) && m[0][0].at(0) == 1 &&
           m[1][1].size() == 1 && m[1][1].count(0) && m[1][1].at(0) == 1;
  }
};

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Laurent p = mul(a.m[i][k], b.m[k][j]);
        add_into(r.m[i][j], p, 0, 1);
      }
  return r;
}

// Reduced Burau images of sigma_1, sigma_2 of B3 and their inverses.
Mat2 burau(int which, int sign) {
  Mat2 r;
  if (which == 1) {
    if (sign > 0) {  // [[-t, 1], [0, 1]]
      r.m[0][0][1] = -1;
      r.m[0][1][0] = 1;
      r.m[1][1][0] = 1;
    } else {  // [[-t^-1, t^-1], [0, 1]]
      r.m[0][0][-1] = -1;
      r.m[0][1][-1] = 1;
      r.m[1][1][0] = 1;
    }
  } else {
    if (sign > 0) {  // [[1, 0], [t, -t]]
      r.m[0][0][0] = 1;
      r.m[1][0][1] = 1;
      r.m[1][1][1] = -1;
    } else {  // [[1, 0], [1, -t^-1]]
      r.m[0][0][0] = 1;
      r.m[1][0][0] = 1;
      r.m[1][1][-1] = -1;
    }
  }
  return r;
}

int factor_of(Letter a) {
  const int g = generator_of(a);
  if (g < 0 || g > 3) throw GroupError("G0 words use c1..c4 only");
  return g / 2;
}

bool syllable_trivial(const std::vector<Letter>& syl) {
  Mat2 acc = Mat2::identity();
  for (Letter a : syl) acc = mul(acc, burau(generator_of(a) % 2 + 1, a > 0 ? 1 : -1));
  return acc.is_identity();
}

}  // namespace

bool g0_is_trivial(const Word& w) {
  std::vector<std::vector<Letter>> syl;
  for (Letter a : w) {
    if (!syl.empty() && factor_of(syl.back().back()) == factor_of(a)) {
      syl.back().push_back(a);
    } else {
      syl.push_back({a});
    }
  }
  // Remove trivial syllables, merging neighbours from the same factor, until none is trivial.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < syl.size(); ++i) {
      if (!syllable_trivial(syl[i])) continue;
      changed = true;
      if (i > 0 && i + 1 < syl.size()) {
        syl[i - 1].insert(syl[i - 1].end(), syl[i + 1].begin(), syl[i + 1].end());
        syl.erase(syl.begin() + static_cast<std::ptrdiff_t>(i), syl.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      } else {
        syl.erase(syl.begin() + static_cast<std::ptrdiff_t>(i));
      }
      break;
    }
  }
  return syl.empty();
}

bool g0_equal(const Word& a, const Word& b) { return g0_is_trivial(a * b.inverse()); }

std::vector<G0Check> g0_commutation_checks(const BraidWord& tau1, const BraidWord& tau2) {
  std::vector<G0Check> out;
  for (int i = 0; i < 4; ++i) {
    const Word c = Word::generator(i);
    Word left = artin_act(tau1 * tau2, c, 4);
    Word right = artin_act(tau2 * tau1, c, 4);
    const bool eq = g0_equal(left, right);
    out.push_back({i + 1, std::move(left), std::move(right), eq});
  }
  return out;
}

bool verify_g0_relations(const BraidWord& tau1, const BraidWord& tau2) {
  for (const auto& c : g0_commutation_checks(tau1, tau2))
    if (!c.equal) return false;
  return true;
}

bool verify_g0_relations() { return verify_g0_relations(deltoid_tau1(), deltoid_tau2()); }

BraidWord deltoid_tau1() { return BraidWord(4, {2, 1, 2, 1}); }
BraidWord deltoid_tau2() { return BraidWord(4, {2, 3, 2, 3}); }

}  // namespace octic
