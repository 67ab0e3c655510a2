#include <algorithm>
#include <map>
#include <set>

#include "octic/subgroups.hpp"

namespace octic {

namespace {

struct Candidate {
  std::size_t relator = 0;
  int generator = -1;
  long delta = 0;
};

void normalize(std::vector<Word>& rels) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (const auto& r : rels) {
    Word c = canonical_relator(r);
    if (c.empty()) continue;
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.length() != b.length() ? a.length() < b.length() : a < b;
  });
  rels = std::move(out);
}

// Replace a long piece of `target` that matches more than half of a cyclic conjugate of `rel`
// (or its inverse) with the inverse of the remaining part. Returns true when target shrank.
bool shorten_with(Word& target, const Word& rel) {
  const std::size_t n = rel.length();
  if (n == 0 || target.length() < n / 2 + 1) return false;
  const auto& t = target.letters();
  for (const Word& v : {rel, rel.inverse()}) {
    const auto& l = v.letters();
    for (std::size_t s = 0; s < n; ++s) {
      // Cyclic conjugate starting at s; find the longest prefix occurring in target.
      for (std::size_t len = n; len > n / 2; --len) {
        for (std::size_t pos = 0; pos + len <= t.size(); ++pos) {
          bool match = true;
          for (std::size_t k = 0; k < len && match; ++k) match = t[pos + k] == l[(s + k) % n];
          if (!match) continue;
          // piece = u where conjugate = u w; u = w^-1 in the group.
          std::vector<Letter> rest;
          for (std::size_t k = len; k < n; ++k) rest.push_back(l[(s + k) % n]);
          Word replacement = Word(std::move(rest)).inverse();
          std::vector<Letter> out(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(pos));
          out.insert(out.end(), replacement.begin(), replacement.end());
          out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(pos + len), t.end());
          Word shorter = cyclic_reduce(Word(std::move(out)));
          if (shorter.length() < target.length()) {
            target = std::move(shorter);
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

Presentation tietze_simplify(const Presentation& p, const TietzeLimits& limits, TietzeLog* log) {
  std::vector<std::string> names = p.generators;
  std::vector<Word> rels = p.relators;
  normalize(rels);
  auto note = [&](const std::string& s) {
    if (log) log->moves.push_back(s);
  };

  for (int pass = 0; pass < limits.max_passes; ++pass) {
    // Occurrence counts per generator over all relators.
    std::vector<long> occ(names.size(), 0);
    std::size_t total = 0;
    for (const auto& r : rels) {
      total += r.length();
      for (Letter a : r) ++occ[static_cast<std::size_t>(generator_of(a))];
    }
    Candidate best;
    bool found = false;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const Word& r = rels[i];
      std::map<int, int> count;
      for (Letter a : r) ++count[generator_of(a)];
      for (const auto& [g, c] : count) {
        if (c != 1) continue;
        const long other = occ[static_cast<std::size_t>(g)] - 1;
        const long delta = other * (static_cast<long>(r.length()) - 2) - static_cast<long>(r.length());
        if (delta > limits.max_length_growth) continue;
        if (total + static_cast<std::size_t>(std::max(0L, delta)) > limits.max_total_length) continue;
        if (!found || delta < best.delta || (delta == best.delta && r.length() < rels[best.relator].length())) {
          best = {i, g, delta};
          found = true;
        }
      }
    }
    if (found) {
      // Rotate r so the generator comes first: r ~ g^e w, hence g = w^-1 (e = 1) or g = w (e = -1).
      const Word& r = rels[best.relator];
      const auto& l = r.letters();
      std::size_t at = 0;
      while (generator_of(l[at]) != best.generator) ++at;
      std::vector<Letter> w;
      for (std::size_t k = 1; k < l.size(); ++k) w.push_back(l[(at + k) % l.size()]);
      Word value = l[at] > 0 ? Word(w).inverse() : Word(w);
      std::vector<Word> next;
      bool too_long = false;
      for (std::size_t i = 0; i < rels.size(); ++i) {
        if (i == best.relator) continue;
        Word acc;
        for (Letter a : rels[i]) {
          if (generator_of(a) == best.generator) {
            acc *= a > 0 ? value : value.inverse();
          } else {
            acc *= Word{a};
          }
        }
        if (acc.length() > limits.max_relator_length) too_long = true;
        next.push_back(std::move(acc));
      }
      if (!too_long) {
        note("eliminate " + names[static_cast<std::size_t>(best.generator)] + " = " + format_word(value, names));
        // Drop the generator and renumber.
        const int g = best.generator;
        for (auto& r2 : next) {
          std::vector<Letter> ren;
          for (Letter a : r2) {
            const int h = generator_of(a);
            ren.push_back(letter(h > g ? h - 1 : h, a > 0 ? 1 : -1));
          }
          r2 = Word(std::move(ren));
        }
        names.erase(names.begin() + g);
        rels = std::move(next);
        normalize(rels);
        continue;
      }
    }
    // No elimination: try shortening relators with shorter ones.
    bool shortened = false;
    for (std::size_t i = 0; i < rels.size() && !shortened; ++i)
      for (std::size_t j = 0; j < rels.size(); ++j) {
        if (i == j || rels[j].length() > rels[i].length()) continue;
        if (shorten_with(rels[i], rels[j])) {
          note("shorten relator using a relator of length " + std::to_string(rels[j].length()));
          shortened = true;
          break;
        }
      }
    if (!shortened) break;
    normalize(rels);
  }
  Presentation out(std::move(names), std::move(rels), p.notes);
  out.notes.push_back("Tietze simplified");
  return out;
}

}  // namespace octic
