#include <algorithm>
#include <map>
#include <numeric>

#include "octic/subgroups.hpp"

namespace octic {

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // first a, then b
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
  return r;
}

FiniteGroup from_table(std::string name, std::vector<std::vector<int>> mul) {
  FiniteGroup g;
  g.name = std::move(name);
  g.mul = std::move(mul);
  const std::size_t n = g.mul.size();
  g.inv.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.mul[a][b] == 0) g.inv[a] = static_cast<int>(b);
  return g;
}

}  // namespace

FiniteGroup FiniteGroup::from_permutations(std::string name, const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) throw GroupError("permutation group needs generators");
  const std::size_t degree = generators[0].size();
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : generators) {
      Perm p = compose(elems[i], g);
      if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
    }
  std::vector<std::vector<int>> mul(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) mul[a][b] = index.at(compose(elems[a], elems[b]));
  return from_table(std::move(name), std::move(mul));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw GroupError("cyclic group order must be positive");
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return from_table("Z" + std::to_string(n), std::move(mul));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 2) return cyclic(1);
  Perm swap01(static_cast<std::size_t>(n)), cycle(static_cast<std::size_t>(n));
  std::iota(swap01.begin(), swap01.end(), 0);
  std::swap(swap01[0], swap01[1]);
  for (int i = 0; i < n; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
  return from_permutations("S" + std::to_string(n), {swap01, cycle});
}

FiniteGroup FiniteGroup::dihedral(int n) {
  Perm rot(static_cast<std::size_t>(n)), refl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rot[static_cast<std::size_t>(i)] = (i + 1) % n;
    refl[static_cast<std::size_t>(i)] = (n - i) % n;
  }
  return from_permutations("D" + std::to_string(n), {rot, refl});
}

FiniteGroup FiniteGroup::quaternion() {
  // Elements s*u with s in {+1,-1}, u in {1,i,j,k}; index = 4*(s<0) + u.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> mul(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a % 4, ub = b % 4;
      int sign = (a < 4 ? 1 : -1) * (b < 4 ? 1 : -1) * unit_sign[ua][ub];
      mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = unit_mul[ua][ub] + (sign < 0 ? 4 : 0);
    }
  return from_table("Q8", std::move(mul));
}

FiniteGroup FiniteGroup::by_name(const std::string& name) {
  if (name == "S3") return symmetric(3);
  if (name == "S4") return symmetric(4);
  if (name == "D4") return dihedral(4);
  if (name == "Q8") return quaternion();
  if (name.size() > 1 && name[0] == 'Z') {
    std::string digits = name.substr(name[1] == '/' ? 2 : 1);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) return cyclic(std::stoi(digits));
  }
  throw GroupError("unknown target group '" + name + "' (expected S3, S4, D4, Q8 or Z<n>)");
}

std::uint64_t count_homs(const Presentation& p, const FiniteGroup& target, const HomCountOptions& opts) {
  if (target.order() > opts.max_target_order)
    throw GroupError("target order " + std::to_string(target.order()) + " exceeds cap " +
                     std::to_string(opts.max_target_order));
  const std::size_t n = p.ngens();
  std::vector<Word> rels;
  for (const auto& r : p.relators) {
    Word c = cyclic_reduce(r);
    if (!c.empty()) rels.push_back(std::move(c));
  }
  std::vector<std::vector<char>> uses(rels.size(), std::vector<char>(n, 0));
  std::vector<long> occurrences(n, 0);
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (Letter a : rels[r]) {
      uses[r][static_cast<std::size_t>(generator_of(a))] = 1;
      ++occurrences[static_cast<std::size_t>(generator_of(a))];
    }
  // Greedy order: each next generator completes as many relators as possible.
  std::vector<std::size_t> order;
  std::vector<char> placed(n, 0);
  std::uint64_t free_factor = 1;
  for (std::size_t g = 0; g < n; ++g)
    if (occurrences[g] == 0) {
      placed[g] = 1;
      free_factor *= target.order();
    }
  auto missing = [&](std::size_t r) {
    int m = 0;
    for (std::size_t g = 0; g < n; ++g) m += uses[r][g] && !placed[g];
    return m;
  };
  for (;;) {
    std::size_t best = n;
    long best_score = -1;
    for (std::size_t g = 0; g < n; ++g) {
      if (placed[g]) continue;
      long completes = 0;
      for (std::size_t r = 0; r < rels.size(); ++r)
        if (uses[r][g] && missing(r) == 1) ++completes;
      const long score = completes * 1000000 + occurrences[g];
      if (score > best_score) {
        best_score = score;
        best = g;
      }
    }
    if (best == n) break;
    placed[best] = 1;
    order.push_back(best);
  }
  std::vector<std::size_t> position(n, 0);
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
  std::vector<std::vector<std::size_t>> checks(order.size());
  for (std::size_t r = 0; r < rels.size(); ++r) {
    std::size_t last = 0;
    for (std::size_t g = 0; g < n; ++g)
      if (uses[r][g]) last = std::max(last, position[g]);
    checks[last].push_back(r);
  }

  std::vector<int> image(n, 0);
  auto evaluate = [&](const Word& w) {
    int x = 0;
    for (Letter a : w) {
      const int e = image[static_cast<std::size_t>(generator_of(a))];
      x = target.mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(a > 0 ? e : target.inv[static_cast<std::size_t>(e)])];
    }
    return x;
  };
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      ++count;
      return;
    }
    for (std::size_t e = 0; e < target.order(); ++e) {
      image[order[k]] = static_cast<int>(e);
      bool ok = true;
      for (std::size_t r : checks[k])
        if (evaluate(rels[r]) != 0) {
          ok = false;
          break;
        }
      if (ok) self(self, k + 1);
    }
  };
  dfs(dfs, 0);
  return count * free_factor;
}

}  // namespace octic
