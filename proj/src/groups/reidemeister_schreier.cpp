#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "octic/subgroups.hpp"

namespace octic {

namespace {

// Cosets of the kernel of P -> A are the elements of A, encoded in mixed radix.
struct AbelianCosets {
  std::size_t count = 1;
  std::vector<std::vector<std::uint32_t>> fwd, back;  // fwd[g][c] = c + image(g)

  AbelianCosets(const AbelianImages& t, std::size_t ngens) {
    if (t.images.size() != ngens) throw GroupError("one image per generator required");
    for (long m : t.moduli) {
      if (m < 1) throw GroupError("moduli must be positive");
      count *= static_cast<std::size_t>(m);
    }
    auto decode = [&](std::size_t c) {
      std::vector<long> d(t.moduli.size());
      for (std::size_t k = 0; k < t.moduli.size(); ++k) {
        d[k] = static_cast<long>(c % static_cast<std::size_t>(t.moduli[k]));
        c /= static_cast<std::size_t>(t.moduli[k]);
      }
      return d;
    };
    auto encode = [&](const std::vector<long>& d) {
      std::size_t c = 0;
      for (std::size_t k = t.moduli.size(); k-- > 0;) c = c * static_cast<std::size_t>(t.moduli[k]) + static_cast<std::size_t>(d[k]);
      return c;
    };
    fwd.assign(ngens, std::vector<std::uint32_t>(count));
    back.assign(ngens, std::vector<std::uint32_t>(count));
    for (std::size_t g = 0; g < ngens; ++g) {
      if (t.images[g].size() != t.moduli.size()) throw GroupError("image has the wrong number of components");
      for (std::size_t c = 0; c < count; ++c) {
        auto d = decode(c);
        for (std::size_t k = 0; k < d.size(); ++k) {
          long m = t.moduli[k];
          d[k] = ((d[k] + t.images[g][k]) % m + m) % m;
        }
        const auto to = static_cast<std::uint32_t>(encode(d));
        fwd[g][c] = to;
        back[g][to] = static_cast<std::uint32_t>(c);
      }
    }
    // Surjectivity: the images must generate A, i.e. every coset is reachable from 0.
    std::vector<char> seen(count, 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      std::size_t c = queue.front();
      queue.pop_front();
      for (std::size_t g = 0; g < ngens; ++g)
        for (std::uint32_t to : {fwd[g][c], back[g][c]})
          if (!seen[to]) {
            seen[to] = 1;
            ++reached;
            queue.push_back(to);
          }
    }
    if (reached != count) throw GroupError("generator images do not generate the target group");
  }
};

// Schreier generator ids for (coset, generator) pairs; -1 marks transversal edges.
struct SchreierData {
  std::vector<std::vector<int>> id;  // id[c][g]
  int count = 0;
  std::vector<std::string> names;
};

SchreierData schreier_generators(const AbelianCosets& cos, const Presentation& p) {
  const std::size_t n = p.ngens();
  SchreierData s;
  s.id.assign(cos.count, std::vector<int>(n, 0));
  std::vector<char> seen(cos.count, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < n; ++g) {
      const std::uint32_t up = cos.fwd[g][c];
      if (!seen[up]) {
        seen[up] = 1;
        s.id[c][g] = -1;
        queue.push_back(up);
      }
      const std::uint32_t down = cos.back[g][c];
      if (!seen[down]) {
        seen[down] = 1;
        s.id[down][g] = -1;
        queue.push_back(down);
      }
    }
  }
  for (std::size_t c = 0; c < cos.count; ++c)
    for (std::size_t g = 0; g < n; ++g) {
      if (s.id[c][g] == -1) continue;
      s.id[c][g] = s.count++;
      s.names.push_back(p.generators[g] + "_" + std::to_string(c));
    }
  return s;
}

template <typename Emit>
void rewrite(const Word& r, std::size_t start, const AbelianCosets& cos, const SchreierData& s, Emit&& emit) {
  std::size_t x = start;
  for (Letter a : r) {
    const auto g = static_cast<std::size_t>(generator_of(a));
    if (a > 0) {
      if (int id = s.id[x][g]; id >= 0) emit(id, 1);
      x = cos.fwd[g][x];
    } else {
      const std::size_t y = cos.back[g][x];
      if (int id = s.id[y][g]; id >= 0) emit(id, -1);
      x = y;
    }
  }
  if (x != start) throw GroupError("relator does not lie in the kernel");
}

}  // namespace

Presentation rs_kernel(const Presentation& p, const AbelianImages& target, const KernelOptions& opts) {
  AbelianCosets cos(target, p.ngens());
  SchreierData s = schreier_generators(cos, p);
  std::vector<Word> rels;
  for (const auto& r : p.relators)
    for (std::size_t c = 0; c < cos.count; ++c) {
      std::vector<Letter> letters;
      rewrite(r, c, cos, s, [&](int id, int e) { letters.push_back(letter(id, e)); });
      Word w(std::move(letters));
      if (!w.empty()) rels.push_back(std::move(w));
    }
  Presentation k(s.names, std::move(rels), {"Reidemeister-Schreier kernel of index " + std::to_string(cos.count)});
  if (opts.simplify) k = tietze_simplify(k, opts.tietze);
  return k;
}

AbelianInvariants rs_kernel_abelianization(const Presentation& p, const AbelianImages& target) {
  AbelianCosets cos(target, p.ngens());
  SchreierData s = schreier_generators(cos, p);
  std::vector<SparseRow> rows;
  for (const auto& r : p.relators)
    for (std::size_t c = 0; c < cos.count; ++c) {
      SparseRow row;
      rewrite(r, c, cos, s, [&](int id, int e) {
        Integer& slot = row[id];
        slot += e;
        if (slot == 0) row.erase(id);
      });
      if (!row.empty()) rows.push_back(std::move(row));
    }
  return sparse_abelian_invariants(std::move(rows), s.count);
}

DerivedSeriesResult derived_series_quotients(const Presentation& p, int depth, const DerivedSeriesLimits& limits) {
  if (depth < 1) throw GroupError("derived series depth must be at least 1");
  DerivedSeriesResult out;
  Presentation cur = p;
  for (int level = 1; level <= depth; ++level) {
    AbelianInvariants inv = abelianization(cur);
    out.quotients.push_back(inv);
    out.log.push_back("level " + std::to_string(level) + ": " + std::to_string(cur.ngens()) + " generators, " +
                      std::to_string(cur.relators.size()) + " relators, quotient " + inv.to_string());
    if (level == depth) break;
    if (!inv.finite()) {
      out.status = "infinite abelianization";
      return out;
    }
    if (inv.order() == 1) {
      out.status = "perfect subgroup reached";
      return out;
    }
    if (inv.order() > limits.max_index) {
      out.status = "limit: index " + inv.order().get_str() + " exceeds " + std::to_string(limits.max_index);
      return out;
    }
    AbelianImages images = abelianization_map(cur);
    const std::size_t kernel_gens = 1 + static_cast<std::size_t>(images.order()) * (cur.ngens() - 1);
    const std::size_t kernel_rels = static_cast<std::size_t>(images.order()) * cur.relators.size();
    if (kernel_gens > limits.max_generators || kernel_rels > limits.max_relators) {
      out.status = "limit: kernel of size " + std::to_string(kernel_gens) + " generators / " +
                   std::to_string(kernel_rels) + " relators";
      return out;
    }
    if (level + 1 == depth) {
      // The last quotient needs only the kernel's abelian invariants.
      AbelianInvariants last = rs_kernel_abelianization(cur, images);
      out.quotients.push_back(last);
      out.log.push_back("level " + std::to_string(level + 1) + ": kernel with " + std::to_string(kernel_gens) +
                        " Schreier generators, quotient " + last.to_string());
      break;
    }
    KernelOptions ko;
    ko.tietze = limits.tietze;
    cur = rs_kernel(cur, images, ko);
  }
  out.status = "complete";
  return out;
}

}  // namespace octic
