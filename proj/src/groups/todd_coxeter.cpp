#include <algorithm>
#include <limits>

#include "octic/subgroups.hpp"

namespace octic {

namespace {

constexpr std::uint32_t kUndef = std::numeric_limits<std::uint32_t>::max();

// Felsch-style enumeration with deduction processing and coincidence handling. Columns
// 2g and 2g+1 hold the action of generator g and of its inverse.
class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup, std::size_t cap)
      : ngens_(p.ngens()), cols_(2 * p.ngens()), cap_(cap), by_first_(cols_) {
    for (const auto& r : p.relators) {
      Word c = cyclic_reduce(r);
      if (c.empty()) continue;
      for (const Word& v : {c, c.inverse()}) {
        const std::size_t n = v.length();
        for (std::size_t s = 0; s < n; ++s) {
          std::vector<std::size_t> cyc(n);
          for (std::size_t k = 0; k < n; ++k) cyc[k] = column(v[(s + k) % n]);
          by_first_[cyc[0]].push_back(std::move(cyc));
        }
      }
    }
    for (auto& list : by_first_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    for (const auto& w : subgroup) {
      std::vector<std::size_t> cw;
      for (Letter a : w) cw.push_back(column(a));
      if (!cw.empty()) subgroup_.push_back(std::move(cw));
    }
    table_.assign(cols_, {});
    new_coset();
  }

  bool run() {
    for (const auto& w : subgroup_) {
      if (!scan_and_fill(0, w)) return false;
      if (!process_deductions()) return false;
    }
    std::size_t next = 0, seen_coincidences = 0;
    while (true) {
      // First live coset with an undefined entry, in coset order.
      if (coincidences_ != seen_coincidences) {
        seen_coincidences = coincidences_;
        next = 0;
      }
      while (next < forward_.size() && (!live(next) || full(next))) ++next;
      if (next >= forward_.size()) break;
      std::size_t col = 0;
      while (table_[col][next] != kUndef) ++col;
      if (!define(static_cast<std::uint32_t>(next), col)) return false;
      if (!process_deductions()) return false;
    }
    return true;
  }

  CosetTable result(bool ok) const {
    CosetTable t;
    t.complete = ok;
    if (!ok) {
      t.status = "coset limit " + std::to_string(cap_) + " exceeded";
      return t;
    }
    std::vector<std::uint32_t> number(forward_.size(), kUndef);
    std::uint32_t k = 0;
    for (std::size_t c = 0; c < forward_.size(); ++c)
      if (live(c)) number[c] = k++;
    t.cosets = k;
    t.action.assign(ngens_, std::vector<std::uint32_t>(k));
    t.inverse_action.assign(ngens_, std::vector<std::uint32_t>(k));
    for (std::size_t c = 0; c < forward_.size(); ++c) {
      if (!live(c)) continue;
      for (std::size_t g = 0; g < ngens_; ++g) {
        t.action[g][number[c]] = number[table_[2 * g][c]];
        t.inverse_action[g][number[c]] = number[table_[2 * g + 1][c]];
      }
    }
    t.status = "complete";
    return t;
  }

 private:
  static std::size_t column(Letter a) { return 2 * static_cast<std::size_t>(generator_of(a)) + (a > 0 ? 0 : 1); }
  static std::size_t inv(std::size_t col) { return col ^ 1U; }
  bool live(std::size_t c) const { return parent_[c] == c; }
  bool full(std::size_t c) const {
    for (std::size_t col = 0; col < cols_; ++col)
      if (table_[col][c] == kUndef) return false;
    return true;
  }

  bool new_coset() {
    if (live_count_ >= cap_) return false;
    const std::uint32_t c = static_cast<std::uint32_t>(forward_.size());
    forward_.push_back(c);
    parent_.push_back(c);
    for (auto& col : table_) col.push_back(kUndef);
    ++live_count_;
    return true;
  }

  bool define(std::uint32_t a, std::size_t col) {
    if (!new_coset()) return false;
    const std::uint32_t b = static_cast<std::uint32_t>(forward_.size() - 1);
    table_[col][a] = b;
    table_[inv(col)][b] = a;
    deductions_.push_back({a, col});
    return true;
  }

  std::uint32_t rep(std::uint32_t k) {
    std::uint32_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      std::uint32_t next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(std::uint32_t k, std::uint32_t l, std::vector<std::uint32_t>& queue) {
    std::uint32_t a = rep(k), b = rep(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_count_;
    queue.push_back(b);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    ++coincidences_;
    std::vector<std::uint32_t> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::uint32_t g = queue[i];
      for (std::size_t col = 0; col < cols_; ++col) {
        const std::uint32_t d = table_[col][g];
        if (d == kUndef) continue;
        if (table_[inv(col)][d] == g) table_[inv(col)][d] = kUndef;
        const std::uint32_t mu = rep(g), nu = rep(d);
        if (table_[col][mu] != kUndef) {
          merge(nu, table_[col][mu], queue);
        } else if (table_[inv(col)][nu] != kUndef) {
          merge(mu, table_[inv(col)][nu], queue);
        } else {
          table_[col][mu] = nu;
          table_[inv(col)][nu] = mu;
          deductions_.push_back({mu, col});
        }
      }
    }
  }

  // Scan w at coset a; fills a single gap as a deduction, reports coincidences.
  void scan(std::uint32_t a, const std::vector<std::size_t>& w) {
    std::uint32_t f = a, b = a;
    std::size_t i = 0, j = w.size();
    while (i < j && table_[w[i]][f] != kUndef) f = table_[w[i++]][f];
    if (i == j) {
      if (f != a) coincidence(f, a);
      return;
    }
    while (j > i && table_[inv(w[j - 1])][b] != kUndef) b = table_[inv(w[--j])][b];
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      table_[w[i]][f] = b;
      table_[inv(w[i])][b] = f;
      deductions_.push_back({f, w[i]});
    }
  }

  bool scan_and_fill(std::uint32_t a, const std::vector<std::size_t>& w) {
    for (;;) {
      std::uint32_t f = a, b = a;
      std::size_t i = 0, j = w.size();
      while (i < j && table_[w[i]][f] != kUndef) f = table_[w[i++]][f];
      if (i == j) {
        if (f != a) coincidence(f, a);
        return true;
      }
      while (j > i && table_[inv(w[j - 1])][b] != kUndef) b = table_[inv(w[--j])][b];
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        table_[w[i]][f] = b;
        table_[inv(w[i])][b] = f;
        deductions_.push_back({f, w[i]});
        return true;
      }
      if (!define(f, w[i])) return false;
    }
  }

  bool process_deductions() {
    while (!deductions_.empty()) {
      auto [a, col] = deductions_.back();
      deductions_.pop_back();
      if (!live(a)) continue;
      for (const auto& w : subgroup_) {
        scan(0, w);
      }
      if (!live(a)) continue;
      for (const auto& w : by_first_[col]) {
        scan(a, w);
        if (!live(a)) break;
      }
      if (!live(a)) continue;
      const std::uint32_t b = table_[col][a];
      if (b == kUndef || !live(b)) continue;
      for (const auto& w : by_first_[inv(col)]) {
        scan(b, w);
        if (!live(b)) break;
      }
    }
    return true;
  }

  struct Deduction {
    std::uint32_t coset;
    std::size_t col;
  };

  std::size_t ngens_, cols_, cap_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> forward_, parent_;
  std::size_t live_count_ = 0;
  std::size_t coincidences_ = 0;
  std::vector<std::vector<std::vector<std::size_t>>> by_first_;
  std::vector<std::vector<std::size_t>> subgroup_;
  std::vector<Deduction> deductions_;
};

}  // namespace

std::uint32_t CosetTable::apply(const Word& w, std::uint32_t start) const {
  std::uint32_t c = start;
  for (Letter a : w) {
    const auto g = static_cast<std::size_t>(generator_of(a));
    c = a > 0 ? action[g][c] : inverse_action[g][c];
  }
  return c;
}

bool CosetTable::verify(const Presentation& p) const {
  if (!complete) return false;
  for (std::size_t g = 0; g < action.size(); ++g) {
    std::vector<char> hit(cosets, 0);
    for (std::size_t c = 0; c < cosets; ++c) {
      if (hit[action[g][c]]) return false;
      hit[action[g][c]] = 1;
      if (inverse_action[g][action[g][c]] != c) return false;
    }
  }
  for (const auto& r : p.relators)
    for (std::uint32_t c = 0; c < cosets; ++c)
      if (apply(r, c) != c) return false;
  for (const auto& h : subgroup)
    if (apply(h, 0) != 0) return false;
  return true;
}

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup, const ToddCoxeterOptions& opts) {
  if (opts.max_cosets < 1) throw GroupError("coset limit must be positive");
  for (const auto& w : subgroup)
    if (w.max_generator() >= static_cast<int>(p.ngens())) throw GroupError("subgroup generator outside the presentation");
  Enumerator e(p, subgroup, opts.max_cosets);
  const bool ok = e.run();
  CosetTable t = e.result(ok);
  t.subgroup = subgroup;
  return t;
}

RegularRepresentation::RegularRepresentation(const Presentation& p, const ToddCoxeterOptions& opts)
    : table_(todd_coxeter(p, {}, opts)) {
  if (!table_.complete) throw GroupError("coset enumeration did not close: " + table_.status);
}

bool RegularRepresentation::equal(const Word& a, const Word& b) const { return table_.apply(a) == table_.apply(b); }

long RegularRepresentation::element_order(const Word& w) const {
  std::uint32_t c = table_.apply(w);
  long k = 1;
  while (c != 0) {
    c = table_.apply(w, c);
    ++k;
  }
  return k;
}

}  // namespace octic
