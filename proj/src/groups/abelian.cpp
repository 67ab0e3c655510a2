#include "octic/abelian.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace octic {

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Dense elimination state; row ops are mirrored on u, column ops on v.
struct Smith {
  IntMatrix a, u, v;
  std::size_t rows, cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
  }
  // row_i -= q * row_j
  void row_sub(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t k = 0; k < cols; ++k) a[i][k] -= q * a[j][k];
    for (std::size_t k = 0; k < rows; ++k) u[i][k] -= q * u[j][k];
  }
  // col_i -= q * col_j
  void col_sub(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t k = 0; k < rows; ++k) a[k][i] -= q * a[k][j];
    for (std::size_t k = 0; k < cols; ++k) v[k][i] -= q * v[k][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }

  bool move_min_pivot(std::size_t t) {
    std::size_t bi = rows, bj = cols;
    Integer best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        Integer m = abs(a[i][j]);
        if (bi == rows || m < best) {
          best = m;
          bi = i;
          bj = j;
          if (best == 1) goto found;
        }
      }
    if (bi == rows) return false;
  found:
    if (bi != t) swap_rows(bi, t);
    if (bj != t) swap_cols(bj, t);
    return true;
  }

  void run(std::size_t limit) {
    for (std::size_t t = 0; t < limit; ++t) {
      if (!move_min_pivot(t)) return;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] == 0) continue;
          row_sub(i, t, floor_div(a[i][t], a[t][t]));
          if (a[i][t] != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] == 0) continue;
          col_sub(j, t, floor_div(a[t][j], a[t][t]));
          if (a[t][j] != 0) dirty = true;
        }
        if (dirty) {
          move_min_pivot(t);
          continue;
        }
        // Divisibility: fold an offending row into the pivot row and repeat.
        bool folded = false;
        for (std::size_t i = t + 1; i < rows && !folded; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (a[i][j] % a[t][t] != 0) {
              row_sub(t, i, -1);
              folded = true;
              break;
            }
        if (!folded) break;
      }
      if (a[t][t] < 0) negate_row(t);
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  Smith s;
  s.rows = m.size();
  s.cols = s.rows ? m[0].size() : 0;
  for (const auto& r : m)
    if (r.size() != s.cols) throw GroupError("ragged integer matrix");
  s.a = m;
  s.u = identity(s.rows);
  s.v = identity(s.cols);
  const std::size_t limit = std::min(s.rows, s.cols);
  s.run(limit);
  SmithForm out;
  for (std::size_t i = 0; i < limit; ++i) out.diagonal.push_back(s.a[i][i]);
  out.left = std::move(s.u);
  out.right = std::move(s.v);
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  if (a[0].size() != k) throw GroupError("matrix shape mismatch");
  IntMatrix c(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Integer determinant(const IntMatrix& m0) {
  IntMatrix m = m0;
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Integer AbelianInvariants::order() const {
  if (free_rank > 0) return 0;
  Integer n = 1;
  for (const auto& d : torsion) n *= d;
  return n;
}

std::string AbelianInvariants::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    const std::string base = "Z/" + torsion[i].get_str();
    parts.push_back(j - i == 1 ? base : "(" + base + ")^" + std::to_string(j - i));
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

AbelianInvariants invariants_from_diagonal(const std::vector<Integer>& diagonal, std::size_t ncols) {
  AbelianInvariants inv;
  std::size_t nonzero = 0;
  for (const auto& d : diagonal) {
    if (d == 0) continue;
    ++nonzero;
    if (abs(d) != 1) inv.torsion.push_back(abs(d));
  }
  inv.free_rank = static_cast<int>(ncols - nonzero);
  std::sort(inv.torsion.begin(), inv.torsion.end());
  return inv;
}

AbelianInvariants parse_abelian_invariants(const std::string& text) {
  AbelianInvariants inv;
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s == "0" || s == "1" || s.empty()) return inv;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '+')) {
    int count = 1;
    std::string base = part;
    if (auto caret = part.rfind('^'); caret != std::string::npos && part.find(')') == caret - 1) {
      count = std::stoi(part.substr(caret + 1));
      base = part.substr(1, caret - 2);
    } else if (part.rfind("Z^", 0) == 0) {
      inv.free_rank += std::stoi(part.substr(2));
      continue;
    }
    if (base == "Z") {
      inv.free_rank += count;
    } else if (base.rfind("Z/", 0) == 0) {
      for (int k = 0; k < count; ++k) inv.torsion.emplace_back(base.substr(2));
    } else {
      throw GroupError("cannot parse abelian group '" + text + "'");
    }
  }
  // Recompute the canonical invariant factors from the listed cyclic factors.
  std::vector<Integer> diag = inv.torsion;
  IntMatrix m(diag.size(), std::vector<Integer>(diag.size(), 0));
  for (std::size_t i = 0; i < diag.size(); ++i) m[i][i] = diag[i];
  AbelianInvariants t = invariants_from_diagonal(smith_normal_form(m).diagonal, diag.size());
  inv.torsion = t.torsion;
  return inv;
}

AbelianInvariants sparse_abelian_invariants(std::vector<SparseRow> rows, int ncols) {
  // Column occupancy for Markowitz-style unit pivoting.
  std::vector<std::set<std::size_t>> col_rows(static_cast<std::size_t>(ncols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto it = rows[r].begin(); it != rows[r].end();) {
      if (it->second == 0) {
        it = rows[r].erase(it);
      } else {
        col_rows[static_cast<std::size_t>(it->first)].insert(r);
        ++it;
      }
    }
  }
  std::vector<char> row_alive(rows.size(), 1), col_alive(static_cast<std::size_t>(ncols), 1);
  int eliminated = 0;
  for (;;) {
    // Best unit pivot: minimize (row size - 1) * (column size - 1).
    std::size_t best_r = rows.size();
    int best_c = -1;
    std::size_t best_cost = ~std::size_t{0};
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!row_alive[r]) continue;
      for (const auto& [c, v] : rows[r]) {
        if (abs(v) != 1) continue;
        std::size_t cost = (rows[r].size() - 1) * (col_rows[static_cast<std::size_t>(c)].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_r = r;
          best_c = c;
          if (cost == 0) break;
        }
      }
      if (best_cost == 0) break;
    }
    if (best_c < 0) break;
    const SparseRow pivot = rows[best_r];
    const Integer pv = pivot.at(best_c);
    std::vector<std::size_t> targets(col_rows[static_cast<std::size_t>(best_c)].begin(),
                                     col_rows[static_cast<std::size_t>(best_c)].end());
    for (std::size_t r : targets) {
      if (r == best_r) continue;
      const Integer factor = rows[r].at(best_c) * pv;  // pv = +-1, so this is entry / pv
      for (const auto& [c, v] : pivot) {
        Integer& slot = rows[r][c];
        const bool was_zero = slot == 0;
        slot -= factor * v;
        if (slot == 0) {
          rows[r].erase(c);
          col_rows[static_cast<std::size_t>(c)].erase(r);
        } else if (was_zero) {
          col_rows[static_cast<std::size_t>(c)].insert(r);
        }
      }
    }
    for (const auto& [c, v] : pivot) col_rows[static_cast<std::size_t>(c)].erase(best_r);
    row_alive[best_r] = 0;
    col_alive[static_cast<std::size_t>(best_c)] = 0;
    rows[best_r].clear();
    ++eliminated;
  }
  // Dense Smith form on what is left.
  std::vector<int> col_map(static_cast<std::size_t>(ncols), -1);
  int live_cols = 0;
  for (int c = 0; c < ncols; ++c)
    if (col_alive[static_cast<std::size_t>(c)]) col_map[static_cast<std::size_t>(c)] = live_cols++;
  IntMatrix dense;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!row_alive[r] || rows[r].empty()) continue;
    std::vector<Integer> row(static_cast<std::size_t>(live_cols), 0);
    for (const auto& [c, v] : rows[r]) row[static_cast<std::size_t>(col_map[static_cast<std::size_t>(c)])] = v;
    dense.push_back(std::move(row));
  }
  if (dense.empty()) {
    AbelianInvariants inv;
    inv.free_rank = live_cols;
    return inv;
  }
  return invariants_from_diagonal(smith_normal_form(dense).diagonal, static_cast<std::size_t>(live_cols));
}

namespace {

std::vector<SparseRow> relation_rows(const Presentation& p) {
  std::vector<SparseRow> rows;
  for (const auto& r : p.relators) {
    SparseRow row;
    for (Letter a : r) {
      Integer& slot = row[generator_of(a)];
      slot += a > 0 ? 1 : -1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

AbelianInvariants abelianization(const Presentation& p) {
  return sparse_abelian_invariants(relation_rows(p), static_cast<int>(p.ngens()));
}

long AbelianImages::order() const {
  long n = 1;
  for (long m : moduli) n *= m;
  return n;
}

AbelianImages abelianization_map(const Presentation& p) {
  const std::size_t n = p.ngens();
  IntMatrix m;
  for (const auto& r : p.relators) {
    auto sums = r.exponent_sums(n);
    std::vector<Integer> row;
    for (long s : sums) row.emplace_back(s);
    m.push_back(std::move(row));
  }
  // Pad so every generator has a diagonal slot.
  while (m.size() < n) m.emplace_back(n, Integer(0));
  SmithForm s = smith_normal_form(m);
  AbelianImages out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = s.diagonal[i];
    if (d == 0) throw GroupError("abelianization is infinite");
    if (d == 1) continue;
    if (!d.fits_slong_p()) throw GroupError("abelian quotient too large");
    out.moduli.push_back(d.get_si());
    kept.push_back(i);
  }
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<long> img;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      Integer r = s.right[g][kept[k]] % Integer(out.moduli[k]);
      if (r < 0) r += out.moduli[k];
      img.push_back(r.get_si());
    }
    out.images.push_back(std::move(img));
  }
  return out;
}

}  // namespace octic
