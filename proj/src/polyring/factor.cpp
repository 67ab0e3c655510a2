#include "octic/factor.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "octic/multipoly.hpp"

namespace octic {

namespace {

// ---------- arithmetic in F_p[x], p an odd prime below 2^31 ----------

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly mp_sub(const Fp& F, const ModPoly& a, const ModPoly& b) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

ModPoly mp_mul(const Fp& F, const ModPoly& a, const ModPoly& b) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
  }
  trim(r);
  return r;
}

void mp_divrem(const Fp& F, const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
  r = a;
  trim(r);
  const int db = deg(b);
  q.assign(deg(r) >= db ? static_cast<std::size_t>(deg(r) - db + 1) : 0, 0);
  const u64 inv = F.inv(b.back());
  for (int k = deg(r); k >= db; --k) {
    const u64 c = F.mul(r[static_cast<std::size_t>(k)], inv);
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int i = 0; i <= db; ++i)
      r[static_cast<std::size_t>(k - db + i)] = F.sub(r[static_cast<std::size_t>(k - db + i)], F.mul(c, b[static_cast<std::size_t>(i)]));
  }
  if (static_cast<int>(r.size()) > db) r.resize(static_cast<std::size_t>(std::max(db, 0)));
  trim(r);
  trim(q);
}

ModPoly mp_rem(const Fp& F, const ModPoly& a, const ModPoly& b) {
  ModPoly q, r;
  mp_divrem(F, a, b, q, r);
  return r;
}

ModPoly mp_quo(const Fp& F, const ModPoly& a, const ModPoly& b) {
  ModPoly q, r;
  mp_divrem(F, a, b, q, r);
  return q;
}

ModPoly mp_monic(const Fp& F, ModPoly a) {
  if (a.empty()) return a;
  const u64 inv = F.inv(a.back());
  for (auto& x : a) x = F.mul(x, inv);
  return a;
}

ModPoly mp_gcd(const Fp& F, ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mp_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(F, a);
}

// s*a + t*b = gcd (monic)
ModPoly mp_xgcd(const Fp& F, const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    ModPoly q, r;
    mp_divrem(F, r0, r1, q, r);
    ModPoly s2 = mp_sub(F, s0, mp_mul(F, q, s1));
    ModPoly t2 = mp_sub(F, t0, mp_mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const u64 inv = F.inv(r0.back());
  for (auto& x : s0) x = F.mul(x, inv);
  for (auto& x : t0) x = F.mul(x, inv);
  s = s0;
  t = t0;
  return mp_monic(F, r0);
}

ModPoly mp_powmod(const Fp& F, ModPoly base, const Integer& e, const ModPoly& m) {
  ModPoly result{1};
  base = mp_rem(F, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mp_rem(F, mp_mul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mp_rem(F, mp_mul(F, result, base), m);
  }
  return result;
}

ModPoly mp_derivative(const Fp& F, const ModPoly& a) {
  ModPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(a[i], i % F.p));
  trim(d);
  return d;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ModPoly, int>> ddf(const Fp& F, ModPoly f) {
  std::vector<std::pair<ModPoly, int>> out;
  ModPoly h{0, 1};
  const ModPoly x{0, 1};
  int d = 0;
  while (2 * (d + 1) <= deg(f)) {
    ++d;
    h = mp_powmod(F, h, Integer(static_cast<unsigned long>(F.p)), f);
    ModPoly g = mp_gcd(F, f, mp_sub(F, h, x));
    if (deg(g) > 0) {
      out.emplace_back(g, d);
      f = mp_quo(F, f, g);
      h = mp_rem(F, h, f);
    }
  }
  if (deg(f) > 0) out.emplace_back(mp_monic(F, f), deg(f));
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus).
void edf(const Fp& F, const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  while (true) {
    ModPoly a(static_cast<std::size_t>(deg(g)));
    for (auto& c : a) c = rng() % F.p;
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = mp_powmod(F, a, e, g);
    if (b.empty()) b = {F.p - 1};
    else b[0] = F.sub(b[0], 1);
    trim(b);
    ModPoly h = mp_gcd(F, g, b);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      edf(F, h, d, rng, out);
      edf(F, mp_quo(F, g, h), d, rng, out);
      return;
    }
  }
}

// ---------- integer polynomials modulo m ----------

using ZPoly = std::vector<Integer>;

Integer zmod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const Integer& m) {
  for (auto& x : a) x = zmod(x, m);
  ztrim(a);
  return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return zreduce(std::move(r), m);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zreduce(std::move(r), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return zreduce(std::move(r), m);
}

// Division by a monic polynomial modulo m.
void zdivrem(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r) {
  r = zreduce(a, m);
  const std::size_t db = b.size() - 1;
  q.assign(r.size() > db ? r.size() - db : 0, 0);
  for (std::size_t k = r.size(); k-- > db;) {
    const Integer c = r[k];
    if (c == 0) continue;
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = zmod(r[k - db + i] - c * b[i], m);
  }
  if (r.size() > db) r.resize(db);
  ztrim(r);
  ztrim(q);
}

ZPoly to_z(const ModPoly& a) {
  ZPoly r;
  for (u64 x : a) r.emplace_back(static_cast<unsigned long>(x));
  return r;
}

ModPoly to_mod(const ZPoly& a, u64 p) {
  ModPoly r;
  const Integer P(static_cast<unsigned long>(p));
  for (const auto& x : a) r.push_back(zmod(x, P).get_ui());
  trim(r);
  return r;
}

// One quadratic Hensel step: f ≡ g h (mod m), h monic, s g + t h ≡ 1 (mod m); lifts to m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
  const Integer M = m * m;
  ZPoly e = zsub(f, zmul(g, h, M), M);
  ZPoly q, r;
  zdivrem(zmul(s, e, M), h, M, q, r);
  ZPoly g2 = zadd(zadd(g, zmul(t, e, M), M), zmul(q, g, M), M);
  ZPoly h2 = zadd(h, r, M);
  ZPoly b = zsub(zadd(zmul(s, g2, M), zmul(t, h2, M), M), ZPoly{1}, M);
  ZPoly c, d;
  zdivrem(zmul(s, b, M), h2, M, c, d);
  s = zsub(s, d, M);
  t = zsub(zsub(t, zmul(t, b, M), M), zmul(c, g2, M), M);
  g = std::move(g2);
  h = std::move(h2);
}

Integer symmetric(const Integer& a, const Integer& m) {
  Integer r = zmod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

bool is_probable_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Integer content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

ZPoly primitive(ZPoly a) {
  Integer c = content(a);
  if (c == 0) return a;
  if (a.back() < 0) c = -c;
  for (auto& x : a) x /= c;
  return a;
}

// Exact division over Z; empty optional when g does not divide f.
bool zdivide_exact(const ZPoly& f, const ZPoly& g, ZPoly& q) {
  ZPoly r = f;
  const std::size_t dg = g.size() - 1;
  if (r.size() < g.size()) return false;
  q.assign(r.size() - dg, 0);
  for (std::size_t k = r.size(); k-- > dg;) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), g.back().get_mpz_t())) return false;
    const Integer c = r[k] / g.back();
    q[k - dg] = c;
    for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] -= c * g[i];
  }
  for (std::size_t i = 0; i < dg; ++i)
    if (r[i] != 0) return false;
  return true;
}

struct ZassenhausOut {
  std::vector<ZPoly> irreducible;
  std::vector<ZPoly> unresolved;
};

// f primitive, squarefree, degree >= 1.
ZassenhausOut zassenhaus(ZPoly f, const FactorOptions& opts) {
  ZassenhausOut out;
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) {
    out.irreducible.push_back(f);
    return out;
  }
  // Choose the prime with the fewest modular factors among a few good primes.
  u64 best_p = 0;
  std::size_t best_count = 0;
  int good = 0;
  for (u64 p = 3; good < 4 && p < (1ULL << 31); p += 2) {
    if (!is_probable_prime(p)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    Fp F{p};
    ModPoly fm = to_mod(f, p);
    if (deg(mp_gcd(F, fm, mp_derivative(F, fm))) > 0) continue;
    ++good;
    std::size_t count = 0;
    for (const auto& [g, d] : ddf(F, mp_monic(F, fm))) count += static_cast<std::size_t>(deg(g) / d);
    if (best_p == 0 || count < best_count) {
      best_p = p;
      best_count = count;
    }
    if (count == 1) break;
  }
  if (best_count == 1) {
    out.irreducible.push_back(f);
    return out;
  }
  const u64 p = best_p;
  Fp F{p};
  std::mt19937_64 rng(opts.seed);
  std::vector<ModPoly> modular;
  for (const auto& [g, d] : ddf(F, mp_monic(F, to_mod(f, p)))) edf(F, g, d, rng, modular);
  std::sort(modular.begin(), modular.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  // Coefficient bound for factors: 2^n ||f||_2, times the leading coefficient for recombination.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned long>(n);
  bound *= 2 * abs(f.back());
  const Integer P(static_cast<unsigned long>(p));
  Integer M = P;
  while (M <= bound) M *= M;

  // Sequential multifactor lifting.
  std::vector<ZPoly> lifted;
  ZPoly cur = zreduce(f, M);
  for (std::size_t i = 0; i + 1 < modular.size(); ++i) {
    ModPoly gm{static_cast<u64>(zmod(cur.back(), P).get_ui())};
    for (std::size_t j = i + 1; j < modular.size(); ++j) gm = mp_mul(F, gm, modular[j]);
    ModPoly sm, tm;
    mp_xgcd(F, gm, modular[i], sm, tm);
    ZPoly g = to_z(gm), h = to_z(modular[i]), s = to_z(sm), t = to_z(tm);
    for (Integer m = P; m < M; m *= m) hensel_step(cur, g, h, s, t, m);
    lifted.push_back(h);
    cur = g;
  }
  {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), cur.back().get_mpz_t(), M.get_mpz_t());
    ZPoly last;
    for (const auto& c : cur) last.push_back(zmod(c * inv, M));
    lifted.push_back(last);
  }

  // Recombination restricted to candidate degrees within the cap.
  ZPoly F_rem = f;
  long tested = 0;
  bool budget_hit = false;
  std::size_t s = 1;
  while (s < lifted.size() && !budget_hit) {
    const int rem_deg = static_cast<int>(F_rem.size()) - 1;
    const int max_deg = std::min(opts.degree_cap, rem_deg / 2);
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      int d = 0;
      for (auto i : idx) d += static_cast<int>(lifted[i].size()) - 1;
      if (d <= max_deg) {
        if (++tested > opts.max_subsets) {
          budget_hit = true;
          break;
        }
        const Integer lc = F_rem.back();
        // Cheap constant-term test before forming the product.
        Integer c0 = lc;
        for (auto i : idx) c0 = zmod(c0 * lifted[i][0], M);
        c0 = symmetric(c0, M);
        if (c0 == 0 || mpz_divisible_p(Integer(lc * F_rem[0]).get_mpz_t(), c0.get_mpz_t())) {
          ZPoly cand{lc};
          for (auto i : idx) cand = zmul(cand, lifted[i], M);
          for (auto& c : cand) c = symmetric(c, M);
          ztrim(cand);
          cand = primitive(cand);
          ZPoly q;
          if (zdivide_exact(F_rem, cand, q)) {
            out.irreducible.push_back(cand);
            F_rem = q;
            std::vector<ZPoly> rest;
            for (std::size_t i = 0; i < lifted.size(); ++i)
              if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
            lifted = std::move(rest);
            found = true;
            break;
          }
        }
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == lifted.size() - s + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  const int rem_deg = static_cast<int>(F_rem.size()) - 1;
  if (rem_deg >= 1) {
    if (!budget_hit && (lifted.size() <= 1 || rem_deg / 2 <= opts.degree_cap)) {
      out.irreducible.push_back(primitive(F_rem));
    } else {
      out.unresolved.push_back(primitive(F_rem));
    }
  }
  return out;
}

UPoly zpoly_to_upoly(const ZPoly& a) { return from_integers(a).monic(); }

struct SquarefreeSplit {
  std::vector<UPoly> irreducible;
  std::vector<UPoly> unresolved;
};

SquarefreeSplit factor_squarefree(const UPoly& g, const FactorOptions& opts);

SquarefreeSplit factor_over_q(const UPoly& g, const FactorOptions& opts) {
  SquarefreeSplit out;
  auto z = zassenhaus(primitive_integer_part(g), opts);
  for (const auto& f : z.irreducible) out.irreducible.push_back(zpoly_to_upoly(f));
  for (const auto& f : z.unresolved) out.unresolved.push_back(zpoly_to_upoly(f));
  return out;
}

// Norm of g ∈ F[y] down to the base field: Res_t(m(t), g(y, t)).
UPoly norm_to_base(const UPoly& g) {
  Field F = g.field();
  Field B = F->base();
  const std::vector<std::string> vars{"y", "t"};
  MultiPoly G(vars, B);
  for (std::size_t k = 0; k < g.coeffs().size(); ++k)
    for (std::size_t i = 0; i < F->degree(); ++i) G.add_term({static_cast<int>(k), static_cast<int>(i)}, g.coeffs()[k].coefficient(i));
  MultiPoly Mt(vars, B);
  for (std::size_t i = 0; i < F->minpoly().size(); ++i) Mt.add_term({0, static_cast<int>(i)}, F->minpoly()[i]);
  MultiPoly N = G.degree_in(1) > 0 ? resultant(Mt, G, "t") : G.pow(static_cast<int>(F->degree()));
  return to_upoly(N, 0);
}

SquarefreeSplit factor_over_extension(const UPoly& g, const FactorOptions& opts) {
  Field F = g.field();
  const FieldElement alpha = F->generator();
  UPoly shifted = g;
  UPoly norm;
  long shift = 0;
  bool ok = false;
  for (int attempt = 0; attempt < 40; ++attempt) {
    shift = (attempt % 2 == 0) ? attempt / 2 : -(attempt + 1) / 2;
    shifted = g.shift(alpha * FieldElement(-shift));
    norm = norm_to_base(shifted);
    if (gcd(norm, norm.derivative()).degree() == 0) {
      ok = true;
      break;
    }
  }
  SquarefreeSplit out;
  if (!ok) {
    out.unresolved.push_back(g.monic());
    return out;
  }
  FactorOptions base_opts = opts;
  base_opts.degree_cap = opts.degree_cap * static_cast<int>(F->degree());
  const SquarefreeSplit base_split = factor_squarefree(norm.monic(), base_opts);
  const FieldElement back = alpha * FieldElement(shift);
  auto pull = [&](const UPoly& h) {
    UPoly d = gcd(shifted, h.lift_to(F));
    return d.shift(back).monic();
  };
  for (const auto& h : base_split.irreducible) {
    UPoly d = pull(h);
    if (d.degree() > 0) out.irreducible.push_back(d);
  }
  for (const auto& h : base_split.unresolved) {
    UPoly d = pull(h);
    if (d.degree() > 0) out.unresolved.push_back(d);
  }
  return out;
}

SquarefreeSplit factor_squarefree(const UPoly& g, const FactorOptions& opts) {
  if (g.degree() <= 1) {
    SquarefreeSplit out;
    if (g.degree() == 1) out.irreducible.push_back(g.monic());
    return out;
  }
  if (g.field()->is_rational()) return factor_over_q(g, opts);
  if (g.field()->degree() == 1) {
    // A degree-one extension is isomorphic to its base; factor there and map back.
    Field base = g.field()->base();
    std::vector<FieldElement> c;
    for (const auto& x : g.coeffs()) c.push_back(x.project_to(base));
    SquarefreeSplit inner = factor_squarefree(UPoly(base, c), opts);
    for (auto& p : inner.irreducible) p = p.lift_to(g.field());
    for (auto& p : inner.unresolved) p = p.lift_to(g.field());
    return inner;
  }
  return factor_over_extension(g, opts);
}

}  // namespace

FactorResult factor(const UPoly& f, const FactorOptions& opts) {
  if (f.is_zero()) throw FieldError("cannot factor the zero polynomial");
  FactorResult out{f.lead(), {}, {}};
  for (const auto& [sq, mult] : squarefree_decomposition(f)) {
    const SquarefreeSplit split = factor_squarefree(sq, opts);
    for (const auto& p : split.irreducible) out.irreducible.push_back({p, mult});
    for (const auto& p : split.unresolved) out.unresolved.push_back({p, mult});
  }
  auto order = [](const SquarefreeFactor& a, const SquarefreeFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    return a.factor.to_string() < b.factor.to_string();
  };
  std::sort(out.irreducible.begin(), out.irreducible.end(), order);
  std::sort(out.unresolved.begin(), out.unresolved.end(), order);
  return out;
}

std::vector<FieldElement> roots_in_field(const UPoly& f) {
  FactorOptions opts;
  opts.degree_cap = 1;
  std::vector<FieldElement> roots;
  for (const auto& [p, m] : factor(f, opts).irreducible)
    if (p.degree() == 1) roots.push_back(-p.coeff(0));
  return roots;
}

bool is_irreducible(const UPoly& f) {
  if (f.degree() < 1) return false;
  FactorOptions opts;
  opts.degree_cap = f.degree();
  const auto r = factor(f, opts);
  return r.unresolved.empty() && r.irreducible.size() == 1 && r.irreducible[0].multiplicity == 1;
}

}  // namespace octic
