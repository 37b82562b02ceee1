#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "k3/exact/unipoly.hpp"

namespace k3 {
namespace {

using u64 = std::uint64_t;
using ZPoly = std::vector<Integer>;  // low degree first, no trailing zeros
using FPoly = std::vector<u64>;      // same, coefficients reduced mod p

// ---- arithmetic mod a word-size prime ----

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pw(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }
  u64 inv(u64 a) const { return pw(a, p - 2); }

  static void trim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  FPoly sub(const FPoly& a, const FPoly& b) const {
    FPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
  }
  FPoly add(const FPoly& a, const FPoly& b) const {
    FPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
  }
  FPoly mul(const FPoly& a, const FPoly& b) const {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }
  std::pair<FPoly, FPoly> divrem(FPoly a, const FPoly& b) const {
    if (a.size() < b.size()) return {{}, a};
    FPoly q(a.size() - b.size() + 1, 0);
    u64 il = inv(b.back());
    for (std::size_t i = a.size(); i-- >= b.size();) {
      u64 f = mul(a[i], il);
      q[i - b.size() + 1] = f;
      if (f)
        for (std::size_t j = 0; j < b.size(); ++j)
          a[i - b.size() + 1 + j] = sub(a[i - b.size() + 1 + j], mul(f, b[j]));
      if (i == b.size() - 1) break;
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
  }
  FPoly rem(const FPoly& a, const FPoly& b) const { return divrem(a, b).second; }
  FPoly monic(FPoly a) const {
    if (a.empty()) return a;
    u64 il = inv(a.back());
    for (auto& x : a) x = mul(x, il);
    return a;
  }
  FPoly gcd(FPoly a, FPoly b) const {
    while (!b.empty()) {
      FPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  /// Inverse of a modulo m (assumed coprime).
  FPoly invmod(const FPoly& a, const FPoly& m) const {
    FPoly r0 = m, r1 = rem(a, m), t0, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divrem(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      FPoly t2 = sub(t0, mul(q, t1));
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    u64 il = inv(r0.back());
    for (auto& x : t0) x = mul(x, il);
    return rem(t0, m);
  }
  FPoly powmod(FPoly base, const Integer& e, const FPoly& m) const {
    FPoly r{1};
    base = rem(base, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = rem(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
    }
    return r;
  }
  FPoly derivative(const FPoly& a) const {
    if (a.size() <= 1) return {};
    FPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
    trim(r);
    return r;
  }
};

/// Cantor–Zassenhaus: irreducible monic factors of a squarefree monic f over F_p (p odd).
std::vector<FPoly> factor_mod_p(const Fp& F, const FPoly& f, std::mt19937_64& rng) {
  std::vector<FPoly> out;
  std::vector<std::pair<FPoly, int>> dd;  // (product of degree-d factors, d)
  FPoly rest = f, h{0, 1};
  const FPoly x{0, 1};
  for (int d = 1; 2 * d <= static_cast<int>(rest.size()) - 1; ++d) {
    h = F.powmod(h, Integer(static_cast<unsigned long>(F.p)), rest);
    FPoly g = F.gcd(F.sub(h, x), rest);
    if (g.size() > 1) {
      dd.emplace_back(g, d);
      rest = F.divrem(rest, g).first;
      h = F.rem(h, rest);
    }
  }
  if (rest.size() > 1) dd.emplace_back(F.monic(rest), static_cast<int>(rest.size()) - 1);

  for (auto& [g, d] : dd) {
    std::vector<FPoly> stack{g};
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (!stack.empty()) {
      FPoly a = stack.back();
      stack.pop_back();
      if (static_cast<int>(a.size()) - 1 == d) {
        out.push_back(a);
        continue;
      }
      while (true) {
        FPoly r(a.size() - 1);
        for (auto& c : r) c = rng() % F.p;
        Fp::trim(r);
        if (r.size() < 2) continue;
        FPoly b = F.sub(F.powmod(r, e, a), FPoly{1});
        FPoly g1 = F.gcd(b, a);
        if (g1.size() > 1 && g1.size() < a.size()) {
          stack.push_back(g1);
          stack.push_back(F.divrem(a, g1).first);
          break;
        }
      }
    }
  }
  return out;
}

// ---- integer polynomials ----

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ztrim(r);
  return r;
}

/// Exact division of integer polynomials; returns false if b does not divide a over Z.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly* quot) {
  if (a.size() < b.size()) return false;
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1, Integer(0));
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (r[i] != 0) {
      if (!mpz_divisible_p(r[i].get_mpz_t(), b.back().get_mpz_t())) return false;
      Integer f = r[i] / b.back();
      q[i - b.size() + 1] = f;
      for (std::size_t j = 0; j < b.size(); ++j) r[i - b.size() + 1 + j] -= f * b[j];
    }
    if (i == b.size() - 1) break;
  }
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (r[i] != 0) return false;
  ztrim(q);
  if (quot) *quot = std::move(q);
  return true;
}

void smod(Integer& a, const Integer& m) {
  a %= m;
  if (a < 0) a += m;
  if (2 * a > m) a -= m;
}

FPoly to_fp(const ZPoly& a, u64 p) {
  FPoly r(a.size());
  Integer t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    t = a[i] % Integer(static_cast<unsigned long>(p));
    if (t < 0) t += static_cast<unsigned long>(p);
    r[i] = t.get_ui();
  }
  Fp::trim(r);
  return r;
}

ZPoly from_fp(const FPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Deterministic Miller-Rabin for n < 2^32.
bool is_prime_u32(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  Fp F{n};
  for (u64 a : {2ULL, 7ULL, 61ULL}) {
    if (a % n == 0) continue;
    u64 x = F.pw(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r && composite; ++i) {
      x = F.mul(x, x);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// Factors a squarefree primitive monic integer polynomial of degree >= 2.
std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
  const std::size_t n = f.size() - 1;
  std::mt19937_64 rng(0x6b33u);

  // Pick the prime giving the fewest modular factors among a handful of candidates.
  u64 best_p = 0;
  std::vector<FPoly> best;
  int tried = 0;
  for (u64 p = 1009; tried < 5; p += 2) {
    if (!is_prime_u64(p)) continue;
    Fp F{p};
    FPoly fp = to_fp(f, p);
    if (fp.size() != f.size()) continue;
    if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
    ++tried;
    auto facs = factor_mod_p(F, fp, rng);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (best.size() <= 1) return {f};
  Fp F{best_p};
  const Integer P(static_cast<unsigned long>(best_p));

  // Mignotte bound on factor coefficients.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm = sqrt(norm2) + 1;
  Integer bound = (Integer(1) << static_cast<mp_bitcnt_t>(n)) * norm * 2;

  const std::size_t r = best.size();
  std::vector<FPoly> sigma(r);
  for (std::size_t i = 0; i < r; ++i) {
    FPoly other{1};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) other = F.rem(F.mul(other, best[j]), best[i]);
    sigma[i] = F.invmod(other, best[i]);
  }

  // Linear Hensel lifting of all factors simultaneously.
  std::vector<ZPoly> u(r);
  for (std::size_t i = 0; i < r; ++i) u[i] = from_fp(best[i]);
  Integer pk = P;
  while (pk <= bound) {
    ZPoly prod{Integer(1)};
    for (const auto& ui : u) prod = zmul(prod, ui);
    ZPoly e(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      Integer d = f[i] - (i < prod.size() ? prod[i] : Integer(0));
      e[i] = d / pk;  // exact
    }
    ztrim(e);
    FPoly ep = to_fp(e, best_p);
    for (std::size_t i = 0; i < r; ++i) {
      FPoly delta = F.rem(F.mul(sigma[i], ep), best[i]);
      for (std::size_t k = 0; k < delta.size(); ++k) u[i][k] += pk * static_cast<unsigned long>(delta[k]);
    }
    pk *= P;
  }
  for (auto& ui : u)
    for (auto& c : ui) smod(c, pk);

  // Subset recombination.
  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<std::size_t> live(r);
  for (std::size_t i = 0; i < r; ++i) live[i] = i;
  std::size_t s = 1;
  while (2 * s <= live.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly cand{Integer(1)};
      for (auto i : idx) {
        cand = zmul(cand, u[live[i]]);
        for (auto& c : cand) smod(c, pk);
      }
      ZPoly q;
      if (zdivides(rest, cand, &q)) {
        result.push_back(cand);
        rest = std::move(q);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0, j = 0; i < live.size(); ++i) {
          if (j < s && idx[j] == i) {
            ++j;
            continue;
          }
          keep.push_back(live[i]);
        }
        live = std::move(keep);
        found = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == live.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.size() > 1) result.push_back(rest);
  return result;
}

ZPoly to_zpoly(const QPoly& p) {
  QPoly pp = primitive_part(p);
  ZPoly r;
  for (const auto& c : pp.coeffs()) r.push_back(c.num());
  return r;
}

QPoly to_qpoly(const ZPoly& z) {
  std::vector<Rational> c;
  for (const auto& x : z) c.emplace_back(x);
  return QPoly(std::move(c));
}

/// Irreducible factors of a squarefree polynomial over Q (as monic rational polynomials).
std::vector<QPoly> factor_squarefree(const QPoly& p) {
  if (p.degree() <= 1) return {p.monic()};
  ZPoly f = to_zpoly(p);
  const std::size_t n = f.size() - 1;
  // Monic transform g(x) = lc^(n-1) f(x / lc).
  Integer lc = f.back();
  ZPoly g(n + 1);
  Integer lpow = 1;
  for (std::size_t i = n; i-- > 0;) {
    g[i] = f[i] * lpow;
    lpow *= lc;
  }
  g[n] = 1;
  std::vector<QPoly> out;
  for (const auto& h : factor_monic_squarefree(g)) {
    // h(lc * x) then primitive part.
    ZPoly hx(h.size());
    Integer lp = 1;
    for (std::size_t i = 0; i < h.size(); ++i) {
      hx[i] = h[i] * lp;
      lp *= lc;
    }
    out.push_back(to_qpoly(hx).monic());
  }
  return out;
}

/// Brown's small-prime gcd of primitive integer polynomials, content ignored.
ZPoly gcd_modular(const ZPoly& a, const ZPoly& b) {
  Integer gamma;
  mpz_gcd(gamma.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
  const std::size_t bound = std::min(a.size(), b.size()) - 1;
  std::size_t deg = bound + 1;
  ZPoly acc;
  Integer modulus = 1;
  static const std::vector<u64> primes = [] {
    std::vector<u64> v;
    for (u64 p = 2147483629ULL; v.size() < 1024; p -= 2)
      if (is_prime_u32(p)) v.push_back(p);
    return v;
  }();
  for (std::size_t pi = 0;; ++pi) {
    if (pi == primes.size()) throw std::runtime_error("gcd_modular: ran out of primes");
    const u64 p = primes[pi];
    if (mpz_divisible_ui_p(gamma.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    Fp F{p};
    FPoly ap = to_fp(a, p), bp = to_fp(b, p);
    if (ap.size() != a.size() || bp.size() != b.size()) continue;
    FPoly g = F.gcd(ap, bp);
    std::size_t dg = g.size() - 1;
    if (dg == 0) return {Integer(1)};
    if (dg > deg) continue;
    u64 gm = mpz_fdiv_ui(gamma.get_mpz_t(), static_cast<unsigned long>(p));
    for (auto& c : g) c = F.mul(c, gm);
    if (dg < deg) {
      deg = dg;
      acc = from_fp(g);
      modulus = static_cast<unsigned long>(p);
    } else {
      // CRT: acc = acc + modulus * ((g - acc) / modulus mod p)
      u64 minv = F.inv(mpz_fdiv_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p)));
      for (std::size_t i = 0; i < acc.size(); ++i) {
        u64 ai = mpz_fdiv_ui(acc[i].get_mpz_t(), static_cast<unsigned long>(p));
        u64 k = F.mul(F.sub(g[i], ai), minv);
        acc[i] += modulus * Integer(static_cast<unsigned long>(k));
      }
      modulus *= static_cast<unsigned long>(p);
    }
    ZPoly cand = acc;
    for (auto& c : cand) smod(c, modulus);
    ztrim(cand);
    if (cand.size() != deg + 1) continue;
    Integer cont = 0;
    for (const auto& c : cand) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
    for (auto& c : cand) c /= cont;
    if (zdivides(a, cand, nullptr) && zdivides(b, cand, nullptr)) return cand;
  }
}

}  // namespace

QPoly gcd_q(const QPoly& a0, const QPoly& b0) {
  if (a0.is_zero()) return b0.monic();
  if (b0.is_zero()) return a0.monic();
  if (a0.degree() == 0 || b0.degree() == 0) return QPoly(Rational(1));
  if (std::max(a0.degree(), b0.degree()) < 6) {
    QPoly a = primitive_part(a0), b = primitive_part(b0);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
      QPoly r = a % b;
      a = std::move(b);
      b = r.is_zero() ? r : primitive_part(r);
    }
    return a.monic();
  }
  return to_qpoly(gcd_modular(to_zpoly(a0), to_zpoly(b0))).monic();
}

std::vector<std::pair<QPoly, unsigned>> factor(const QPoly& p) {
  if (p.is_zero()) throw std::domain_error("factorization of zero");
  std::vector<std::pair<QPoly, unsigned>> out;
  for (const auto& [s, m] : squarefree_decomposition(p))
    for (auto& q : factor_squarefree(s)) out.emplace_back(std::move(q), m);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    const auto& ca = a.first.coeffs();
    const auto& cb = b.first.coeffs();
    for (std::size_t i = ca.size(); i-- > 0;)
      if (ca[i] != cb[i]) return ca[i] < cb[i];
    return a.second < b.second;
  });
  return out;
}

}  // namespace k3
