#include "k3/fib/weierstrass.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace k3 {

RatFunc WeierstrassModel::b2() const { return a1 * a1 + RatFunc(4) * a2; }
RatFunc WeierstrassModel::b4() const { return RatFunc(2) * a4 + a1 * a3; }
RatFunc WeierstrassModel::b6() const { return a3 * a3 + RatFunc(4) * a6; }
RatFunc WeierstrassModel::b8() const {
  return a1 * a1 * a6 + RatFunc(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}
RatFunc WeierstrassModel::c4() const { return b2() * b2() - RatFunc(24) * b4(); }
RatFunc WeierstrassModel::c6() const {
  RatFunc B2 = b2();
  return -(B2 * B2 * B2) + RatFunc(36) * B2 * b4() - RatFunc(216) * b6();
}
RatFunc WeierstrassModel::discriminant() const {
  RatFunc B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -(B2 * B2 * B8) - RatFunc(8) * B4 * B4 * B4 - RatFunc(27) * B6 * B6 + RatFunc(9) * B2 * B4 * B6;
}
RatFunc WeierstrassModel::j_invariant() const {
  RatFunc d = discriminant();
  if (d.is_zero()) throw std::domain_error("singular Weierstrass model");
  RatFunc C4 = c4();
  return C4 * C4 * C4 / d;
}

std::string WeierstrassModel::to_string() const {
  return "[" + a1.to_string() + ", " + a2.to_string() + ", " + a3.to_string() + ", " + a4.to_string() + ", " +
         a6.to_string() + "]";
}

int KodairaType::euler() const {
  switch (kind) {
    case Kind::I: return n;
    case Kind::II: return 2;
    case Kind::III: return 3;
    case Kind::IV: return 4;
    case Kind::IStar: return n + 6;
    case Kind::IVStar: return 8;
    case Kind::IIIStar: return 9;
    case Kind::IIStar: return 10;
  }
  return 0;
}

std::string KodairaType::name() const {
  switch (kind) {
    case Kind::I: return "I" + std::to_string(n);
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    case Kind::IStar: return "I" + std::to_string(n) + "*";
    case Kind::IVStar: return "IV*";
    case Kind::IIIStar: return "III*";
    case Kind::IIStar: return "II*";
  }
  return "?";
}

KodairaType KodairaType::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '_' && c != ' ' && c != '{' && c != '}' && c != '$') s += c;
  static const std::map<std::string, Kind> fixed = {{"II", Kind::II},      {"III", Kind::III},   {"IV", Kind::IV},
                                                    {"IV*", Kind::IVStar}, {"III*", Kind::IIIStar}, {"II*", Kind::IIStar}};
  if (auto it = fixed.find(s); it != fixed.end()) return {it->second, 0};
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return {star ? Kind::IStar : Kind::I, std::stoi(digits)};
  }
  throw std::invalid_argument("unknown Kodaira symbol '" + text + "'");
}

bool valuations_consistent(long v4, long v6, long vd) {
  if (v4 < 0 || v6 < 0 || vd < 0) return false;
  const long a = v4 >= kInfiniteValuation ? kInfiniteValuation : 3 * v4;
  const long b = v6 >= kInfiniteValuation ? kInfiniteValuation : 2 * v6;
  if (a == kInfiniteValuation && b == kInfiniteValuation) return false;
  if (a != b) return vd == std::min(a, b);
  return vd >= a;
}

KodairaType kodaira_type(long v4, long v6, long vd) {
  if (!valuations_consistent(v4, v6, vd))
    throw std::invalid_argument("kodaira_type: inconsistent valuations (" + std::to_string(v4) + ", " + std::to_string(v6) + ", " +
                                std::to_string(vd) + ")");
  if (v4 >= 4 && v6 >= 6 && vd >= 12) throw std::invalid_argument("kodaira_type: model is not minimal");
  using K = KodairaType::Kind;
  if (vd == 0) return {K::I, 0};
  if (v4 == 0) return {K::I, static_cast<int>(vd)};
  if (v4 == 2 && v6 == 3) return {K::IStar, static_cast<int>(vd - 6)};
  switch (vd) {
    case 2: return {K::II, 0};
    case 3: return {K::III, 0};
    case 4: return {K::IV, 0};
    case 8: return {K::IVStar, 0};
    case 9: return {K::IIIStar, 0};
    case 10: return {K::IIStar, 0};
    default: break;
  }
  if (vd == 6) return {K::IStar, 0};
  throw std::logic_error("kodaira_type: unclassified valuations");
}

std::string Place::to_string() const {
  if (infinite) return "t = oo";
  if (poly.degree() == 1) return "t = " + (-poly.coeff(0)).to_string();
  return poly.to_string("t") + " = 0";
}

std::string KodairaFiber::to_string() const {
  std::string s = type.name() + " at " + place.to_string();
  if (residue_degree() > 1) s += " (degree " + std::to_string(residue_degree()) + ", disc class " + (disc_class ? disc_class->get_str() : "?") + ")";
  return s;
}

int FiberTable::euler_total() const {
  int s = 0;
  for (const auto& f : fibers) s += f.euler();
  return s;
}

std::string FiberTable::to_string() const {
  std::string s;
  for (const auto& f : fibers) s += f.to_string() + "\n";
  s += "euler " + std::to_string(euler_total()) + "\n";
  return s;
}

namespace {

QPoly to_poly(const RatFunc& r) {
  if (!r.is_polynomial()) throw std::logic_error("expected a polynomial");
  return r.num() / r.den();
}

long valuation(const QPoly& p, QPoly f) {
  if (f.is_zero()) return kInfiniteValuation;
  long k = 0;
  while (true) {
    auto [q, r] = f.divrem(p);
    if (!r.is_zero()) return k;
    f = q;
    ++k;
  }
}

/// Squarefree product of the primes dividing f to order at least k (f = 0 imposes nothing).
QPoly order_at_least(const QPoly& f, int k, QPoly acc) {
  if (f.is_zero()) return acc;
  QPoly d = f;
  for (int i = 0; i < k && acc.degree() > 0; ++i) {
    acc = gcd_q(acc, d);
    d = d.derivative();
  }
  return acc;
}

QPoly squarefree_part(const QPoly& f) {
  if (f.degree() <= 0) return f;
  return (f / gcd_q(f, f.derivative())).monic();
}

}  // namespace

std::pair<QPoly, QPoly> minimal_c4_c6(const WeierstrassModel& W) {
  RatFunc c4 = W.c4(), c6 = W.c6();
  QPoly den = c4.den() * c6.den() / gcd_q(c4.den(), c6.den());
  QPoly C4 = c4.num() * (pow(den, 4) / c4.den());
  QPoly C6 = c6.num() * (pow(den, 6) / c6.den());
  while (true) {
    QPoly G = C4.is_zero() ? C6 : C4;
    G = order_at_least(C4, 4, G);
    G = order_at_least(C6, 6, G);
    QPoly s = squarefree_part(G);
    if (s.degree() <= 0) break;
    C4 = C4 / pow(s, 4);
    C6 = C6 / pow(s, 6);
  }
  return {C4, C6};
}

FiberTable fiber_table(const WeierstrassModel& W) {
  auto [C4, C6] = minimal_c4_c6(W);
  QPoly D = (C4 * C4 * C4 - C6 * C6).scaled(Rational(1) / Rational(1728));
  if (D.is_zero()) throw std::domain_error("fiber_table: discriminant vanishes");
  FiberTable tab;
  for (const auto& [p, e] : factor(D)) {
    KodairaFiber f;
    f.place.poly = p;
    f.v_c4 = valuation(p, C4);
    f.v_c6 = valuation(p, C6);
    f.v_disc = e;
    f.type = kodaira_type(f.v_c4, f.v_c6, f.v_disc);
    if (p.degree() >= 2) {
      Rational disc = discriminant(p);
      bool small = mpz_sizeinbase(disc.num().get_mpz_t(), 2) + mpz_sizeinbase(disc.den().get_mpz_t(), 2) <= 96;
      if (small || !(f.type == KodairaType{KodairaType::Kind::I, 1})) f.disc_class = squarefree_class(disc);
    }
    tab.fibers.push_back(std::move(f));
  }
  std::sort(tab.fibers.begin(), tab.fibers.end(), [](const KodairaFiber& a, const KodairaFiber& b) {
    if (a.residue_degree() != b.residue_degree()) return a.residue_degree() < b.residue_degree();
    return a.place.poly.to_string("t") < b.place.poly.to_string("t");
  });
  auto ceil_div = [](long a, long b) { return (a + b - 1) / b; };
  long k = 0;
  if (!C4.is_zero()) k = std::max(k, ceil_div(C4.degree(), 4));
  if (!C6.is_zero()) k = std::max(k, ceil_div(C6.degree(), 6));
  KodairaFiber inf;
  inf.place.infinite = true;
  inf.v_c4 = C4.is_zero() ? kInfiniteValuation : 4 * k - C4.degree();
  inf.v_c6 = C6.is_zero() ? kInfiniteValuation : 6 * k - C6.degree();
  inf.v_disc = 12 * k - D.degree();
  if (inf.v_disc > 0) {
    inf.type = kodaira_type(inf.v_c4, inf.v_c6, inf.v_disc);
    tab.fibers.push_back(std::move(inf));
  }
  return tab;
}

namespace {

std::string describe(const KodairaType& t, int degree, const std::optional<Integer>& cls) {
  std::string s = t.name() + " over a place of degree " + std::to_string(degree);
  if (cls) s += " (disc class " + cls->get_str() + ")";
  return s;
}

}  // namespace

std::string MatchReport::to_string() const {
  std::string s = matched ? "match" : "mismatch";
  for (const auto& m : mismatches) s += "\n  " + m;
  return s;
}

MatchReport match_table(const FiberTable& actual, const std::vector<ExpectedFiber>& expected, MatchMode mode) {
  bool want_i1 = false;
  for (const auto& e : expected)
    if (e.type == KodairaType{KodairaType::Kind::I, 1}) want_i1 = true;
  std::vector<const KodairaFiber*> pool;
  for (const auto& f : actual.fibers)
    if (want_i1 || !(f.type == KodairaType{KodairaType::Kind::I, 1})) pool.push_back(&f);
  std::vector<bool> used(pool.size(), false);
  MatchReport rep;
  auto fits = [](const ExpectedFiber& e, const KodairaFiber& f) {
    if (!(e.type == f.type) || e.residue_degree != f.residue_degree()) return false;
    if (!e.disc_class) return true;
    return f.disc_class && squarefree_class(Rational(*e.disc_class)) == *f.disc_class;
  };
  // Entries with a discriminant class are the most specific, so they are matched first.
  std::vector<const ExpectedFiber*> order;
  for (const auto& e : expected)
    if (e.disc_class) order.push_back(&e);
  for (const auto& e : expected)
    if (!e.disc_class) order.push_back(&e);
  for (const auto* e : order) {
    int found = 0;
    for (std::size_t i = 0; i < pool.size() && found < e->count; ++i)
      if (!used[i] && fits(*e, *pool[i])) {
        used[i] = true;
        ++found;
      }
    if (found < e->count)
      rep.mismatches.push_back("missing " + std::to_string(e->count - found) + " x " + describe(e->type, e->residue_degree, e->disc_class));
  }
  if (mode == MatchMode::Exact)
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (!used[i]) rep.mismatches.push_back("unexpected " + pool[i]->to_string());
  rep.matched = rep.mismatches.empty();
  return rep;
}

}  // namespace k3
