// Acceptance checks: one PASS/FAIL line per criterion, notes indented below it.
//
//   k3_acceptance [--only N] [--known-failures N,M]
//
// Exit status is 0 when the set of failing criteria equals the known-failures set
// (empty by default); failing criteria are always printed as FAIL.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "k3/fib/fibration.hpp"
#include "k3/poly/parse.hpp"

using namespace k3;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    notes.push_back(std::string(cond ? "ok    " : "FAIL  ") + what);
  }
  void note(const std::string& s) { notes.push_back("      " + s); }
};

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

QIdeal ideal(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<QMPoly> g;
  for (auto s : gens) g.push_back(parse_poly<Rational>(s, R));
  return QIdeal(R, g);
}

Place at(const Rational& t) { return Place{false, QPoly(std::vector<Rational>{-t, Rational(1)})}; }

ExpectedFiber E(const char* type, int deg = 1, int count = 1, std::optional<long> disc = std::nullopt) {
  ExpectedFiber e;
  e.type = KodairaType::parse(type);
  e.residue_degree = deg;
  e.count = count;
  if (disc) e.disc_class = Integer(*disc);
  return e;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

std::string table_summary(const FiberTable& t) {
  std::vector<std::string> out;
  for (const auto& f : t.fibers)
    if (!(f.type == KodairaType{KodairaType::Kind::I, 1})) out.push_back(f.to_string());
  return join(out);
}

/// Degree of C restricted to a smooth fibre; 1 for a section.
int section_degree(const Pencil& P, const CurveOnSurface& C) {
  HilbertData h = dimension_degree(saturate_irrelevant(C.ideal + fiber_ideal(P, at(5))));
  return h.dimension == 0 && h.degree.is_integer() ? static_cast<int>(h.degree.num().get_si()) : -1;
}

// ---------------------------------------------------------------- surfaces

struct Surfaces {
  RingPtr R5 = PolyRing::projective(5);  // x0..x4
  RingPtr R6 = PolyRing::projective(6);  // x0..x5
  ProjScheme S29{ideal(R5, {"-48*x1^2 + 68*x1*x2 + 3*x2^2 + 20*x0*x3 + 232*x1*x3 - 42*x2*x3 - 181*x3^2 - 3*x4^2",
                            "320*x0*x1^2 + 2496*x1^3 + 880*x0*x1*x2 - 6560*x1^2*x2 - 20*x0*x2^2 + 3628*x1*x2^2 + 114*x2^3 "
                            "- 17584*x1^2*x3 + 20124*x1*x2*x3 - 2441*x2^2*x3 + 29244*x1*x3^2 - 13032*x2*x3^2 - 14117*x3^3 "
                            "+ 20*x0*x4^2 + 156*x1*x4^2 - 114*x2*x4^2 - 195*x3*x4^2"}),
                 "S29"};
  ProjScheme S37{ideal(R6, {"-x3*x4 + x0*x5 + 2*x1*x5 + x2*x5",
                            "-243*x1^2 + 243*x0*x2 + 162*x1*x3 - 324*x2*x3 + 3*x4^2 - 8*x4*x5 + 4*x5^2",
                            "2187*x0^2 + 8748*x0*x1 - 5184*x0*x3 - 6480*x1*x3 - 1296*x2*x3 + 2592*x3^2 + 40*x4*x5 - 76*x5^2"}),
                 "S37"};

  QMPoly p5(const char* s) const { return parse_poly<Rational>(s, R5); }
  QMPoly p6(const char* s) const { return parse_poly<Rational>(s, R6); }
  CurveOnSurface c(const std::string& name, const QIdeal& I) const { return CurveOnSurface{name, I, {}, "QQ"}; }

  CurveOnSurface l1_37() const { return c("L1", ideal(R6, {"x0", "9*x1 + x4", "x3", "x5"})); }
  CurveOnSurface l2_37() const { return c("L2", ideal(R6, {"x0", "9*x1 - x4", "x3", "x5"})); }
  CurveOnSurface l3_37() const {
    return c("L3", ideal(R6, {"27*x0 + 2*x5", "27*x1 - 3*x4 + 8*x5", "3*x2 + x4 - 2*x5", "9*x3 + x5"}));
  }
  CurveOnSurface l1_29() const { return c("L1", ideal(R5, {"x1", "x3", "x2 + x4"})); }
  CurveOnSurface l2_29() const { return c("L2", ideal(R5, {"x1", "x3", "x2 - x4"})); }
  CurveOnSurface l3_29() const { return c("L3", ideal(R5, {"x0 + x2", "x1 - x3", "x4 - x0 + x1"})); }
  CurveOnSurface l4_29() const { return c("L4", ideal(R5, {"x0 + x2", "x1 - x3", "x0 + x4 - x1"})); }

  Pencil s37_first() const { return make_pencil(S37, p6("27*x0 + 2*x5"), p6("9*x3 + x5")); }
  Pencil s29_first() const { return make_pencil(S29, p5("x2"), p5("x3")); }
  Pencil s29_second() const { return make_pencil(S29, p5("x0 + 6/5*x2"), p5("x1 + x2/3 - x3")); }
  Pencil s29_final() const { return make_pencil(S29, p5("x0 - 3/5*x1 - 7/5*x3"), p5("x2 + 2*x3")); }
  std::pair<QMPoly, QMPoly> s37_final_forms() const { return {p6("-x0 - 2*x1 - x2 + 2*x3"), p6("x0 + 2*x1 + x2 - x3")}; }

  /// Conic through (-4:1:0:0:9:0) in the t = 0 fibre of the first pencil.
  CurveOnSurface c1_37() const {
    return c("C1", *component_through_point(fiber_ideal(s37_first(), at(0)), parse_point("(-4:1:0:0:9:0)"), 2));
  }
  /// Residual conic of the tangent hyperplane x3 = 0 at the node.
  CurveOnSurface c1_29() const {
    auto Y = saturate_irrelevant(S29.ideal + p5("x3"));
    return c("C1", *component_through_point(Y, parse_point("(-9:-40:-30:0:50)"), 2));
  }
  QIdeal y3() const { return fiber_ideal(s29_first(), at(Rational(-1, 2))); }
  CurveOnSurface c3_29() const { return c("C3", *component_through_point(y3(), parse_point("(-2:-1:2:-1:1)"), 2)); }
  CurveOnSurface c2_29() const { return c("C2", saturate_irrelevant(quotient(y3(), c3_29().ideal))); }
  CurveOnSurface c4_29() const {
    return c("C4", saturate_irrelevant(quotient(fiber_ideal(s29_second(), at(Rational(10, 9))), c1_29().ideal)));
  }
  /// Pullback of the singular point (0:1:-1:-1) under the quadrics through C1, L1, C4.
  CurveOnSurface c5_29() const {
    RationalMap f;
    f.source = S29.ideal;
    f.forms = linear_system(S29, intersect(intersect(c1_29().ideal, l1_29().ideal), c4_29().ideal), 2);
    f.target = PolyRing::projective(static_cast<int>(f.forms.size()), "y");
    auto pre = preimage_of_point(f, parse_point("(0:1:-1:-1)"));
    return c("C5", *component_through_point(pre, parse_point("(0:1:0:1:1)"), 2));
  }
};

const Surfaces& surfaces() {
  static const Surfaces s;
  return s;
}

// ---------------------------------------------------------------- criteria

Outcome criterion1() {
  Outcome o;
  const auto& s = surfaces();
  auto gens = s.S29.ideal.gens();
  o.require(gens.size() == 2 && gens[0].max_degree() == 2 && gens[1].max_degree() == 3, "two generators of degrees 2, 3");
  HilbertData h = s.S29.hilbert();
  o.require(h.dimension == 2 && h.degree == Rational(6), "dimension 2, degree 6 (got " + str(h.dimension) + ", " + h.degree.to_string() + ")");
  QIdeal sing = singular_subscheme(s.S29, 2);
  HilbertData hs = dimension_degree(sing);
  o.require(hs.dimension == 0 && hs.degree == Rational(4), "singular subscheme zero-dimensional of degree 4 (got " + hs.degree.to_string() + ")");
  auto orbits = solve_points(sing);
  int rational = 0, total = 0;
  bool mult1 = true;
  for (const auto& orb : orbits) {
    rational += orb.is_rational();
    total += orb.degree();
    Rational m = multiplicity_at_orbit(sing, orb);
    mult1 = mult1 && m == Rational(1);
    o.note(orb.to_string() + ", multiplicity " + m.to_string());
  }
  o.require(total == 4 && rational == 1, "four points, exactly one rational");
  o.require(mult1, "each point has multiplicity 1 in the Jacobian scheme");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto& s = surfaces();
  HilbertData h = s.S37.hilbert();
  o.require(h.dimension == 2 && h.degree == Rational(8), "dimension 2, degree 8 in P^5");
  o.require(dimension_degree(singular_subscheme(s.S37, 3)).dimension < 0, "singular subscheme is empty");
  auto L1 = s.l1_37(), L2 = s.l2_37(), L3 = s.l3_37();
  for (const auto& L : {L1, L2, L3}) o.require(L.ideal.contains(s.S37.ideal), L.label + " lies on the surface");
  auto n = [&](const CurveOnSurface& a, const CurveOnSurface& b) { return intersection_number(s.S37, a, b).number.value_or(-99); };
  int n12 = n(L1, L2), n23 = n(L2, L3), n13 = n(L1, L3);
  o.require(n12 == 1 && n23 == 1 && n13 == 0, "L1.L2 = " + str(n12) + ", L2.L3 = " + str(n23) + ", L1.L3 = " + str(n13));
  DivisorPairing P;
  P.set("H", "H", 8);
  for (const char* l : {"L1", "L2", "L3"}) {
    P.set("H", l, 1);
    P.set(l, l, -2);
  }
  P.set("L1", "L2", n12);
  P.set("L2", "L3", n23);
  P.set("L1", "L3", n13);
  long sq = P.square(parse_divisor("H - L1 - L2 - L3"));
  o.require(sq == 0, "(H - L1 - L2 - L3)^2 = " + str(sq));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto& s = surfaces();
  Pencil P = s.s37_first();
  FibrationModel m = build_model(P, s.l2_37());
  o.note(table_summary(m.table));
  auto rep = match_table(m.table, {E("I2", 1, 4)});
  o.require(rep.matched, "reducible fibres are exactly four I2 places" + (rep.matched ? "" : ": " + rep.to_string()));
  o.require(m.table.euler_total() == 24, "Euler checksum " + str(m.table.euler_total()));
  std::multiset<std::vector<int>> shapes;
  for (const auto& f : m.table.fibers) {
    if (!(f.type == KodairaType::parse("I2"))) continue;
    auto comps = reducible_fiber_components(P, f.place);
    std::vector<int> degs;
    for (const auto& c : comps.components)
      for (int i = 0; i < c.multiplicity; ++i) degs.push_back(c.degree);
    shapes.insert(degs);
    o.note(f.place.to_string() + ": " + comps.to_string());
  }
  o.require(shapes == std::multiset<std::vector<int>>{{1, 4}, {1, 4}, {2, 3}, {2, 3}}, "component degrees {1,4},{1,4},{2,3},{2,3}");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto& s = surfaces();
  auto [fa, g] = s.s37_final_forms();
  std::vector<std::pair<std::string, QMPoly>> readings = {{"2*x3", fa}, {"x3", s.p6("-x0 - 2*x1 - x2 + x3")}};
  std::vector<ExpectedFiber> expected = {E("IV"), E("I2"), E("I3", 1, 2), E("I3", 4)};
  int validated = 0;
  for (const auto& [label, f] : readings) {
    try {
      Pencil P = make_pencil(s.S37, f, g);
      FibrationModel m = build_model(P, s.l3_37());
      auto rep = match_table(m.table, expected);
      o.note("reading '" + label + "': " + table_summary(m.table));
      if (rep.matched) {
        ++validated;
        o.require(m.table.euler_total() == 24, "reading '" + label + "' validates; Euler " + str(m.table.euler_total()));
        int meets = section_degree(P, s.l3_37());
        o.require(meets == 1, "L3 meets the fibre over t = 5 in " + str(meets) + " point(s): a section");
      } else {
        o.note("reading '" + label + "' does not match: " + rep.to_string());
      }
    } catch (const std::exception& e) {
      o.note("reading '" + label + "' rejected: " + e.what());
    }
  }
  o.require(validated == 1, "exactly one reading validates (" + str(validated) + ")");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto& s = surfaces();
  FibrationModel a = build_model(s.s29_first(), s.l3_29());
  o.require(match_table(a.table, {E("I4"), E("I2")}, MatchMode::Contains).matched && a.table.euler_total() == 24,
            "(x2:x3) contains I4 and I2, Euler 24");
  FibrationModel b = build_model(s.s29_second(), s.l1_29());
  o.require(match_table(b.table, {E("I3", 1, 2), E("I2")}, MatchMode::Contains).matched && b.table.euler_total() == 24,
            "(x0+6x2/5 : x1+x2/3-x3) contains two I3 and an I2, Euler 24");
  FibrationModel c = build_model(s.s29_final(), s.l1_29());
  auto rep = match_table(c.table, {E("I4"), E("I3"), E("I3", 3, 1, -87), E("I2", 3, 1, -116), E("II")});
  o.note(table_summary(c.table));
  o.require(rep.matched, "final table {I4, I3, I3 cubic -87, I2 cubic -116, II}" + (rep.matched ? "" : ": " + rep.to_string()));
  o.require(c.table.euler_total() == 24, "final Euler " + str(c.table.euler_total()));
  int meets = section_degree(s.s29_final(), s.l1_29());
  o.require(meets == 1, "L1 meets the fibre over t = 5 in " + str(meets) + " point(s): a section");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto& s = surfaces();
  auto round_trip = [&](const std::string& what, const ProjScheme& X, const std::vector<CurveOnSurface>& cs,
                        const QMPoly& f, const QMPoly& g, bool counts) {
    QIdeal F = cs[0].ideal;
    for (std::size_t i = 1; i < cs.size(); ++i) F = intersect(F, cs[i].ideal);
    try {
      Pencil P = residual_pencil(X, F);
      bool same = same_pencil(P, f, g);
      std::string msg = what + " -> " + P.to_string();
      if (counts) o.require(same, msg);
      else o.note((same ? "reproduces: " : "differs: ") + msg);
    } catch (const std::exception& e) {
      if (counts) o.require(false, what + ": " + e.what());
      else o.note(what + ": " + e.what());
    }
  };
  round_trip("S37 L1 u L2 u L3", s.S37, {s.l1_37(), s.l2_37(), s.l3_37()}, s.p6("27*x0 + 2*x5"), s.p6("9*x3 + x5"), true);
  auto [ff, fg] = s.s37_final_forms();
  round_trip("S37 C1 u L1 u L2", s.S37, {s.c1_37(), s.l1_37(), s.l2_37()}, ff, fg, true);
  round_trip("S29 C1 u L1 u L2", s.S29, {s.c1_29(), s.l1_29(), s.l2_29()}, s.p5("x2"), s.p5("x3"), true);
  round_trip("S29 L3 u L4 u C3", s.S29, {s.l3_29(), s.l4_29(), s.c3_29()}, s.p5("x0 + 6/5*x2"), s.p5("x1 + x2/3 - x3"), true);
  auto fin = s.s29_final();
  auto C2 = s.c2_29(), C3 = s.c3_29(), C5 = s.c5_29();
  round_trip("S29 C2 u C3 u C5", s.S29, {C2, C3, C5}, fin.f, fin.g, true);
  // Structure of the stated final pencil, for the record.
  auto n = [&](const CurveOnSurface& a, const CurveOnSurface& b) { return intersection_number(s.S29, a, b).number.value_or(-99); };
  o.note("C2.C3 = " + str(n(C2, C3)) + ", C3.C5 = " + str(n(C3, C5)) + ", C2.C5 = " + str(n(C2, C5)) +
         "; degree-2 forms through C2 u C3 u C5: " +
         str(linear_system(s.S29, intersect(intersect(C2.ideal, C3.ideal), C5.ideal), 2).size()));
  o.note("C3 is the base curve of the stated pencil: " + std::string(C3.ideal.equals(fin.base) ? "yes" : "no"));
  round_trip("S29 L3 u L4 u C5 (the rational I3 fibre)", s.S29, {s.l3_29(), s.l4_29(), C5}, fin.f, fin.g, false);
  return o;
}

// ---- criterion 7: property suites

QMPoly random_poly(std::mt19937& rng, const RingPtr& R, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, max_deg);
  QMPoly f(R);
  for (int i = 0; i < terms; ++i) {
    auto mons = monomials_of_weighted_degree(*R, deg(rng));
    std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
    int c = coef(rng);
    if (c == 0) c = 1;
    f += QMPoly::term(R, Rational(c), mons[pick(rng)]);
  }
  return f;
}

QMPoly random_form(std::mt19937& rng, const RingPtr& R, int d) {
  std::uniform_int_distribution<int> coef(-3, 3);
  QMPoly f(R);
  for (const auto& m : monomials_of_weighted_degree(*R, d)) f += QMPoly::term(R, Rational(coef(rng)), m);
  return f;
}

std::vector<std::string> strings(const std::vector<QMPoly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937 rng(20240607);

  // Reduced basis uniqueness under shuffling and redundant generators.
  int same = 0, tried = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> names;
    for (int k = 0; k < 2 + i % 3; ++k) names.push_back(std::string(1, char('a' + k)));
    auto R = PolyRing::make(names);
    std::vector<QMPoly> g;
    int ngens = 2 + i % 2;
    for (int k = 0; k < ngens; ++k) g.push_back(random_poly(rng, R, 3, 2 + k % 2));
    auto b1 = strings(QIdeal(R, g).groebner()->polys());
    std::shuffle(g.begin(), g.end(), rng);
    g.push_back(g[0] * random_poly(rng, R, 1, 2) + g[1].scaled(Rational(3)));
    std::shuffle(g.begin(), g.end(), rng);
    auto b2 = strings(QIdeal(R, g).groebner()->polys());
    ++tried;
    same += b1 == b2;
  }
  o.require(same == tried, "reduced Groebner basis unchanged under shuffling: " + str(same) + "/" + str(tried));

  // Bezout on random complete intersections.
  int bez = 0, bez_total = 0;
  for (auto degs : {std::vector<int>{2}, {3}, {2, 2}, {2, 3}, {3, 3}, {1, 2, 2}, {2, 2, 2}}) {
    auto R = PolyRing::projective(degs.size() == 3 ? 5 : 4);
    std::vector<QMPoly> fs;
    for (int d : degs) fs.push_back(random_form(rng, R, d));
    auto h = dimension_degree(QIdeal(R, fs));
    int prod = 1;
    for (int d : degs) prod *= d;
    ++bez_total;
    bez += h.dimension == R->nvars() - 1 - static_cast<int>(degs.size()) && h.degree == Rational(prod);
  }
  o.require(bez == bez_total, "Bezout degree on random complete intersections: " + str(bez) + "/" + str(bez_total));

  // Saturation and quotient identities.
  int sat_ok = 0, sat_total = 0;
  for (int i = 0; i < 20; ++i) {
    auto R = PolyRing::make({"x", "y", "z"});
    QMPoly a = random_poly(rng, R, 2, 2), b = random_poly(rng, R, 2, 2), h = random_poly(rng, R, 1, 2);
    if (a.is_zero() || b.is_zero() || h.is_zero()) continue;
    QIdeal I(R, {a * h, b * h * h});
    QIdeal J(R, {h});
    QIdeal K(R, {random_poly(rng, R, 1, 2)});
    QIdeal Q = quotient(I, h), S = saturate(I, h);
    bool ok = Q.contains(I) && S.contains(Q) && saturate(S, h).equals(S);
    // (I : J) : K = I : JK and (I n J) : K = (I : K) n (J : K)
    QMPoly k = K.gens().empty() ? QMPoly(R, Rational(1)) : K.gens()[0];
    ok = ok && quotient(quotient(I, h), k).equals(quotient(I, h * k));
    ok = ok && quotient(intersect(I, J), k).equals(intersect(quotient(I, k), quotient(J, k)));
    ++sat_total;
    sat_ok += ok;
  }
  o.require(sat_ok == sat_total && sat_total > 0, "saturation/quotient identities: " + str(sat_ok) + "/" + str(sat_total));

  // c4^3 - c6^2 = 1728 disc and euler(type) = v(disc) on all constructed models.
  const auto& s = surfaces();
  std::vector<std::pair<std::string, FibrationModel>> models;
  models.emplace_back("S37 first", build_model(s.s37_first(), s.l2_37()));
  auto [ff, fg] = s.s37_final_forms();
  models.emplace_back("S37 final", build_model(make_pencil(s.S37, ff, fg), s.l3_37()));
  models.emplace_back("S29 first", build_model(s.s29_first(), s.l3_29()));
  models.emplace_back("S29 second", build_model(s.s29_second(), s.l1_29()));
  models.emplace_back("S29 final", build_model(s.s29_final(), s.l1_29()));
  int inv_ok = 0, euler_ok = 0, fibres = 0;
  for (const auto& [name, m] : models) {
    const auto& W = m.weierstrass.model;
    inv_ok += W.c4() * W.c4() * W.c4() - W.c6() * W.c6() == W.discriminant() * RatFunc(Rational(1728));
    for (const auto& f : m.table.fibers) {
      ++fibres;
      euler_ok += f.type.euler() == f.v_disc;
    }
  }
  o.require(inv_ok == static_cast<int>(models.size()), "c4^3 - c6^2 = 1728 disc on " + str(inv_ok) + "/" + str(models.size()) + " models");
  int total = 0, consistent = 0;
  for (long v4 = 0; v4 <= 6; ++v4)
    for (long v6 = 0; v6 <= 8; ++v6)
      for (long vd = 0; vd <= 12; ++vd) {
        if (!((v4 < 4 || v6 < 6) && valuations_consistent(v4, v6, vd))) continue;
        ++total;
        try {
          consistent += kodaira_type(v4, v6, vd).euler() == vd;
        } catch (const std::exception&) {
        }
      }
  o.require(consistent == total && euler_ok == fibres,
            "Kodaira table total with euler = v(disc): " + str(consistent) + "/" + str(total) + " valuation triples, " +
                str(euler_ok) + "/" + str(fibres) + " fibres");

  // j-invariant under a change of projection order.
  RatFunc j = models[4].second.weierstrass.model.j_invariant();
  bool j_ok = true;
  for (int variant = 1; variant < 4; ++variant)
    j_ok = j_ok && build_model(s.s29_final(), s.l1_29(), variant).weierstrass.model.j_invariant() == j;
  o.require(j_ok, "j-invariant independent of the projection order (4 orders)");

  // Parse/print round trips.
  int rt = 0;
  auto R = PolyRing::projective(5);
  for (int i = 0; i < 500; ++i) {
    QMPoly p = random_poly(rng, R, 4, 1 + i % 6);
    rt += parse_poly<Rational>(p.to_string(), R) == p;
  }
  o.require(rt == 500, "parse/print round trip " + str(rt) + "/500");
  return o;
}

// ---- criterion 8: degree ledger on synthetic surfaces

Outcome criterion8() {
  Outcome o;
  struct Example {
    std::string name;
    RingPtr R;
    std::vector<const char*> gens;
    const char* point;
    bool expect_birational;
  };
  auto P3 = PolyRing::projective(4), P4 = PolyRing::projective(5);
  std::vector<Example> examples = {
      {"smooth quadric, smooth point", P3, {"x0*x3 - x1*x2"}, "(0:0:0:1)", true},
      {"cubic with a node", P3, {"x0*(x1*x2 + x2*x3 + x1*x3) + x1^3 + 2*x2^3 - x3^3 + x1*x2*x3"}, "(1:0:0:0)", true},
      {"quartic with a triple point", P3, {"x0*(x1^3 + x2^3 + x3^3) + x1^4 - x2^4 + 2*x3^4 + x1*x2*x3^2"}, "(1:0:0:0)", true},
      {"quartic del Pezzo, smooth point", P4, {"x0*x1 - x2*x3", "x0*x2 - x1*x4 + x3^2 - x4^2"}, "(1:0:0:0:0)", true},
      {"(2,3) complete intersection with a node", P4,
       {"x0*x1 + x2^2 - x3*x4 + x1*x4", "x0^2*x1 + x0*(x2*x3 + x4^2 + x1*x2) + x1^3 + x2^3 + x3^3 + x4^3 - x1*x2*x4"},
       "(1:0:0:0:0)",
       true},
      {"smooth cubic, smooth point (negative)", P3, {"x0^2*x1 + x1^2*x2 + x2^2*x3 + x3^2*x0"}, "(1:0:0:0)", false},
  };
  int positives = 0;
  for (const auto& ex : examples) {
    std::vector<QMPoly> g;
    for (auto s : ex.gens) g.push_back(parse_poly<Rational>(s, ex.R));
    ProjScheme X{QIdeal(ex.R, g), ex.name};
    Point p = parse_point(ex.point);
    try {
      Rational d0 = X.hilbert().degree;
      Rational m = dimension_degree(tangent_cone(X, p)).degree;
      auto [Y, f] = project_from_point(X, p);
      Rational d1 = Y.hilbert().degree;
      bool bir = is_birational(f).birational;
      std::string line = ex.name + ": m = " + m.to_string() + ", degree " + d0.to_string() + " -> " + d1.to_string() +
                         (bir ? ", birational" : ", not birational");
      if (ex.expect_birational) {
        ++positives;
        o.require(bir && d0 - d1 == m, line);
      } else {
        o.require(!bir, line + " (drop equals m only for birational projections)");
      }
    } catch (const std::exception& e) {
      o.require(false, ex.name + ": " + e.what());
    }
  }
  o.note(str(positives) + " birational examples");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, known;
  auto parse_list = [](const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.insert(std::stoi(tok));
    return out;
  };
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) only = parse_list(argv[++i]);
    else if (a == "--known-failures" && i + 1 < argc) known = parse_list(argv[++i]);
    else {
      std::cerr << "usage: k3_acceptance [--only N,...] [--known-failures N,...]\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "S29 model: (2,3) complete intersection, four nodes, one rational", criterion1},
      {2, "S37 model: smooth (2,2,2), lines, intersections, pairing", criterion2},
      {3, "S37 first fibration: four I2, component degrees, Euler 24", criterion3},
      {4, "S37 final fibration: IV + I2 + 6 I3, one reading validates", criterion4},
      {5, "S29 fibration chain and final table", criterion5},
      {6, "residual pencil round trips", criterion6},
      {7, "property suites", criterion7},
      {8, "degree ledger on synthetic surfaces", criterion8},
  };
  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("error: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) failed.insert(c.id);
    std::cout << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.title << " ("
              << std::fixed << std::setprecision(1) << secs << " s)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  std::set<int> unexpected;
  for (int id : failed)
    if (!known.count(id)) unexpected.insert(id);
  bool missing_known = false;
  for (int id : known)
    if ((only.empty() || only.count(id)) && !failed.count(id)) missing_known = true;
  if (!known.empty())
    std::cout << "known failures: " << join([&] {
      std::vector<std::string> v;
      for (int id : known) v.push_back(str(id));
      return v;
    }()) << (missing_known ? " (now passing: update the list)" : "") << "\n";
  return unexpected.empty() && !missing_known ? 0 : 1;
}
