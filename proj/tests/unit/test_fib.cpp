#include <doctest.h>

#include <map>
#include <set>
#include <random>

#include "k3/fib/fibration.hpp"
#include "surfaces.hpp"

using namespace k3;
using k3::testing::make_ideal;

namespace {

using Kind = KodairaType::Kind;

RatFunc rpow(const RatFunc& x, unsigned e) {
  RatFunc r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

KodairaType T(const char* s) { return KodairaType::parse(s); }

ExpectedFiber E(const char* type, int deg = 1, int count = 1, std::optional<long> disc = std::nullopt) {
  ExpectedFiber e;
  e.type = T(type);
  e.residue_degree = deg;
  e.count = count;
  if (disc) e.disc_class = Integer(*disc);
  return e;
}

Place rational_place(const Rational& a) { return Place{false, QPoly({-a, Rational(1)})}; }

struct Surfaces {
  RingPtr R5 = PolyRing::projective(5), R6 = PolyRing::projective(6);
  ProjScheme S29{k3::testing::s29(R5), "S29"};
  ProjScheme S37{k3::testing::s37(R6), "S37"};

  QMPoly p5(const char* s) const { return parse_poly<Rational>(s, R5); }
  QMPoly p6(const char* s) const { return parse_poly<Rational>(s, R6); }

  Pencil s37_first() const { return make_pencil(S37, p6("27*x0 + 2*x5"), p6("9*x3 + x5")); }
  Pencil s37_final() const { return make_pencil(S37, p6("-x0 - 2*x1 - x2 + 2*x3"), p6("x0 + 2*x1 + x2 - x3")); }
  Pencil s29_first() const { return make_pencil(S29, p5("x2"), p5("x3")); }
  Pencil s29_second() const { return make_pencil(S29, p5("x0 + 6/5*x2"), p5("x1 + x2/3 - x3")); }
  Pencil s29_final() const { return make_pencil(S29, p5("x0 - 3/5*x1 - 7/5*x3"), p5("x2 + 2*x3")); }

  CurveOnSurface curve(const char* name, QIdeal I) const { return CurveOnSurface{name, std::move(I), {}}; }
};

const Surfaces& surfaces() {
  static const Surfaces s;
  return s;
}

/// Built models, keyed by name, computed once for the whole suite.
const FibrationModel& model(const std::string& name) {
  static std::map<std::string, FibrationModel> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  const Surfaces& s = surfaces();
  FibrationModel m;
  if (name == "s37_first") m = build_model(s.s37_first(), s.curve("L2", k3::testing::s37_l2(s.R6)));
  if (name == "s37_final") m = build_model(s.s37_final(), s.curve("L3", k3::testing::s37_l3(s.R6)));
  if (name == "s29_first") m = build_model(s.s29_first(), s.curve("L3", k3::testing::s29_l3(s.R5)));
  if (name == "s29_second") m = build_model(s.s29_second(), s.curve("L1", k3::testing::s29_l1(s.R5)));
  if (name == "s29_final") m = build_model(s.s29_final(), s.curve("L1", k3::testing::s29_l1(s.R5)));
  return cache.emplace(name, std::move(m)).first->second;
}

/// Conic C1 on S37: in a {2,3} fibre of the first pencil, through (-4:1:0:0:9:0).
QIdeal s37_c1() {
  const Surfaces& s = surfaces();
  auto C = component_through_point(fiber_ideal(s.s37_first(), rational_place(Rational(0))), parse_point("(-4:1:0:0:9:0)"), 2);
  REQUIRE(C);
  return *C;
}

/// Conic C3 on S29: in the I2 fibre of (x2:x3), through (-2:-1:2:-1:1).
QIdeal s29_c3() {
  const Surfaces& s = surfaces();
  auto C = component_through_point(fiber_ideal(s.s29_first(), rational_place(Rational(-1, 2))), parse_point("(-2:-1:2:-1:1)"), 2);
  REQUIRE(C);
  return *C;
}

}  // namespace

TEST_CASE("kodaira table is total on minimal consistent valuations") {
  int classified = 0;
  for (long v4 = 0; v4 <= 5; ++v4)
    for (long v6 = 0; v6 <= 7; ++v6)
      for (long vd = 0; vd <= 12; ++vd) {
        bool minimal = v4 < 4 || v6 < 6;
        if (!minimal || !valuations_consistent(v4, v6, vd)) {
          CHECK_THROWS_AS(kodaira_type(v4, v6, vd), std::invalid_argument);
          continue;
        }
        KodairaType k = kodaira_type(v4, v6, vd);
        CHECK(k.euler() == vd);
        // Additive types beyond I_n* are pinned by the smaller of 3 v(c4) and 2 v(c6).
        if (k.kind == Kind::IVStar) CHECK((v4 >= 3 && v6 == 4));
        if (k.kind == Kind::IIIStar) CHECK((v4 == 3 && v6 >= 5));
        if (k.kind == Kind::IIStar) CHECK((v4 >= 4 && v6 == 5));
        if (k.kind == Kind::IStar && k.n > 0) CHECK((v4 == 2 && v6 == 3));
        ++classified;
      }
  CHECK(classified > 20);
  // Infinite valuations of c4 or c6 stand for zero invariants.
  CHECK(kodaira_type(kInfiniteValuation, 1, 2) == T("II"));
  CHECK(kodaira_type(1, kInfiniteValuation, 3) == T("III"));
}

TEST_CASE("kodaira table values") {
  CHECK(kodaira_type(0, 0, 0) == T("I0"));
  CHECK(kodaira_type(0, 0, 3) == T("I3"));
  CHECK(kodaira_type(1, 1, 2) == T("II"));
  CHECK(kodaira_type(3, 1, 2) == T("II"));
  CHECK(kodaira_type(1, 2, 3) == T("III"));
  CHECK(kodaira_type(2, 2, 4) == T("IV"));
  CHECK(kodaira_type(2, 3, 6) == T("I0*"));
  CHECK(kodaira_type(2, 3, 8) == T("I2*"));
  CHECK(kodaira_type(2, 3, 10) == T("I4*"));
  CHECK(kodaira_type(2, 4, 6) == T("I0*"));
  CHECK(kodaira_type(3, 4, 8) == T("IV*"));
  CHECK(kodaira_type(3, 5, 9) == T("III*"));
  CHECK(kodaira_type(4, 5, 10) == T("II*"));
  CHECK_THROWS_AS(kodaira_type(4, 6, 12), std::invalid_argument);
  CHECK(T("I_0*").name() == "I0*");
  CHECK(T("IV").euler() == 4);
  CHECK(T("I3*").euler() == 9);
  CHECK_THROWS(T("V"));
}

TEST_CASE("weierstrass invariants") {
  auto R = [](const char* s) { return RatFunc(parse_qpoly(s, "t")); };
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int i = 0; i < 20; ++i) {
    WeierstrassModel W{RatFunc(Rational(d(rng))), RatFunc(Rational(d(rng))), RatFunc(Rational(d(rng))),
                       RatFunc(Rational(d(rng))), RatFunc(Rational(d(rng)))};
    if (i % 2) W.a4 = W.a4 + R("t^2 - 3*t");
    CHECK(rpow(W.c4(), 3u) - W.c6() * W.c6() == W.discriminant() * RatFunc(Rational(1728)));
  }
  WeierstrassModel W{RatFunc(), RatFunc(), RatFunc(), RatFunc(Rational(-1)), RatFunc()};
  CHECK(W.discriminant() == RatFunc(Rational(64)));
  CHECK(W.j_invariant() == RatFunc(Rational(1728)));
}

TEST_CASE("nagell on classical cubics") {
  auto R = PolyRing::projective(3, "x", FieldDesc::function_field("t"));
  auto P = [&](const char* s) { return parse_poly<RatFunc>(s, R); };
  auto pt = [](long a, long b, long c) { return std::vector<RatFunc>{RatFunc(a), RatFunc(b), RatFunc(c)}; };

  auto fermat = nagell(P("x0^3 + x1^3 + x2^3"), pt(1, -1, 0));
  CHECK(fermat.model.c4().is_zero());
  CHECK_FALSE(fermat.model.discriminant().is_zero());

  // Weierstrass shape at (0:1:0) is returned unchanged.
  auto w = nagell(P("x1^2*x2 + x0*x1*x2 + 3*x1*x2^2 - x0^3 - 2*x0^2*x2 - 5*x0*x2^2 - 7*x2^3"), pt(0, 1, 0));
  CHECK(w.map.already_weierstrass);
  CHECK(w.model.a1 == RatFunc(1));
  CHECK(w.model.a2 == RatFunc(2));
  CHECK(w.model.a3 == RatFunc(3));
  CHECK(w.model.a4 == RatFunc(5));
  CHECK(w.model.a6 == RatFunc(7));

  // y^2 = x^3 - x + t^2 through (0 : t : 1), away from the flex at infinity.
  auto c = P("x1^2*x2 - x0^3 + x0*x2^2 - t^2*x2^3");
  auto moved = nagell(c, std::vector<RatFunc>{RatFunc(Rational(0)), RatFunc::t(), RatFunc(1)});
  CHECK_FALSE(moved.map.already_weierstrass);
  RatFunc t4 = rpow(RatFunc::t(), 4u);
  CHECK(moved.model.j_invariant() == RatFunc(Rational(-6912)) / (RatFunc(Rational(-4)) + RatFunc(Rational(27)) * t4));
  const WeierstrassModel& W = moved.model;
  CHECK(rpow(W.c4(), 3u) - W.c6() * W.c6() == W.discriminant() * RatFunc(Rational(1728)));

  CHECK_THROWS_AS(nagell(c, pt(1, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(nagell(P("x0^3 + x1^2*x2"), pt(0, 0, 1)), std::invalid_argument);
}

TEST_CASE("plane conic is not genus one") {
  auto R = PolyRing::projective(3, "x", FieldDesc::function_field("t"));
  GenericFiber C;
  C.ideal = TIdeal(R, {parse_poly<RatFunc>("x0*x2 - x1^2 + t*x2^2", R)});
  C.dimension = 1;
  C.degree = Rational(2);
  C.point = std::vector<RatFunc>{RatFunc(1), RatFunc(Rational(0)), RatFunc(Rational(0))};
  CHECK_THROWS_AS(reduce_to_plane_cubic(C), std::invalid_argument);
}

TEST_CASE("sections and generic fibres") {
  const Surfaces& s = surfaces();
  Pencil P = s.s37_first();
  GenericFiber C = generic_fiber(P);
  CHECK(C.dimension == 1);
  CHECK(C.degree == Rational(5));
  CHECK_THROWS_AS(section_point(P, C, s.curve("L1", k3::testing::s37_l1(s.R6))), std::invalid_argument);

  // The section point specializes onto the fibre.
  auto point = section_point(P, C, s.curve("L2", k3::testing::s37_l2(s.R6)));
  for (long t0 : {2L, -3L, 5L, 7L, -11L}) {
    Point q;
    for (const auto& c : point) q.push_back(c.eval(Rational(t0)));
    CHECK(contains_point(s.S37.ideal, q));
    CHECK((evaluate(P.g, q) - Rational(t0) * evaluate(P.f, q)).is_zero());
  }
}

TEST_CASE("first pencil on the smooth surface") {
  const FibrationModel& m = model("s37_first");
  CHECK(m.cubic.degree_chain == std::vector<int>{5, 4, 3});
  const WeierstrassModel& W = m.weierstrass.model;
  CHECK(rpow(W.c4(), 3u) - W.c6() * W.c6() == W.discriminant() * RatFunc(Rational(1728)));
  CHECK(m.table.euler_total() == 24);
  auto rep = match_table(m.table, {E("I2", 1, 4)});
  CHECK_MESSAGE(rep.matched, rep.to_string());

  const Surfaces& s = surfaces();
  std::multiset<std::vector<int>> shapes;
  for (const auto& f : m.table.fibers) {
    if (!(f.type == T("I2"))) continue;
    auto comps = reducible_fiber_components(s.s37_first(), f.place);
    CHECK(comps.complete());
    std::vector<int> degs;
    for (const auto& c : comps.components) degs.push_back(c.degree);
    shapes.insert(degs);
  }
  CHECK(shapes == std::multiset<std::vector<int>>{{1, 4}, {1, 4}, {2, 3}, {2, 3}});

  auto smooth = reducible_fiber_components(s.s37_first(), rational_place(Rational(5)));
  REQUIRE(smooth.components.size() == 1);
  CHECK(smooth.components[0] == FiberComponent{5, 1});
}

TEST_CASE("final pencil on the smooth surface") {
  const FibrationModel& m = model("s37_final");
  CHECK(m.table.euler_total() == 24);
  auto rep = match_table(m.table, {E("IV"), E("I2"), E("I3", 1, 2), E("I3", 4)});
  CHECK_MESSAGE(rep.matched, rep.to_string());
  // Swapping the rational I3 for I2 must be reported.
  auto bad = match_table(m.table, {E("IV"), E("I3"), E("I2", 1, 2), E("I3", 4)});
  CHECK_FALSE(bad.matched);
  CHECK(bad.mismatches.size() >= 2);
}

TEST_CASE("pencil chain on the nodal surface") {
  const FibrationModel& a = model("s29_first");
  CHECK(match_table(a.table, {E("I4"), E("I2")}, MatchMode::Contains).matched);
  CHECK(a.table.euler_total() == 24);

  const FibrationModel& b = model("s29_second");
  CHECK(match_table(b.table, {E("I3", 1, 2), E("I2")}, MatchMode::Contains).matched);
  CHECK(b.table.euler_total() == 24);

  const FibrationModel& c = model("s29_final");
  auto rep = match_table(c.table, {E("I4"), E("I3"), E("I3", 3, 1, -87), E("I2", 3, 1, -116), E("II")});
  CHECK_MESSAGE(rep.matched, rep.to_string());
  CHECK(c.table.euler_total() == 24);
  CHECK_FALSE(match_table(c.table, {E("I4"), E("I3"), E("I2", 3, 1, -87), E("I3", 3, 1, -116), E("II")}).matched);
  CHECK_FALSE(match_table(c.table, {E("I4")}).matched);
  CHECK(match_table(c.table, {E("I4")}, MatchMode::Contains).matched);
}

TEST_CASE("j-invariant does not depend on the projection order") {
  const Surfaces& s = surfaces();
  const FibrationModel& m = model("s29_final");
  RatFunc j = m.weierstrass.model.j_invariant();
  for (int variant = 1; variant < 4; ++variant) {
    auto other = build_model(s.s29_final(), s.curve("L1", k3::testing::s29_l1(s.R5)), variant);
    CHECK(other.weierstrass.model.j_invariant() == j);
  }
}

TEST_CASE("fibre configurations") {
  const Surfaces& s = surfaces();
  QIdeal C1 = s37_c1();
  CHECK(contains_point(C1, parse_point("(0:0:1:0:0:0)")));
  auto iv = detect_configuration(s.S37, {s.curve("C1", C1), s.curve("L1", k3::testing::s37_l1(s.R6)),
                                         s.curve("L2", k3::testing::s37_l2(s.R6))});
  REQUIRE(iv);
  CHECK(*iv == T("IV"));

  auto i3 = detect_configuration(s.S29, {s.curve("L3", k3::testing::s29_l3(s.R5)), s.curve("L4", k3::testing::s29_l4(s.R5)),
                                         s.curve("C3", s29_c3())});
  REQUIRE(i3);
  CHECK(*i3 == T("I3"));

  CHECK_FALSE(detect_configuration(s.S37, {s.curve("L1", k3::testing::s37_l1(s.R6)), s.curve("L3", k3::testing::s37_l3(s.R6))}));
  CHECK(detect_configuration({{0, 2}, {2, 0}}, false) == T("I2"));
  CHECK(detect_configuration({{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}}, false) == T("I4"));
  CHECK_FALSE(detect_configuration({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}, false));
}

TEST_CASE("residual pencils") {
  const Surfaces& s = surfaces();
  auto L1 = k3::testing::s37_l1(s.R6), L2 = k3::testing::s37_l2(s.R6), L3 = k3::testing::s37_l3(s.R6);
  Pencil first = residual_pencil(s.S37, intersect(intersect(L1, L2), L3));
  CHECK(same_pencil(first, s.p6("27*x0 + 2*x5"), s.p6("9*x3 + x5")));

  Pencil fin = residual_pencil(s.S37, intersect(intersect(s37_c1(), L1), L2));
  CHECK(same_pencil(fin, s.p6("-x0 - 2*x1 - x2 + 2*x3"), s.p6("x0 + 2*x1 + x2 - x3")));

  Pencil second = residual_pencil(s.S29, intersect(intersect(k3::testing::s29_l3(s.R5), k3::testing::s29_l4(s.R5)), s29_c3()));
  CHECK(same_pencil(second, s.p5("x0 + 6/5*x2"), s.p5("x1 + x2/3 - x3")));

  // Round trip from a smooth fibre.
  Pencil P = s.s29_first();
  Pencil back = residual_pencil(s.S29, fiber_ideal(P, rational_place(Rational(3))));
  CHECK(same_pencil(back, P.f, P.g));
  CHECK_FALSE(same_pencil(back, s.p5("x0"), s.p5("x3")));

  // A class of positive square gives a larger system.
  CHECK_THROWS_AS(residual_pencil(s.S29, saturate_irrelevant(s.S29.ideal + s.p5("x3"))), std::invalid_argument);
}
