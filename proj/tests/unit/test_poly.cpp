#include <doctest.h>

#include <random>

#include "k3/poly/order.hpp"
#include "k3/poly/parse.hpp"

using namespace k3;

namespace {

template <class K>
MPoly<K> random_poly(std::mt19937& rng, const RingPtr& ring, int terms, int maxdeg, K (*coef)(std::mt19937&)) {
  std::uniform_int_distribution<int> e(0, maxdeg);
  std::vector<std::pair<Monomial, K>> t;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (int v = 0; v < ring->nvars(); ++v) m[v] = static_cast<std::uint16_t>(e(rng) % (maxdeg + 1));
    t.emplace_back(m, coef(rng));
  }
  return MPoly<K>::from_terms(ring, t);
}

Rational rand_q(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-30, 30), n(1, 7);
  return Rational(Integer(d(rng)), Integer(n(rng)));
}

RatFunc rand_t(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  QPoly num({Rational(d(rng)), Rational(d(rng))});
  QPoly den({Rational(d(rng) == 0 ? 1 : 2), Rational(d(rng) % 2)});
  if (den.is_zero()) den = QPoly(Rational(1));
  return RatFunc(num, den);
}

Monomial random_monomial(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> e(0, 4);
  Monomial m;
  for (int v = 0; v < n; ++v) m[v] = static_cast<std::uint16_t>(e(rng));
  return m;
}

}  // namespace

TEST_CASE("parse and print") {
  auto R = PolyRing::projective(5);
  auto p = parse_poly<Rational>("-48*x1^2 + 68*x1*x2", R);
  CHECK(p.nterms() == 2);
  CHECK(p.to_string() == "-48*x1^2 + 68*x1*x2");
  CHECK(parse_poly<Rational>("0", R).is_zero());
  CHECK(parse_poly<Rational>("(x0+x1)^2 - x0^2 - 2*x0*x1 - x1^2", R).is_zero());
  CHECK(parse_poly<Rational>("x0/2 - 3/4*x1", R).to_string() == "1/2*x0 - 3/4*x1");
  CHECK(parse_poly<Rational>("-(x0 - 1)", R).to_string() == "-x0 + 1");

  try {
    parse_poly<Rational>("x0 + y", R);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_poly<Rational>("x0 +* x1", R), ParseError);
  CHECK_THROWS_AS(parse_poly<Rational>("x0 / x1", R), ParseError);
  CHECK_THROWS_AS(parse_poly<Rational>("(x0", R), ParseError);
  CHECK_THROWS_AS(parse_poly<Rational>("x0 / 0", R), ParseError);

  auto T = PolyRing::projective(3, "x", FieldDesc::function_field("t"));
  auto q = parse_poly<RatFunc>("(t^2 - 1)/(t + 1)*x0 - t*x1 + x2/t", T);
  CHECK(q.coeffs()[0] == RatFunc::t() - RatFunc(1));
  CHECK(parse_poly<RatFunc>(q.to_string(), T) == q);

  auto gi = NumberField::make(parse_qpoly("x^2 + 1"), "i");
  auto N = PolyRing::projective(2, "x", FieldDesc::number(gi));
  auto l = parse_poly<NFElem>("x0^2 + (i*x1)^2", N);
  CHECK(l.to_string() == "x0^2 - x1^2");
  CHECK(parse_poly<NFElem>("(2*i - 1)*x0", N).to_string() == "(2*i - 1)*x0");
}

TEST_CASE("parse/print round trip on random polynomials") {
  std::mt19937 rng(42);
  auto R = PolyRing::projective(4);
  for (int i = 0; i < 1000; ++i) {
    auto p = random_poly<Rational>(rng, R, 1 + i % 7, 3, rand_q);
    CHECK(parse_poly<Rational>(p.to_string(), R) == p);
  }
  auto T = PolyRing::projective(3, "x", FieldDesc::function_field());
  for (int i = 0; i < 100; ++i) {
    auto p = random_poly<RatFunc>(rng, T, 1 + i % 4, 2, rand_t);
    CHECK(parse_poly<RatFunc>(p.to_string(), T) == p);
  }
}

TEST_CASE("ring axioms") {
  std::mt19937 rng(9);
  auto R = PolyRing::projective(3);
  for (int i = 0; i < 50; ++i) {
    auto a = random_poly<Rational>(rng, R, 4, 2, rand_q);
    auto b = random_poly<Rational>(rng, R, 4, 2, rand_q);
    auto c = random_poly<Rational>(rng, R, 3, 2, rand_q);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("weighted degrees") {
  auto W = PolyRing::make({"E2", "phi2", "phi3", "psi3", "phi6"}, {2, 2, 3, 3, 6});
  CHECK(parse_poly<Rational>("E2*phi2^2", W).weighted_degree() == 6);
  CHECK(parse_poly<Rational>("E2*phi2^2 + 4*phi2^3 - phi3^2 + 4*phi3*psi3", W).weighted_degree() == 6);
  CHECK(parse_poly<Rational>("phi6", W).weighted_degree() == 6);
  auto R = PolyRing::make({"x0", "x1"});
  CHECK_FALSE(parse_poly<Rational>("x0 + x1^2", R).weighted_degree().has_value());
  CHECK_THROWS(QMPoly(R).weighted_degree());

  CHECK(monomials_of_weighted_degree(*W, 6).size() == 8);
  auto m2 = monomials_of_weighted_degree(*R, 2);
  REQUIRE(m2.size() == 3);
  CHECK(monomial_to_string(m2[0], *R) == "x0^2");
  CHECK(monomial_to_string(m2[1], *R) == "x0*x1");
  CHECK(monomial_to_string(m2[2], *R) == "x1^2");
  CHECK(monomials_of_weighted_degree(*W, 0).size() == 1);

  std::mt19937 rng(1);
  auto S = PolyRing::projective(4);
  for (int i = 0; i < 20; ++i) {
    auto a = random_poly<Rational>(rng, S, 3, 3, rand_q).homogeneous_part(3);
    auto b = random_poly<Rational>(rng, S, 3, 2, rand_q).homogeneous_part(2);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a * b).weighted_degree() == 5);
  }
}

TEST_CASE("substitution") {
  auto R = PolyRing::make({"x", "y"});
  auto f = parse_poly<Rational>("x*y + y", R);
  auto x = QMPoly::var(R, 0), y = QMPoly::var(R, 1);
  CHECK(f.substitute({x, y}) == f);
  CHECK(f.substitute({QMPoly(R), y}) == y);

  auto S = PolyRing::projective(5);
  auto T = S->with_field(FieldDesc::function_field());
  auto g = parse_poly<Rational>("x2^2 - x3*x4", S);
  auto gt = map_coeffs<RatFunc>(g, T, [](const Rational& c) { return RatFunc(c); });
  std::vector<TMPoly> images;
  for (int i = 0; i < 5; ++i) images.push_back(TMPoly::var(T, i));
  images[2] = parse_poly<RatFunc>("t*x3", T);
  CHECK(gt.substitute(images).to_string() == "t^2*x3^2 - x3*x4");
}

TEST_CASE("monomial orders") {
  auto R = PolyRing::projective(5);
  std::mt19937 rng(77);
  std::vector<MonomialOrder> orders{MonomialOrder::grevlex(*R), MonomialOrder::lex(5),
                                    MonomialOrder::elimination(*R, {false, true, false, true, false})};
  for (const auto& o : orders) {
    for (int i = 0; i < 300; ++i) {
      Monomial a = random_monomial(rng, 5), b = random_monomial(rng, 5), c = random_monomial(rng, 5);
      CHECK(o.cmp(a, b) == -o.cmp(b, a));
      if (o.cmp(a, b) > 0) CHECK(o.cmp(a * c, b * c) > 0);
      if (!c.is_one()) CHECK(o.cmp(a * c, a) > 0);
    }
  }
  // Block order: a leading monomial in the eliminated block forces every term to involve it.
  const auto& elim = orders[2];
  for (int i = 0; i < 200; ++i) {
    std::vector<Monomial> ms;
    for (int k = 0; k < 4; ++k) ms.push_back(random_monomial(rng, 5));
    Monomial lead = ms[0];
    for (const auto& m : ms)
      if (elim.cmp(m, lead) > 0) lead = m;
    if (lead[1] == 0 && lead[3] == 0)
      for (const auto& m : ms) CHECK((m[1] == 0 && m[3] == 0));
  }
}
