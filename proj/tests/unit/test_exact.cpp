#include <doctest.h>

#include <random>

#include "k3/exact/field_traits.hpp"

using namespace k3;

namespace {

QPoly P(const char* s, const char* v = "x") { return parse_qpoly(s, v); }

QPoly random_poly(std::mt19937& rng, int deg) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(d(rng));
  if (c.back().is_zero()) c.back() = Rational(1);
  return QPoly(c);
}

QPoly expand(const std::vector<std::pair<QPoly, unsigned>>& f) {
  QPoly r(Rational(1));
  for (const auto& [q, m] : f) r *= pow(q, m);
  return r;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  Rational a = Rational::parse("-6/4");
  CHECK(a == Rational(-3, 2) );
  CHECK(a.den() == 2);
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational(1) / Rational(0));

  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 200; ++i) {
    Rational x(Integer(d(rng)), Integer(std::abs(d(rng)) + 1));
    Rational y(Integer(d(rng)), Integer(std::abs(d(rng)) + 1));
    CHECK((x + y) - y == x);
    if (!y.is_zero()) CHECK((x * y) / y == x);
  }
}

TEST_CASE("squarefree classes") {
  CHECK(squarefree_class(Rational(18)) == 2);
  CHECK(squarefree_class(Rational(-348)) == -87);
  CHECK(squarefree_class(Rational(-4)) == -1);
  CHECK(squarefree_class(Rational(3, 12)) == 1);
  CHECK_THROWS_AS(squarefree_class(Rational(0)), std::domain_error);

  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(1, 5000);
  for (int i = 0; i < 100; ++i) {
    Rational r(Integer(d(rng) * (i % 2 ? -1 : 1)), Integer(d(rng)));
    Rational s(Integer(d(rng)), Integer(d(rng)));
    CHECK(squarefree_class(r * s * s) == squarefree_class(r));
  }
  // Two large primes force the rho path.
  Integer p("1000000007"), q("998244353");
  CHECK(squarefree_part(Integer(p * p * q)) == q);
}

TEST_CASE("univariate gcd") {
  CHECK(gcd_q(P("x^2 - 1"), P("x - 1")) == P("x - 1"));
  CHECK(gcd_q(P("3*x^2 + 6"), QPoly()) == P("x^2 + 2"));
  CHECK(gcd_q(QPoly(), QPoly()).is_zero());
  CHECK(gcd(P("x^2 - 1"), P("2*x + 2")) == P("x + 1"));
  auto [g, s, t] = xgcd(P("x^3 + x - 1"), P("x"));
  CHECK(g == QPoly(Rational(1)));
  CHECK(s * P("x^3 + x - 1") + t * P("x") == g);

  // High degree and wide coefficients go through the modular path; compare with Euclid.
  std::mt19937 rng(17);
  for (int i = 0; i < 12; ++i) {
    QPoly f = random_poly(rng, 3 + i % 5);
    QPoly big = pow(random_poly(rng, 2), 4u).scaled(Rational(Integer("123456789123456789"), Integer(7)));
    QPoly a = f * random_poly(rng, 9) * big, b = f * random_poly(rng, 7) * (i % 2 ? big : QPoly(Rational(1)));
    QPoly g = gcd_q(a, b);
    CHECK(g.lc().is_one());
    CHECK((a % g).is_zero());
    CHECK((b % g).is_zero());
    auto [eg, s2, t2] = xgcd(a, b);
    CHECK(g == eg.monic());
  }
}

TEST_CASE("discriminants") {
  CHECK(discriminant(P("x^2 + 1")) == Rational(-4));
  CHECK(discriminant(P("x^3 - x")) == Rational(4));
  CHECK(discriminant(P("x^3 + x - 1")) == Rational(-31));
  CHECK(discriminant(P("2*x^2 + 3*x + 1")) == Rational(1));
  CHECK_THROWS(discriminant(P("5")));

  std::mt19937 rng(3);
  for (int i = 0; i < 25; ++i) {
    QPoly p = random_poly(rng, 1 + i % 3), q = random_poly(rng, 1 + i % 2);
    Rational r = resultant(p, q);
    CHECK(discriminant(p * q) == discriminant(p) * discriminant(q) * r * r);
  }
}

TEST_CASE("factorization over Q") {
  auto f = factor(P("t^3 - t", "t"));
  REQUIRE(f.size() == 3);
  CHECK(f[0].first == P("t - 1", "t"));
  CHECK(f[1].first == P("t", "t"));
  CHECK(f[2].first == P("t + 1", "t"));
  CHECK(factor(P("x^2 + 1")).size() == 1);
  CHECK_THROWS_AS(factor(QPoly()), std::domain_error);

  // Swinnerton-Dyer style: irreducible but splits into many factors modulo every prime.
  QPoly sd = P("x^8 - 40*x^6 + 352*x^4 - 960*x^2 + 576");
  auto fs = factor(sd);
  CHECK(fs.size() == 1);

  auto fm = factor(P("(x^2 - 2)^3 * (x + 1/2)^2 * (3*x^3 + x - 7) * (x^4 + 1)"));
  REQUIRE(fm.size() == 4);
  CHECK(fm[0].first == P("x + 1/2"));
  CHECK(fm[0].second == 2);
  CHECK(fm[1].first == P("x^2 - 2"));
  CHECK(fm[1].second == 3);

  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    QPoly a = random_poly(rng, 1 + i % 4), b = random_poly(rng, 2 + i % 3);
    QPoly p = a * b * (i % 3 == 0 ? a : QPoly(Rational(1)));
    auto fac = factor(p);
    CHECK(expand(fac).monic() == p.monic());
    for (const auto& [q, m] : fac) {
      CHECK(q.lc().is_one());
      CHECK(factor(q).size() == 1);
    }
  }
}

TEST_CASE("number fields") {
  auto gi = NumberField::make(P("x^2 + 1"), "i");
  NFElem i = NFElem::generator(gi);
  CHECK(i * i == NFElem(-1));
  CHECK((i + NFElem(0)) == i);
  CHECK(gi->disc_class() == -1);

  auto k = NumberField::make(P("x^3 + x - 1"));
  NFElem a = NFElem::generator(k);
  CHECK(a * (a * a + NFElem(1)) == NFElem(1));
  CHECK((a / (a + NFElem(2))) * (a + NFElem(2)) == a);
  CHECK_THROWS(a / NFElem(0));
  CHECK_THROWS(NumberField(P("x^2 - 1")));
  CHECK_THROWS(NumberField(P("x^7 - 2")));
  CHECK((i * i).to_string() == "-1");
  CHECK((NFElem(2) * i - NFElem(1)).to_string() == "2*i - 1");
}

TEST_CASE("rational functions in t") {
  RatFunc t = RatFunc::t();
  RatFunc a = (t * t - RatFunc(1)) / (t - RatFunc(1));
  CHECK(a == t + RatFunc(1));
  CHECK(a.is_polynomial());
  RatFunc b = RatFunc(1) / (RatFunc(2) * t);
  CHECK(b.den() == P("t", "t"));
  CHECK(b.num() == QPoly(Rational(1, 2)));
  CHECK((b * RatFunc(2) * t) == RatFunc(1));
  CHECK(b.eval(Rational(1, 3)) == Rational(3, 2));
  CHECK_THROWS(b.eval(Rational(0)));
  CHECK((b + b - b - b).is_zero());
}

TEST_CASE("field traits") {
  auto [u, v] = FieldTraits<Rational>::reduction_factors(Rational(6), Rational(4));
  CHECK(u == 2);
  CHECK(v == 3);
  std::vector<Rational> c{Rational(2, 3), Rational(4, 9)};
  FieldTraits<Rational>::make_primitive(c);
  CHECK(c[0] == 3);
  CHECK(c[1] == 2);

  RatFunc t = RatFunc::t();
  std::vector<RatFunc> r{t / RatFunc(2), (t * t) / (t + RatFunc(1))};
  FieldTraits<RatFunc>::make_primitive(r);
  CHECK(r[0] == (t + RatFunc(1)));
  CHECK(r[1] == RatFunc(2) * t);
}
