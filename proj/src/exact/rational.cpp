#include "k3/exact/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace k3 {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    mpz_class n;
    if (n.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    return Rational(n);
  }
  mpz_class n, d;
  if (n.set_str(s.substr(0, slash), 10) != 0 || d.set_str(s.substr(slash + 1), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  return Rational(n, d);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(r);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::hash() const {
  auto h1 = std::hash<std::string>{}(v_.get_num().get_str(16));
  auto h2 = std::hash<std::string>{}(v_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
  return Rational(n, d);
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  mpz_class y = seed % 97 + 2, c = seed % 89 + 1, m = 128, g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const mpz_class& v) {
    mpz_class out = v * v + c;
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
    return out;
  };
  while (g == 1) {
    x = y;
    for (mpz_class i = 0; i < r; ++i) y = f(y);
    mpz_class k = 0;
    while (k < r && g == 1) {
      ys = y;
      mpz_class lim = std::min(m, mpz_class(r - k));
      for (mpz_class i = 0; i < lim; ++i) {
        y = f(y);
        mpz_class diff = ::abs(mpz_class(x - y));
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      mpz_class diff = ::abs(mpz_class(x - ys));
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    std::map<mpz_class, unsigned> half;
    factor_into(s, half);
    for (auto& [p, e] : half) out[p] += 2 * e;
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    mpz_class d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(mpz_class(n / d), out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n) {
  if (n == 0) throw std::domain_error("factor_integer(0)");
  mpz_class m = ::abs(n);
  std::map<mpz_class, unsigned> found;
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++found[mpz_class(p)];
      m /= p;
    }
    if (mpz_class(p) * p > m) break;
  }
  factor_into(m, found);
  return {found.begin(), found.end()};
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw std::domain_error("squarefree part of zero");
  mpz_class out = 1;
  for (auto& [p, e] : factor_integer(n))
    if (e % 2 == 1) out *= p;
  return n < 0 ? mpz_class(-out) : out;
}

Integer squarefree_class(const Rational& r) {
  if (r.is_zero()) throw std::domain_error("squarefree class of zero");
  // r = a/b ~ a*b modulo squares
  return squarefree_part(Integer(r.num() * r.den()));
}

}  // namespace k3
