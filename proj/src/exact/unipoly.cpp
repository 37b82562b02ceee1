#include "k3/exact/unipoly.hpp"

#include <cctype>

namespace k3 {

QPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer l = 1, g = 0;
  for (const auto& c : p.coeffs()) l = lcm(l, c.den());
  for (const auto& c : p.coeffs()) g = gcd(g, Integer(c.num() * (l / c.den())));
  Rational s(l, g);
  if (p.lc().sign() < 0) s = -s;
  return p.scaled(s);
}

Rational resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rational(0);
  int m = a.degree(), n = b.degree();
  if (n == 0) return pow(b.lc(), static_cast<unsigned>(m));
  if (m == 0) return pow(a.lc(), static_cast<unsigned>(n));
  QPoly r = a % b;
  if (r.is_zero()) return Rational(0);
  Rational f = pow(b.lc(), static_cast<unsigned>(m - r.degree()));
  if ((m * n) % 2 != 0) f = -f;
  return f * resultant(b, r);
}

Rational discriminant(const QPoly& p) {
  if (p.degree() < 1) throw std::domain_error("discriminant of a constant");
  int n = p.degree();
  Rational r = resultant(p, p.derivative()) / p.lc();
  if ((n * (n - 1) / 2) % 2 != 0) r = -r;
  return r;
}

std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& p) {
  std::vector<std::pair<QPoly, unsigned>> out;
  if (p.degree() < 1) return out;
  QPoly f = p.monic();
  QPoly d = f.derivative();
  QPoly a = gcd_q(f, d);
  QPoly b = f / a;
  QPoly c = d / a;
  QPoly e = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    QPoly g = gcd_q(b, e);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b / g;
    c = e / g;
    e = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

class QPolyParser {
public:
  QPolyParser(const std::string& s, const std::string& var) : s_(s), var_(var) {}

  QPoly parse() {
    QPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  QPoly expr() {
    QPoly r;
    bool neg = eat('-');
    if (!neg) eat('+');
    r = term();
    if (neg) r = -r;
    while (true) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  QPoly term() {
    QPoly r = power();
    while (true) {
      if (eat('*')) {
        r *= power();
      } else if (eat('/')) {
        QPoly d = power();
        if (d.degree() != 0) fail("division by a non-constant");
        r = r.scaled(d.lc().inverse());
      } else {
        return r;
      }
    }
  }
  QPoly power() {
    QPoly b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = pow(b, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return b;
  }
  QPoly atom() {
    skip();
    if (eat('(')) {
      QPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QPoly(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (s_.compare(pos_, var_.size(), var_) == 0) {
      pos_ += var_.size();
      return QPoly::x();
    }
    if (eat('-')) return -atom();
    fail("unexpected token");
  }

  const std::string& s_;
  const std::string& var_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_qpoly(const std::string& text, const std::string& var) {
  return QPolyParser(text, var).parse();
}

}  // namespace k3
