#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k3/exact/rational.hpp"

namespace k3 {

/// Dense univariate polynomial over a field K; coefficients stored low degree first,
/// never with a trailing (leading) zero.
template <class K>
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(const K& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) c_.push_back(constant);
  }

  static UniPoly monomial(const K& coeff, int degree) {
    std::vector<K> c(static_cast<std::size_t>(degree) + 1);
    c.back() = coeff;
    return UniPoly(std::move(c));
  }
  static UniPoly x() { return monomial(K(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const K& lc() const { return c_.back(); }
  K coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : K();
  }
  const std::vector<K>& coeffs() const { return c_; }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  UniPoly scaled(const K& s) const {
    if (s.is_zero()) return {};
    UniPoly r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws on division by zero.
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {UniPoly(), *this};
    std::vector<K> r = c_;
    std::vector<K> q(static_cast<std::size_t>(degree() - d.degree() + 1));
    K inv = K(1) / d.lc();
    for (int i = degree(); i >= d.degree(); --i) {
      K f = r[static_cast<std::size_t>(i)] * inv;
      q[static_cast<std::size_t>(i - d.degree())] = f;
      if (f.is_zero()) continue;
      for (int j = 0; j <= d.degree(); ++j)
        r[static_cast<std::size_t>(i - d.degree() + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(d.degree()));
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return a.divrem(b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return a.divrem(b).second; }

  UniPoly monic() const { return is_zero() ? *this : scaled(K(1) / lc()); }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
    return UniPoly(std::move(r));
  }

  K operator()(const K& x) const {
    K acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// p(q(x)).
  UniPoly compose(const UniPoly& q) const {
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + UniPoly(*it);
    return acc;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const K& a = c_[static_cast<std::size_t>(i)];
      if (a.is_zero()) continue;
      std::string s = a.to_string();
      bool neg = !s.empty() && s[0] == '-' && s.find_first_of("+-", 1) == std::string::npos &&
                 s.find('(') == std::string::npos;
      if (neg) s = s.substr(1);
      bool compound = s.find_first_of("+- ") != std::string::npos;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (i == 0) {
        os << (compound ? "(" + s + ")" : s);
        continue;
      }
      if (s != "1") os << (compound ? "(" + s + ")" : s) << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
UniPoly<K> pow(const UniPoly<K>& p, unsigned e) {
  UniPoly<K> r(K(1)), b = p;
  while (e) {
    if (e & 1U) r *= b;
    b *= b;
    e >>= 1U;
  }
  return r;
}

/// Monic gcd (gcd(0, 0) = 0).
template <class K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g monic.
template <class K>
std::tuple<UniPoly<K>, UniPoly<K>, UniPoly<K>> xgcd(const UniPoly<K>& a, const UniPoly<K>& b) {
  UniPoly<K> r0 = a, r1 = b, s0(K(1)), s1, t0, t1(K(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    auto t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  K inv = K(1) / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

using QPoly = UniPoly<Rational>;

/// gcd over Q computed through primitive integer remainder sequences; monic result.
QPoly gcd_q(const QPoly& a, const QPoly& b);

/// Scales p to an integer polynomial with content 1 and positive leading coefficient.
QPoly primitive_part(const QPoly& p);

/// Resultant res(p, q) over Q (Sylvester determinant convention).
Rational resultant(const QPoly& p, const QPoly& q);

/// disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p); throws for constant p.
Rational discriminant(const QPoly& p);

/// Squarefree decomposition (Yun): monic factors f_i with p = lc * prod f_i^i.
std::vector<std::pair<QPoly, unsigned>> squarefree_decomposition(const QPoly& p);

/// Irreducible factorization over Q: monic irreducible factors with multiplicities,
/// sorted by (degree, coefficients). Throws std::domain_error on zero input.
std::vector<std::pair<QPoly, unsigned>> factor(const QPoly& p);

/// Parses a univariate polynomial over Q in the given variable, e.g. "t^3 - 2*t + 1/2".
QPoly parse_qpoly(const std::string& text, const std::string& var = "x");

}  // namespace k3
