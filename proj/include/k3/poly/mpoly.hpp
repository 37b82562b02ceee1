#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "k3/exact/field_traits.hpp"
#include "k3/poly/monomial.hpp"
#include "k3/poly/ring.hpp"

namespace k3 {

/// Canonical term order of stored polynomials: weighted degree, then reverse lex.
inline int canonical_cmp(const PolyRing& r, const Monomial& a, const Monomial& b) {
  int da = a.weighted_degree(r.weights()), db = b.weighted_degree(r.weights());
  if (da != db) return da > db ? 1 : -1;
  for (int i = r.nvars() - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

inline std::string coeff_to_string(const Rational& c, const FieldDesc&) { return c.to_string(); }
inline std::string coeff_to_string(const NFElem& c, const FieldDesc&) { return c.to_string(); }
inline std::string coeff_to_string(const RatFunc& c, const FieldDesc& f) { return c.to_string(f.param); }

std::string monomial_to_string(const Monomial& m, const PolyRing& ring);

/// Sparse multivariate polynomial over K, terms kept in canonical descending order.
template <class K>
class MPoly {
public:
  MPoly() = default;
  explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}
  MPoly(RingPtr ring, const K& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) {
      mons_.emplace_back();
      coeffs_.push_back(c);
    }
  }

  static MPoly var(RingPtr ring, int i, int power = 1) {
    return term(std::move(ring), K(1), Monomial::var(i, power));
  }
  static MPoly term(RingPtr ring, const K& c, const Monomial& m) {
    MPoly p(std::move(ring));
    if (!c.is_zero()) {
      p.mons_.push_back(m);
      p.coeffs_.push_back(c);
    }
    return p;
  }
  /// Sorts, merges equal monomials and drops zeros.
  static MPoly from_terms(RingPtr ring, std::vector<std::pair<Monomial, K>> terms) {
    MPoly p(std::move(ring));
    const PolyRing& r = *p.ring_;
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return canonical_cmp(r, a.first, b.first) > 0; });
    for (auto& [m, c] : terms) {
      if (!p.mons_.empty() && p.mons_.back() == m) {
        p.coeffs_.back() += c;
      } else {
        if (!p.coeffs_.empty() && p.coeffs_.back().is_zero()) {
          p.mons_.pop_back();
          p.coeffs_.pop_back();
        }
        p.mons_.push_back(m);
        p.coeffs_.push_back(std::move(c));
      }
    }
    if (!p.coeffs_.empty() && p.coeffs_.back().is_zero()) {
      p.mons_.pop_back();
      p.coeffs_.pop_back();
    }
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t nterms() const { return mons_.size(); }
  const std::vector<Monomial>& monomials() const { return mons_; }
  const std::vector<K>& coeffs() const { return coeffs_; }
  std::span<K> coeffs_mut() { return coeffs_; }
  bool is_zero() const { return mons_.empty(); }
  bool is_constant() const { return mons_.empty() || (mons_.size() == 1 && mons_[0].is_one()); }
  /// Leading monomial/coefficient in the canonical order.
  const Monomial& lm() const { return mons_.front(); }
  const K& lc() const { return coeffs_.front(); }
  K constant_coeff() const {
    if (!mons_.empty() && mons_.back().is_one()) return coeffs_.back();
    return K();
  }
  K coeff(const Monomial& m) const {
    for (std::size_t i = 0; i < mons_.size(); ++i)
      if (mons_[i] == m) return coeffs_[i];
    return K();
  }

  MPoly operator+(const MPoly& o) const { return merge(o, false); }
  MPoly operator-(const MPoly& o) const { return merge(o, true); }
  MPoly& operator+=(const MPoly& o) { return *this = merge(o, false); }
  MPoly& operator-=(const MPoly& o) { return *this = merge(o, true); }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    const RingPtr& r = ring_ ? ring_ : o.ring_;
    if (is_zero() || o.is_zero()) return MPoly(r);
    if (o.is_constant()) return scaled(o.coeffs_[0]);
    if (is_constant()) return o.scaled(coeffs_[0]);
    std::unordered_map<Monomial, K, MonomialHash> acc;
    acc.reserve(mons_.size() * o.mons_.size());
    for (std::size_t i = 0; i < mons_.size(); ++i)
      for (std::size_t j = 0; j < o.mons_.size(); ++j) acc[mons_[i] * o.mons_[j]] += coeffs_[i] * o.coeffs_[j];
    std::vector<std::pair<Monomial, K>> terms(acc.begin(), acc.end());
    return from_terms(r, std::move(terms));
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(const K& c) const {
    if (c.is_zero()) return MPoly(ring_);
    MPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }
  MPoly times_monomial(const Monomial& m) const {
    MPoly r = *this;
    for (auto& x : r.mons_) x = x * m;
    return r;
  }
  /// Divides by the leading coefficient.
  MPoly monic() const { return is_zero() ? *this : scaled(K(1) / lc()); }
  /// Canonical small scalar multiple (see FieldTraits::make_primitive).
  MPoly primitive() const {
    MPoly r = *this;
    FieldTraits<K>::make_primitive(r.coeffs_);
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.mons_ == b.mons_ && a.coeffs_ == b.coeffs_;
  }

  /// Common weighted degree of all terms, or nullopt if inhomogeneous. Throws on zero.
  std::optional<int> weighted_degree() const {
    if (is_zero()) throw std::invalid_argument("weighted degree of the zero polynomial");
    int d = mons_.front().weighted_degree(ring_->weights());
    for (const auto& m : mons_)
      if (m.weighted_degree(ring_->weights()) != d) return std::nullopt;
    return d;
  }
  bool is_homogeneous() const { return is_zero() || weighted_degree().has_value(); }
  /// Largest weighted degree of a term (-1 for zero).
  int max_degree() const { return is_zero() ? -1 : mons_.front().weighted_degree(ring_->weights()); }
  MPoly homogeneous_part(int d) const {
    MPoly r(ring_);
    for (std::size_t i = 0; i < mons_.size(); ++i)
      if (mons_[i].weighted_degree(ring_->weights()) == d) {
        r.mons_.push_back(mons_[i]);
        r.coeffs_.push_back(coeffs_[i]);
      }
    return r;
  }
  int degree_in(int var) const {
    int d = is_zero() ? -1 : 0;
    for (const auto& m : mons_) d = std::max<int>(d, m[var]);
    return d;
  }
  bool involves(int var) const {
    for (const auto& m : mons_)
      if (m[var]) return true;
    return false;
  }

  MPoly derivative(int var) const {
    std::vector<std::pair<Monomial, K>> t;
    for (std::size_t i = 0; i < mons_.size(); ++i) {
      int e = mons_[i][var];
      if (!e) continue;
      Monomial m = mons_[i];
      m[var] = static_cast<std::uint16_t>(e - 1);
      t.emplace_back(m, coeffs_[i] * K(static_cast<long>(e)));
    }
    return from_terms(ring_, std::move(t));
  }

  /// Ring homomorphism x_i -> images[i]; images share one target ring.
  MPoly substitute(const std::vector<MPoly>& images) const {
    if (static_cast<int>(images.size()) != ring_->nvars())
      throw std::invalid_argument("substitution arity mismatch");
    if (images.empty()) return *this;
    RingPtr target = images[0].ring_;
    for (const auto& im : images)
      if (!(*im.ring_ == *target)) throw std::invalid_argument("substitution images in different rings");
    std::vector<std::vector<MPoly>> powers(images.size());
    auto power = [&](std::size_t v, int e) -> const MPoly& {
      auto& pv = powers[v];
      if (pv.empty()) pv.push_back(MPoly(target, K(1)));
      while (static_cast<int>(pv.size()) <= e) pv.push_back(pv.back() * images[v]);
      return pv[static_cast<std::size_t>(e)];
    };
    std::unordered_map<Monomial, K, MonomialHash> acc;
    for (std::size_t i = 0; i < mons_.size(); ++i) {
      MPoly t(target, coeffs_[i]);
      for (int v = 0; v < ring_->nvars(); ++v)
        if (mons_[i][v]) t = t * power(static_cast<std::size_t>(v), mons_[i][v]);
      for (std::size_t j = 0; j < t.mons_.size(); ++j) acc[t.mons_[j]] += t.coeffs_[j];
    }
    std::vector<std::pair<Monomial, K>> terms(acc.begin(), acc.end());
    return from_terms(target, std::move(terms));
  }

  /// Same polynomial viewed in another ring with at least as many variables (indices kept).
  MPoly in_ring(RingPtr target) const {
    if (target->nvars() < ring_->nvars()) {
      for (const auto& m : mons_)
        for (int v = target->nvars(); v < ring_->nvars(); ++v)
          if (m[v]) throw std::invalid_argument("polynomial uses variables missing from target ring");
    }
    std::vector<std::pair<Monomial, K>> t;
    for (std::size_t i = 0; i < mons_.size(); ++i) t.emplace_back(mons_[i], coeffs_[i]);
    return from_terms(std::move(target), std::move(t));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < mons_.size(); ++i) {
      std::string s = coeff_to_string(coeffs_[i], ring_->field());
      bool neg = false;
      bool compound = s.find(' ') != std::string::npos;
      if (!compound && !s.empty() && s[0] == '-') {
        neg = true;
        s = s.substr(1);
      }
      if (compound) s = "(" + s + ")";
      if (i == 0) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      if (mons_[i].is_one()) {
        os << s;
      } else {
        if (s != "1") os << s << "*";
        os << monomial_to_string(mons_[i], *ring_);
      }
    }
    return os.str();
  }

private:
  MPoly merge(const MPoly& o, bool subtract) const {
    const RingPtr& r = ring_ ? ring_ : o.ring_;
    MPoly out(r);
    out.mons_.reserve(mons_.size() + o.mons_.size());
    out.coeffs_.reserve(mons_.size() + o.mons_.size());
    std::size_t i = 0, j = 0;
    while (i < mons_.size() || j < o.mons_.size()) {
      int c = i == mons_.size() ? -1 : (j == o.mons_.size() ? 1 : canonical_cmp(*r, mons_[i], o.mons_[j]));
      if (c > 0) {
        out.mons_.push_back(mons_[i]);
        out.coeffs_.push_back(coeffs_[i++]);
      } else if (c < 0) {
        out.mons_.push_back(o.mons_[j]);
        out.coeffs_.push_back(subtract ? -o.coeffs_[j] : o.coeffs_[j]);
        ++j;
      } else {
        K s = subtract ? coeffs_[i] - o.coeffs_[j] : coeffs_[i] + o.coeffs_[j];
        if (!s.is_zero()) {
          out.mons_.push_back(mons_[i]);
          out.coeffs_.push_back(std::move(s));
        }
        ++i;
        ++j;
      }
    }
    return out;
  }

  RingPtr ring_;
  std::vector<Monomial> mons_;
  std::vector<K> coeffs_;
};

template <class K>
MPoly<K> pow(const MPoly<K>& p, unsigned e) {
  MPoly<K> r(p.ring(), K(1)), b = p;
  while (e) {
    if (e & 1U) r *= b;
    e >>= 1U;
    if (e) b *= b;
  }
  return r;
}

/// Coefficient-wise map into another field; `target` must have the same number of variables.
template <class K2, class K1, class F>
MPoly<K2> map_coeffs(const MPoly<K1>& p, RingPtr target, F&& f) {
  std::vector<std::pair<Monomial, K2>> t;
  for (std::size_t i = 0; i < p.nterms(); ++i) t.emplace_back(p.monomials()[i], f(p.coeffs()[i]));
  return MPoly<K2>::from_terms(std::move(target), std::move(t));
}

/// All monomials of weighted degree d, in descending canonical order.
std::vector<Monomial> monomials_of_weighted_degree(const PolyRing& ring, int d);

using QMPoly = MPoly<Rational>;
using NFMPoly = MPoly<NFElem>;
using TMPoly = MPoly<RatFunc>;

}  // namespace k3
