#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace k3 {

inline constexpr int kMaxVars = 24;

/// Exponent vector with room for kMaxVars variables; unused slots stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  std::uint16_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  std::uint16_t& operator[](int i) { return e[static_cast<std::size_t>(i)]; }

  static Monomial var(int i, int power = 1) {
    Monomial m;
    m[i] = static_cast<std::uint16_t>(power);
    return m;
  }

  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  int total_degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  int weighted_degree(const std::vector<int>& w) const {
    int d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * e[i];
    return d;
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  /// True when the two monomials share no variable.
  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] && o.e[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < a.e.size(); ++i) {
      unsigned s = static_cast<unsigned>(a.e[i]) + b.e[i];
      if (s > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
      r.e[i] = static_cast<std::uint16_t>(s);
    }
    return r;
  }
  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
    return r;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  /// Arbitrary total order for use as a map key (not a monomial order).
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : e) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

}  // namespace k3
