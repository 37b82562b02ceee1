#pragma once

#include <string>

#include "k3/exact/unipoly.hpp"

namespace k3 {

/// Element of ℚ(t): num/den in lowest terms with den monic.
class RatFunc {
public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(long v) : num_(Rational(v)), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& v) : num_(v), den_(Rational(1)) {}  // NOLINT
  RatFunc(const QPoly& num) : num_(num), den_(Rational(1)) {}  // NOLINT
  /// Throws std::domain_error if den is zero.
  RatFunc(const QPoly& num, const QPoly& den);

  static RatFunc t() { return RatFunc(QPoly::x()); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  RatFunc inverse() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Value at t = a; throws std::domain_error at a pole.
  Rational eval(const Rational& a) const;

  std::string to_string(const std::string& var = "t") const;

private:
  void normalize();

  QPoly num_;
  QPoly den_;
};

}  // namespace k3
