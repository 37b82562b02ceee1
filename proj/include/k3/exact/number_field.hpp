#pragma once

#include <memory>
#include <string>

#include "k3/exact/unipoly.hpp"

namespace k3 {

/// ℚ[a]/(m) for a monic irreducible m of degree 1..6.
class NumberField {
public:
  /// Throws std::invalid_argument if m is reducible or the degree is out of range.
  NumberField(const QPoly& minpoly, std::string generator = "a");

  static std::shared_ptr<const NumberField> make(const QPoly& minpoly, std::string generator = "a") {
    return std::make_shared<const NumberField>(minpoly, std::move(generator));
  }

  const QPoly& minpoly() const { return m_; }
  int degree() const { return m_.degree(); }
  const std::string& generator() const { return gen_; }
  /// Discriminant of the defining polynomial modulo rational squares.
  Integer disc_class() const;

  bool same_as(const NumberField& o) const { return m_ == o.m_; }

private:
  QPoly m_;
  std::string gen_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

/// Element of a NumberField. An element with no field attached is a rational constant and
/// combines with elements of any field.
class NFElem {
public:
  NFElem() = default;
  NFElem(long v) : r_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  NFElem(const Rational& v) : r_(v) {}  // NOLINT
  NFElem(NumberFieldPtr field, const QPoly& residue);

  static NFElem generator(const NumberFieldPtr& field) { return NFElem(field, QPoly::x()); }

  const NumberFieldPtr& field() const { return field_; }
  const QPoly& residue() const { return r_; }
  bool is_zero() const { return r_.is_zero(); }
  bool is_rational() const { return r_.degree() <= 0; }
  /// Rational value; throws std::domain_error unless is_rational().
  Rational to_rational() const;

  NFElem& operator+=(const NFElem& o);
  NFElem& operator-=(const NFElem& o);
  NFElem& operator*=(const NFElem& o);
  NFElem& operator/=(const NFElem& o);
  friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
  friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
  friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
  friend NFElem operator/(NFElem a, const NFElem& b) { return a /= b; }
  NFElem operator-() const;
  NFElem inverse() const;

  friend bool operator==(const NFElem& a, const NFElem& b) { return a.r_ == b.r_; }

  std::string to_string() const;

private:
  const NumberFieldPtr& join(const NFElem& o);

  NumberFieldPtr field_;
  QPoly r_;
};

}  // namespace k3
