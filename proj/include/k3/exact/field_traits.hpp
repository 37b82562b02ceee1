#pragma once

#include <span>
#include <string>
#include <utility>

#include "k3/exact/number_field.hpp"
#include "k3/exact/ratfunc.hpp"

namespace k3 {

/// Coefficient-field hooks used by the polynomial and ideal layers.
///
/// reduction_factors(a, b) returns (u, v) with u*a == v*b and u != 0, chosen so that u*f - v*m*g
/// stays as small as possible. make_primitive rescales a coefficient vector by a nonzero field
/// element into a canonical small representative (used between reduction steps).
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static std::pair<Rational, Rational> reduction_factors(const Rational& a, const Rational& b);
  static void make_primitive(std::span<Rational> coeffs);
  static Rational from_rational(const Rational& r) { return r; }
  static const char* name() { return "QQ"; }
};

template <>
struct FieldTraits<NFElem> {
  static std::pair<NFElem, NFElem> reduction_factors(const NFElem& a, const NFElem& b) {
    return {NFElem(1), a / b};
  }
  static void make_primitive(std::span<NFElem> coeffs);
  static NFElem from_rational(const Rational& r) { return NFElem(r); }
  static const char* name() { return "number field"; }
};

template <>
struct FieldTraits<RatFunc> {
  static std::pair<RatFunc, RatFunc> reduction_factors(const RatFunc& a, const RatFunc& b);
  /// Clears denominators, then removes the ℚ[t]-content and the integer content.
  static void make_primitive(std::span<RatFunc> coeffs);
  static RatFunc from_rational(const Rational& r) { return RatFunc(r); }
  static const char* name() { return "QQ(t)"; }
};

}  // namespace k3
