#include "k3/exact/field_traits.hpp"

namespace k3 {

std::pair<Rational, Rational> FieldTraits<Rational>::reduction_factors(const Rational& a,
                                                                       const Rational& b) {
  if (a.is_integer() && b.is_integer()) {
    Integer g = gcd(a.num(), b.num());
    return {Rational(Integer(b.num() / g)), Rational(Integer(a.num() / g))};
  }
  return {Rational(1), a / b};
}

void FieldTraits<Rational>::make_primitive(std::span<Rational> coeffs) {
  if (coeffs.empty()) return;
  Integer l = 1, g = 0;
  for (const auto& c : coeffs) l = lcm(l, c.den());
  for (const auto& c : coeffs) g = gcd(g, Integer(c.num() * (l / c.den())));
  if (g == 0) return;
  Rational s(l, g);
  if (s.is_one()) return;
  for (auto& c : coeffs) c *= s;
}

void FieldTraits<NFElem>::make_primitive(std::span<NFElem> coeffs) {
  if (coeffs.empty() || coeffs.front().is_zero()) return;
  NFElem inv = coeffs.front().inverse();
  if (inv == NFElem(1)) return;
  for (auto& c : coeffs) c *= inv;
}

std::pair<RatFunc, RatFunc> FieldTraits<RatFunc>::reduction_factors(const RatFunc& a,
                                                                    const RatFunc& b) {
  if (a.is_polynomial() && b.is_polynomial()) {
    QPoly g = gcd_q(a.num(), b.num());
    return {RatFunc(b.num() / g), RatFunc(a.num() / g)};
  }
  return {RatFunc(1), a / b};
}

void FieldTraits<RatFunc>::make_primitive(std::span<RatFunc> coeffs) {
  if (coeffs.empty()) return;
  QPoly l(Rational(1));
  for (const auto& c : coeffs)
    if (c.den().degree() > 0) l = (l * c.den()) / gcd_q(l, c.den());
  std::vector<QPoly> nums;
  nums.reserve(coeffs.size());
  QPoly g;
  for (const auto& c : coeffs) {
    nums.push_back(l.degree() > 0 ? c.num() * (l / c.den()) : c.num());
    if (g.degree() != 0) g = gcd_q(g, nums.back());
  }
  // Integer content across all coefficient polynomials.
  Integer dl = 1, ng = 0;
  for (auto& n : nums) {
    if (g.degree() > 0) n = n / g;
    for (const auto& c : n.coeffs()) dl = lcm(dl, c.den());
  }
  for (const auto& n : nums)
    for (const auto& c : n.coeffs()) ng = gcd(ng, Integer(c.num() * (dl / c.den())));
  Rational s(dl, ng == 0 ? Integer(1) : ng);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = RatFunc(nums[i].scaled(s));
}

}  // namespace k3
