#pragma once

#include <initializer_list>

#include "k3/ideal/ideal.hpp"
#include "k3/poly/parse.hpp"

namespace k3::testing {

inline QIdeal make_ideal(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<QMPoly> g;
  for (auto s : gens) g.push_back(parse_poly<Rational>(s, R));
  return QIdeal(R, g);
}

/// Quadric and cubic cutting out the nodal surface in P^4.
inline QIdeal s29(const RingPtr& R) {
  return make_ideal(R, {"-48*x1^2 + 68*x1*x2 + 3*x2^2 + 20*x0*x3 + 232*x1*x3 - 42*x2*x3 - 181*x3^2 - 3*x4^2",
                        "320*x0*x1^2 + 2496*x1^3 + 880*x0*x1*x2 - 6560*x1^2*x2 - 20*x0*x2^2 + 3628*x1*x2^2 + 114*x2^3 "
                        "- 17584*x1^2*x3 + 20124*x1*x2*x3 - 2441*x2^2*x3 + 29244*x1*x3^2 - 13032*x2*x3^2 - 14117*x3^3 "
                        "+ 20*x0*x4^2 + 156*x1*x4^2 - 114*x2*x4^2 - 195*x3*x4^2"});
}

/// Three quadrics cutting out the smooth surface in P^5.
inline QIdeal s37(const RingPtr& R) {
  return make_ideal(R, {"-x3*x4 + x0*x5 + 2*x1*x5 + x2*x5",
                        "-243*x1^2 + 243*x0*x2 + 162*x1*x3 - 324*x2*x3 + 3*x4^2 - 8*x4*x5 + 4*x5^2",
                        "2187*x0^2 + 8748*x0*x1 - 5184*x0*x3 - 6480*x1*x3 - 1296*x2*x3 + 2592*x3^2 + 40*x4*x5 - 76*x5^2"});
}

/// Lines on the nodal surface: L1, L2 through the node; L3, L4 meet at (1:1:-1:1:0).
inline QIdeal s29_l1(const RingPtr& R) { return make_ideal(R, {"x1", "x3", "x2 + x4"}); }
inline QIdeal s29_l2(const RingPtr& R) { return make_ideal(R, {"x1", "x3", "x2 - x4"}); }
inline QIdeal s29_l3(const RingPtr& R) { return make_ideal(R, {"x0 + x2", "x1 - x3", "x4 - x0 + x1"}); }
inline QIdeal s29_l4(const RingPtr& R) { return make_ideal(R, {"x0 + x2", "x1 - x3", "x0 + x4 - x1"}); }

inline QIdeal s37_l1(const RingPtr& R) { return make_ideal(R, {"x0", "9*x1 + x4", "x3", "x5"}); }
inline QIdeal s37_l2(const RingPtr& R) { return make_ideal(R, {"x0", "9*x1 - x4", "x3", "x5"}); }
inline QIdeal s37_l3(const RingPtr& R) {
  return make_ideal(R, {"27*x0 + 2*x5", "27*x1 - 3*x4 + 8*x5", "3*x2 + x4 - 2*x5", "9*x3 + x5"});
}

}  // namespace k3::testing
