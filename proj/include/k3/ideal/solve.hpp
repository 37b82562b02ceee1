#pragma once

#include <string>
#include <vector>

#include "k3/ideal/ops.hpp"

namespace k3 {

/// One Galois orbit of points of a zero-dimensional projective scheme over ℚ.
/// The residue field is ℚ[a]/(minpoly); coordinates are given when its degree is at most 6,
/// scaled so that the first nonzero coordinate is 1.
struct PointOrbit {
  QPoly minpoly;
  NumberFieldPtr field;
  std::vector<NFElem> coords;
  /// Homogeneous ideal over ℚ of the whole orbit (saturated, radical).
  QIdeal ideal;

  int degree() const { return minpoly.degree(); }
  bool is_rational() const { return minpoly.degree() == 1; }
  bool has_coords() const { return !coords.empty(); }
  /// Rational coordinates; throws unless is_rational().
  std::vector<Rational> rational_coords() const;
  std::string to_string() const;
};

/// Points of the zero-dimensional projective scheme V(I) grouped into Galois orbits
/// (the radical is taken first). Orbits are sorted by degree, then by defining polynomial.
std::vector<PointOrbit> solve_points(const QIdeal& I, unsigned seed = 7);

/// The unique point of a degree-1 projective scheme over K, scaled so that the first nonzero
/// coordinate is 1. Throws std::invalid_argument if V(I) is not a single reduced point.
template <class K>
std::vector<K> single_point(const Ideal<K>& I);

extern template std::vector<Rational> single_point(const Ideal<Rational>&);
extern template std::vector<NFElem> single_point(const Ideal<NFElem>&);
extern template std::vector<RatFunc> single_point(const Ideal<RatFunc>&);

}  // namespace k3
