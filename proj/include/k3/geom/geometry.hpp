#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/ideal/solve.hpp"

namespace k3 {

/// Rational point in projective coordinates.
using Point = std::vector<Rational>;

std::string point_to_string(const Point& p);
/// Parses "(a : b : ...)" or "a b ..." with rational entries.
Point parse_point(const std::string& text);
/// Scales so that the first nonzero coordinate is 1.
Point normalize_point(Point p);

/// Closed subscheme of (weighted) projective space over ℚ.
struct ProjScheme {
  QIdeal ideal;
  std::string label;

  const RingPtr& ring() const { return ideal.ring(); }
  HilbertData hilbert() const { return dimension_degree(ideal); }
};

/// Curve on a surface, with optional marker points and a note on its field of definition.
struct CurveOnSurface {
  std::string label;
  QIdeal ideal;
  std::vector<Point> markers;
  std::string field = "QQ";
};

/// Map given by forms of equal degree, with its image when computed.
struct RationalMap {
  QIdeal source;
  std::vector<QMPoly> forms;
  RingPtr target;
  std::optional<QIdeal> image;
};

/// Linear change of coordinates taking p to the coordinate point e_j.
struct PointChart {
  int j = 0;
  /// x_i in terms of the moved coordinates y (apply to move an ideal).
  std::vector<QMPoly> to_moved;
  /// y_i in terms of x (apply to move back).
  std::vector<QMPoly> from_moved;
};
PointChart chart_at(const RingPtr& ring, const Point& p);

template <class K>
std::vector<MPoly<K>> substitute_all(const std::vector<MPoly<K>>& ps, const std::vector<MPoly<K>>& images) {
  std::vector<MPoly<K>> out;
  for (const auto& p : ps) out.push_back(p.substitute(images));
  return out;
}

bool contains_point(const QIdeal& I, const Point& p);
/// Evaluates f at p.
Rational evaluate(const QMPoly& f, const Point& p);
/// Ideal of a rational point.
QIdeal point_ideal(const RingPtr& ring, const Point& p);

/// c×c minors of the Jacobian matrix of the given polynomials.
std::vector<QMPoly> jacobian_minors(const std::vector<QMPoly>& gens, int c);

/// X-ideal plus the codim×codim Jacobian minors, saturated by the irrelevant ideal.
QIdeal singular_subscheme(const ProjScheme& X, int codim);

/// Length of the zero-dimensional scheme V(I) at the rational point p.
int multiplicity_at_point(const QIdeal& I, const Point& p);
/// Length at one point of a Galois orbit (total length divided by the orbit size).
Rational multiplicity_at_orbit(const QIdeal& I, const PointOrbit& orbit);

/// Ideal of the tangent cone of X at p, as a cone with vertex p in the same ambient space.
QIdeal tangent_cone(const ProjScheme& X, const Point& p);

/// Projection from p: image lives in the ring without the coordinate x_j of chart_at(p).
/// Throws std::invalid_argument if p is not on X or X is a cone over p.
std::pair<ProjScheme, RationalMap> project_from_point(const ProjScheme& X, const Point& p);

/// Basis of the degree-d forms vanishing on Z, independent modulo the degree-d part of X's ideal.
std::vector<QMPoly> linear_system(const ProjScheme& X, const QIdeal& Z, int d);

/// Image of X under the given forms (target ring y0..yk by default).
QIdeal image_of_map(const QIdeal& X, const std::vector<QMPoly>& forms, const RingPtr& target);

/// Closure of the preimage of the point q under f, away from the base locus of the forms.
QIdeal preimage_of_point(const RationalMap& f, const Point& q);

/// Map by the linear system of degree-d forms through Z. Throws if the system is empty.
std::pair<ProjScheme, RationalMap> map_by_linear_system(const ProjScheme& X, const QIdeal& Z, int d,
                                                        const std::string& target_prefix = "y");

struct BirationalityReport {
  bool birational = false;
  std::vector<Rational> slice_degrees;  // degree of the map measured on each slice
  std::string note;
};
/// Degree of the map on random codimension-dim(X) slices of the image (3 slices, seeded).
BirationalityReport is_birational(const RationalMap& f, unsigned seed = 1);

struct LinesResult {
  bool infinite = false;
  std::vector<CurveOnSurface> lines;  // one entry per Galois orbit, field noted
};
LinesResult find_lines_through_point(const ProjScheme& X, const Point& p);

struct CurveReport {
  bool contained = false;
  int dimension = -1;
  Rational degree;
  std::vector<bool> markers_ok;
  bool ok() const;
  std::string describe() const;
};
CurveReport verify_curve(const ProjScheme& X, const CurveOnSurface& C);

/// Reduced gcd of homogeneous forms in three variables (the reduced curve part of a plane scheme),
/// up to scaling.
QMPoly plane_gcd(const std::vector<QMPoly>& forms);

/// The component of degree e through p of a reduced curve Y, for components whose span is a ℙ^e
/// (lines, conics, rational normal curves). Nullopt when none is found.
std::optional<QIdeal> component_through_point(const QIdeal& Y, const Point& p, int e, unsigned seed = 5);
/// All components of Y of degree e spanning a ℙ^e, found from pairs of hyperplane-section orbits.
std::vector<QIdeal> components_of_degree(const QIdeal& Y, int e, unsigned seed = 5);

struct IntersectionResult {
  std::optional<int> number;
  bool common_component = false;
  bool meets_singular_locus = false;
  std::string note;
};
/// Degree of I_C + I_D; `singular` (if given) is checked against the intersection.
IntersectionResult intersection_number(const ProjScheme& X, const CurveOnSurface& C, const CurveOnSurface& D,
                                       const std::optional<QIdeal>& singular = std::nullopt);

/// Integer combination of named classes with a symmetric pairing table.
class DivisorPairing {
public:
  void set(const std::string& a, const std::string& b, long value);
  /// Throws std::out_of_range on a missing entry.
  long get(const std::string& a, const std::string& b) const;
  long evaluate(const std::map<std::string, long>& e1, const std::map<std::string, long>& e2) const;
  long square(const std::map<std::string, long>& e) const { return evaluate(e, e); }

private:
  std::map<std::pair<std::string, std::string>, long> table_;
};

/// Parses "H - L1 - L2 + 2*C1" into class coefficients.
std::map<std::string, long> parse_divisor(const std::string& text);

}  // namespace k3
