#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3/fib/weierstrass.hpp"
#include "k3/geom/geometry.hpp"

namespace k3 {

/// Pencil (f : g) on a surface; fibres are the members g - t f = 0 minus the base locus.
struct Pencil {
  ProjScheme surface;
  QMPoly f, g;
  /// Saturated ideal of X ∩ {f = g = 0}.
  QIdeal base;

  std::string to_string() const;
};

/// Throws std::invalid_argument unless f and g are forms of one degree, independent modulo the surface.
Pencil make_pencil(const ProjScheme& X, const QMPoly& f, const QMPoly& g);

/// Pencil of the degree-d forms vanishing on B modulo the surface; the system must have dimension 2.
Pencil pencil_through(const ProjScheme& X, const QIdeal& B, int d);

/// Pencil with F as (the support of) a fibre, built from a residual divisor. When the smallest
/// system through F is already a pencil, F is taken as its fixed part instead.
/// Throws std::invalid_argument if the resulting system does not have dimension 2.
Pencil residual_pencil(const ProjScheme& X, const QIdeal& F);

/// Whether the span of f and g modulo the surface equals that of the pencil.
bool same_pencil(const Pencil& P, const QMPoly& f, const QMPoly& g);

struct GenericFiber {
  TIdeal ideal;  // over ℚ(t), saturated
  int dimension = -1;
  Rational degree;
  std::optional<std::vector<RatFunc>> point;

  const RingPtr& ring() const { return ideal.ring(); }
};

GenericFiber generic_fiber(const Pencil& P);

/// Lifts a ℚ-polynomial to ℚ(t) coefficients in `target`.
TMPoly lift_poly(const QMPoly& p, const RingPtr& target);

/// The ℚ(t)-point where a section curve meets the generic fibre. Throws std::invalid_argument
/// when L lies in a fibre or meets the generic fibre in other than one point.
std::vector<RatFunc> section_point(const Pencil& P, const GenericFiber& C, const CurveOnSurface& L);

struct PlaneCubic {
  TMPoly cubic;  // in a ring of three variables over ℚ(t)
  std::vector<RatFunc> point;
  /// Degrees met on the way down, starting with the input degree.
  std::vector<int> degree_chain;
};

/// Removes linear equations, then projects from the marked point until a plane cubic remains.
/// `variant` selects which coordinate chart is used for each projection.
/// Throws std::invalid_argument for a singular marked point, a degenerate projection, or a
/// curve that is not of degree 3 once planar.
PlaneCubic reduce_to_plane_cubic(const GenericFiber& C, int variant = 0);

/// Data of the birational map from the cubic to the model.
struct NagellMap {
  std::vector<std::vector<RatFunc>> basis;  // columns e_i1, e_i2, Q: (U : V : 1) -> basis * (U, V, 1)
  RatFunc s0;                                // slope of the tangent line at the marked point
  RatFunc c1;                                // X = c1 / (s - s0) * ..., see the model construction
  bool already_weierstrass = false;
};

struct NagellResult {
  WeierstrassModel model;
  NagellMap map;
};

/// Weierstrass model of a plane cubic with a nonsingular rational point.
/// Throws std::invalid_argument for a singular point, a point off the curve, or a singular cubic.
NagellResult nagell(const TMPoly& cubic, const std::vector<RatFunc>& point);

/// The full chain from a pencil with a section to its fibre table.
struct FibrationModel {
  GenericFiber fiber;
  PlaneCubic cubic;
  NagellResult weierstrass;
  FiberTable table;
};

/// Generic fibre, section point, plane cubic, Weierstrass model and fibre table.
/// Throws std::invalid_argument when the section or a reduction step fails.
FibrationModel build_model(const Pencil& P, const CurveOnSurface& section, int variant = 0);

struct FiberComponent {
  int degree = 0;
  int multiplicity = 1;
  bool operator==(const FiberComponent& o) const { return degree == o.degree && multiplicity == o.multiplicity; }
};

struct ComponentsResult {
  std::vector<FiberComponent> components;  // sorted by degree
  Rational fiber_degree;                    // degree of one fibre
  Rational expected_degree;                 // degree of the generic fibre
  bool complete() const;
  std::string to_string() const;
};

/// Ideal of the fibre over a place (all conjugate fibres for a place of higher degree).
QIdeal fiber_ideal(const Pencil& P, const Place& place);

/// Components of the fibre over a place, with degrees over the residue field.
ComponentsResult reducible_fiber_components(const Pencil& P, const Place& place, unsigned seed = 11);

/// Pairwise intersection matrix and a common-point flag for a curve configuration.
std::optional<KodairaType> detect_configuration(const std::vector<std::vector<long>>& pairings, bool common_point);
std::optional<KodairaType> detect_configuration(const ProjScheme& X, const std::vector<CurveOnSurface>& curves);

}  // namespace k3
