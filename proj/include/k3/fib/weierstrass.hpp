#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3/exact/ratfunc.hpp"
#include "k3/exact/rational.hpp"
#include "k3/exact/unipoly.hpp"

namespace k3 {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over ℚ(t).
struct WeierstrassModel {
  RatFunc a1, a2, a3, a4, a6;

  RatFunc b2() const;
  RatFunc b4() const;
  RatFunc b6() const;
  RatFunc b8() const;
  RatFunc c4() const;
  RatFunc c6() const;
  /// Computed from the b-invariants, independently of c4 and c6.
  RatFunc discriminant() const;
  /// Throws std::domain_error when the discriminant vanishes.
  RatFunc j_invariant() const;
  std::string to_string() const;
};

/// Kodaira symbol in residue characteristic 0.
struct KodairaType {
  enum class Kind { I, II, III, IV, IStar, IVStar, IIIStar, IIStar };
  Kind kind = Kind::I;
  int n = 0;  // index for I_n and I_n*

  int euler() const;
  /// "I0", "I3", "II", "I1*", "IV*", ...
  std::string name() const;
  /// Accepts the names produced by name(); also "In" spelled with underscores ("I_3", "I_0*").
  static KodairaType parse(const std::string& text);
  bool operator==(const KodairaType& o) const { return kind == o.kind && n == o.n; }
  bool operator<(const KodairaType& o) const { return name() < o.name(); }
};

/// Valuation standing in for the valuation of zero.
inline constexpr long kInfiniteValuation = 1L << 30;

/// Characteristic-0 table from the valuations of a minimal model.
/// Throws std::invalid_argument for non-minimal or inconsistent triples.
KodairaType kodaira_type(long v_c4, long v_c6, long v_disc);
/// Whether (v_c4, v_c6, v_disc) can come from c4^3 - c6^2 = 1728 disc.
bool valuations_consistent(long v_c4, long v_c6, long v_disc);

/// A place of ℚ(t): a monic irreducible polynomial or infinity.
struct Place {
  bool infinite = false;
  QPoly poly;

  int degree() const { return infinite ? 1 : poly.degree(); }
  std::string to_string() const;
};

struct KodairaFiber {
  Place place;
  KodairaType type;
  long v_c4 = 0, v_c6 = 0, v_disc = 0;
  /// Squarefree class of the discriminant of the place polynomial (places of degree at least 2;
  /// left empty for I1 places whose discriminant is too large to factor quickly).
  std::optional<Integer> disc_class;

  int residue_degree() const { return place.degree(); }
  /// Euler number summed over the conjugate fibres.
  int euler() const { return type.euler() * residue_degree(); }
  std::string to_string() const;
};

struct FiberTable {
  std::vector<KodairaFiber> fibers;
  int euler_total() const;
  std::string to_string() const;
};

/// Minimalizes place by place and classifies every singular fibre, including t = ∞.
/// Throws std::domain_error when the discriminant vanishes.
FiberTable fiber_table(const WeierstrassModel& W);

/// Globally minimal integral pair (c4, c6) over ℚ[t] for the model.
std::pair<QPoly, QPoly> minimal_c4_c6(const WeierstrassModel& W);

struct ExpectedFiber {
  KodairaType type;
  int residue_degree = 1;
  std::optional<Integer> disc_class;  // compared up to squares
  int count = 1;
};

enum class MatchMode { Exact, Contains };

struct MatchReport {
  bool matched = false;
  std::vector<std::string> mismatches;
  std::string to_string() const;
};

/// Multiset comparison by (type, residue degree, discriminant class). I1 fibres are left out
/// of the comparison unless the expectation lists some.
MatchReport match_table(const FiberTable& actual, const std::vector<ExpectedFiber>& expected,
                        MatchMode mode = MatchMode::Exact);

}  // namespace k3
