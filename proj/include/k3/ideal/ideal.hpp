#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "k3/ideal/groebner.hpp"

namespace k3 {

/// Ideal given by generators, with Gröbner bases cached per monomial order.
/// Copies share the cache.
template <class K>
class Ideal {
public:
  using Poly = MPoly<K>;
  using Basis = std::shared_ptr<const GroebnerBasis<K>>;

  Ideal() = default;
  /// Zero generators are dropped.
  Ideal(RingPtr ring, std::vector<Poly> gens);

  static Ideal unit(RingPtr ring) { return Ideal(ring, {Poly(ring, K(1))}); }
  /// The ideal generated by all variables.
  static Ideal irrelevant(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }

  Basis groebner(const MonomialOrder& order) const;
  /// Basis for the weighted graded reverse lexicographic order.
  Basis groebner() const;

  bool is_unit() const { return groebner()->is_unit(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_homogeneous() const;
  bool contains(const Poly& f) const { return groebner()->reduces_to_zero(f); }
  bool contains(const Ideal& o) const;
  bool equals(const Ideal& o) const { return contains(o) && o.contains(*this); }

  Ideal operator+(const Ideal& o) const;
  Ideal operator+(const Poly& f) const;
  Ideal operator*(const Ideal& o) const;

  /// Same ideal generated by its reduced grevlex basis.
  Ideal minimalized() const;
  /// Generators of weighted degree exactly d.
  std::vector<Poly> gens_of_degree(int d) const;

  std::string to_string() const;

private:
  struct Cache {
    std::mutex mu;
    std::vector<std::pair<MonomialOrder, Basis>> entries;
  };
  RingPtr ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

using QIdeal = Ideal<Rational>;
using TIdeal = Ideal<RatFunc>;
using NFIdeal = Ideal<NFElem>;

extern template class Ideal<Rational>;
extern template class Ideal<NFElem>;
extern template class Ideal<RatFunc>;

}  // namespace k3
