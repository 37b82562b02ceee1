#pragma once

#include <atomic>
#include <memory>
#include <vector>

#include "k3/poly/mpoly.hpp"
#include "k3/poly/order.hpp"

namespace k3 {

/// Polynomial with terms sorted descending in an explicit monomial order.
template <class K>
struct OrderedPoly {
  std::vector<Monomial> mons;
  std::vector<K> coeffs;
  int sugar = 0;

  bool is_zero() const { return mons.empty(); }
  const Monomial& lm() const { return mons.front(); }
  const K& lc() const { return coeffs.front(); }
  std::size_t size() const { return mons.size(); }
};

/// Thrown when a computation observes its cancellation flag.
struct Cancelled : std::runtime_error {
  Cancelled() : std::runtime_error("computation cancelled") {}
};

struct GroebnerOptions {
  /// Polled between reduction steps; set to abort with Cancelled.
  const std::atomic<bool>* cancel = nullptr;
};

/// Cancellation flag consulted by every Gröbner computation on the calling thread
/// (in addition to GroebnerOptions::cancel). Restores the previous flag on destruction.
class CancelScope {
public:
  explicit CancelScope(const std::atomic<bool>* flag);
  ~CancelScope();
  CancelScope(const CancelScope&) = delete;
  CancelScope& operator=(const CancelScope&) = delete;
  /// Throws Cancelled if the current thread's flag is set.
  static void poll();

private:
  const std::atomic<bool>* previous_;
};

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Gröbner basis of an ideal for a fixed order. Elements are monic and sorted by
/// leading monomial, ascending.
template <class K>
class GroebnerBasis {
public:
  GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<OrderedPoly<K>> basis, GroebnerStats stats);

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  std::size_t size() const { return basis_.size(); }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].lm().is_one(); }
  bool is_zero_ideal() const { return basis_.empty(); }
  const std::vector<OrderedPoly<K>>& elements() const { return basis_; }
  std::vector<Monomial> leading_monomials() const;
  /// Basis elements as ordinary polynomials (same order as elements()).
  std::vector<MPoly<K>> polys() const;
  const GroebnerStats& stats() const { return stats_; }

  /// Unique remainder of f; zero iff f lies in the ideal.
  MPoly<K> normal_form(const MPoly<K>& f) const;
  OrderedPoly<K> normal_form(OrderedPoly<K> f) const;
  bool reduces_to_zero(const MPoly<K>& f) const { return normal_form(f).is_zero(); }
  /// True if m is not divisible by any leading monomial.
  bool is_standard(const Monomial& m) const;

  OrderedPoly<K> to_ordered(const MPoly<K>& f) const;
  MPoly<K> from_ordered(const OrderedPoly<K>& f) const;

private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<OrderedPoly<K>> basis_;
  GroebnerStats stats_;
};

/// Buchberger's algorithm with the Gebauer–Möller criteria and sugar pair selection.
template <class K>
std::shared_ptr<const GroebnerBasis<K>> groebner(const std::vector<MPoly<K>>& gens, const RingPtr& ring,
                                                 const MonomialOrder& order, const GroebnerOptions& opts = {});

extern template class GroebnerBasis<Rational>;
extern template class GroebnerBasis<NFElem>;
extern template class GroebnerBasis<RatFunc>;
extern template std::shared_ptr<const GroebnerBasis<Rational>> groebner(const std::vector<MPoly<Rational>>&,
                                                                        const RingPtr&, const MonomialOrder&,
                                                                        const GroebnerOptions&);
extern template std::shared_ptr<const GroebnerBasis<NFElem>> groebner(const std::vector<MPoly<NFElem>>&,
                                                                      const RingPtr&, const MonomialOrder&,
                                                                      const GroebnerOptions&);
extern template std::shared_ptr<const GroebnerBasis<RatFunc>> groebner(const std::vector<MPoly<RatFunc>>&,
                                                                       const RingPtr&, const MonomialOrder&,
                                                                       const GroebnerOptions&);

}  // namespace k3
