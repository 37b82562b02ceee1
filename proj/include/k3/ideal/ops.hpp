#pragma once

#include <optional>
#include <vector>

#include "k3/ideal/ideal.hpp"

namespace k3 {

/// Projective dimension (-1 for the empty scheme) and degree from the Hilbert series.
/// In weighted rings the degree is the leading Hilbert coefficient divided by the product of
/// the weights, so it may be fractional.
struct HilbertData {
  int dimension = -1;
  Rational degree;
  /// Numerator of the Hilbert series over prod (1 - t^w_i), low degree first.
  std::vector<long long> numerator;
};

/// Numerator N(t) of the Hilbert series N(t) / prod(1 - t^{w_i}) of R / (monomials).
std::vector<long long> hilbert_numerator(const std::vector<Monomial>& monomials, const std::vector<int>& weights);

/// Throws std::invalid_argument for inhomogeneous ideals.
template <class K>
HilbertData dimension_degree(const Ideal<K>& I);

template <class K>
MPoly<K> normal_form(const MPoly<K>& f, const Ideal<K>& I, const MonomialOrder& order);

/// I ∩ k[remaining variables], as an ideal of the same ring.
template <class K>
Ideal<K> eliminate(const Ideal<K>& I, const std::vector<bool>& drop);

/// Moves generators not involving dropped variables into `target`, whose variables are the
/// kept ones in their original relative order.
template <class K>
Ideal<K> restrict_to(const Ideal<K>& I, const std::vector<bool>& drop, const RingPtr& target);

/// Ring without the dropped variables (same field, names and weights of the rest).
RingPtr ring_without(const PolyRing& ring, const std::vector<bool>& drop);

template <class K>
Ideal<K> saturate(const Ideal<K>& I, const MPoly<K>& g);
template <class K>
Ideal<K> saturate(const Ideal<K>& I, const Ideal<K>& J);
/// I : m^∞ for the irrelevant ideal m (homogeneous I).
template <class K>
Ideal<K> saturate_irrelevant(const Ideal<K>& I);

template <class K>
Ideal<K> intersect(const Ideal<K>& I, const Ideal<K>& J);
template <class K>
Ideal<K> quotient(const Ideal<K>& I, const MPoly<K>& g);
template <class K>
Ideal<K> quotient(const Ideal<K>& I, const Ideal<K>& J);

/// Exact quotient f / g, or nullopt if g does not divide f.
template <class K>
std::optional<MPoly<K>> divide_exact(const MPoly<K>& f, const MPoly<K>& g);

/// Monic minimal polynomial of f in R / I for a zero-dimensional (affine) ideal I.
template <class K>
UniPoly<K> minimal_polynomial(const MPoly<K>& f, const Ideal<K>& I);

/// Dimension of R / I as a vector space (I zero-dimensional affine); nullopt if infinite.
template <class K>
std::optional<std::size_t> vector_space_dimension(const Ideal<K>& I);

/// Radical of a zero-dimensional ideal: affine (vector_space_dimension finite) or homogeneous
/// with projective dimension 0. Throws std::invalid_argument otherwise.
template <class K>
Ideal<K> radical_zero_dim(const Ideal<K>& I);

/// A linear form not vanishing at any point of the zero-dimensional projective scheme V(I):
/// a variable if possible, else a seeded random combination.
template <class K>
MPoly<K> chart_form(const Ideal<K>& I, unsigned seed = 1);

#define K3_IDEAL_OPS_EXTERN(K)                                                                   \
  extern template HilbertData dimension_degree(const Ideal<K>&);                                \
  extern template MPoly<K> normal_form(const MPoly<K>&, const Ideal<K>&, const MonomialOrder&);  \
  extern template Ideal<K> eliminate(const Ideal<K>&, const std::vector<bool>&);                \
  extern template Ideal<K> restrict_to(const Ideal<K>&, const std::vector<bool>&, const RingPtr&); \
  extern template Ideal<K> saturate(const Ideal<K>&, const MPoly<K>&);                          \
  extern template Ideal<K> saturate(const Ideal<K>&, const Ideal<K>&);                          \
  extern template Ideal<K> saturate_irrelevant(const Ideal<K>&);                                \
  extern template Ideal<K> intersect(const Ideal<K>&, const Ideal<K>&);                         \
  extern template Ideal<K> quotient(const Ideal<K>&, const MPoly<K>&);                          \
  extern template Ideal<K> quotient(const Ideal<K>&, const Ideal<K>&);                          \
  extern template std::optional<MPoly<K>> divide_exact(const MPoly<K>&, const MPoly<K>&);       \
  extern template UniPoly<K> minimal_polynomial(const MPoly<K>&, const Ideal<K>&);              \
  extern template std::optional<std::size_t> vector_space_dimension(const Ideal<K>&);           \
  extern template Ideal<K> radical_zero_dim(const Ideal<K>&);                                   \
  extern template MPoly<K> chart_form(const Ideal<K>&, unsigned);

K3_IDEAL_OPS_EXTERN(Rational)
K3_IDEAL_OPS_EXTERN(NFElem)
K3_IDEAL_OPS_EXTERN(RatFunc)
#undef K3_IDEAL_OPS_EXTERN

}  // namespace k3
