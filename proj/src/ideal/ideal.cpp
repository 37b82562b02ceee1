#include "k3/ideal/ideal.hpp"

namespace k3 {

template <class K>
Ideal<K>::Ideal(RingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
  for (auto& g : gens)
    if (!g.is_zero()) gens_.push_back(g.ring() == ring_ ? std::move(g) : g.in_ring(ring_));
}

template <class K>
Ideal<K> Ideal<K>::irrelevant(RingPtr ring) {
  std::vector<Poly> g;
  for (int i = 0; i < ring->nvars(); ++i) g.push_back(Poly::var(ring, i));
  return Ideal(ring, g);
}

template <class K>
typename Ideal<K>::Basis Ideal<K>::groebner(const MonomialOrder& order) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    for (const auto& [o, b] : cache_->entries)
      if (o == order) return b;
  }
  Basis b = k3::groebner<K>(gens_, ring_, order);
  std::lock_guard<std::mutex> lock(cache_->mu);
  for (const auto& [o, existing] : cache_->entries)
    if (o == order) return existing;
  cache_->entries.emplace_back(order, b);
  return b;
}

template <class K>
typename Ideal<K>::Basis Ideal<K>::groebner() const {
  return groebner(MonomialOrder::grevlex(*ring_));
}

template <class K>
bool Ideal<K>::is_homogeneous() const {
  for (const auto& g : gens_)
    if (!g.is_homogeneous()) return false;
  return true;
}

template <class K>
bool Ideal<K>::contains(const Ideal& o) const {
  auto gb = groebner();
  for (const auto& g : o.gens_)
    if (!gb->reduces_to_zero(g.ring() == ring_ ? g : g.in_ring(ring_))) return false;
  return true;
}

template <class K>
Ideal<K> Ideal<K>::operator+(const Ideal& o) const {
  auto g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return Ideal(ring_ ? ring_ : o.ring_, std::move(g));
}

template <class K>
Ideal<K> Ideal<K>::operator+(const Poly& f) const {
  auto g = gens_;
  g.push_back(f);
  return Ideal(ring_, std::move(g));
}

template <class K>
Ideal<K> Ideal<K>::operator*(const Ideal& o) const {
  std::vector<Poly> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(a * b);
  return Ideal(ring_, std::move(g));
}

template <class K>
Ideal<K> Ideal<K>::minimalized() const {
  auto gb = groebner();
  Ideal r(ring_, gb->polys());
  std::lock_guard<std::mutex> lock(cache_->mu);
  r.cache_ = cache_;
  return r;
}

template <class K>
std::vector<typename Ideal<K>::Poly> Ideal<K>::gens_of_degree(int d) const {
  std::vector<Poly> out;
  for (const auto& g : gens_)
    if (g.weighted_degree() == d) out.push_back(g);
  return out;
}

template <class K>
std::string Ideal<K>::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

template class Ideal<Rational>;
template class Ideal<NFElem>;
template class Ideal<RatFunc>;

}  // namespace k3
