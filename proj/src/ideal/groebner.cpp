#include "k3/ideal/groebner.hpp"

#include <algorithm>

namespace k3 {
namespace {

template <class K>
bool is_one(const K& k) {
  return k == K(1);
}

/// u*p - v*m*g where p is read from index `start` on and the leading terms are known to
/// cancel (both are skipped).
template <class K>
OrderedPoly<K> sub_mul(const OrderedPoly<K>& p, const K& u, bool u_one, const K& v, const Monomial& m,
                       const OrderedPoly<K>& g, const MonomialOrder& ord, std::size_t start = 0) {
  OrderedPoly<K> out;
  out.mons.reserve(p.size() - start + g.size());
  out.coeffs.reserve(p.size() - start + g.size());
  std::size_t i = start + 1, j = 1;
  Monomial mg;
  bool have_mg = false;
  while (i < p.size() || j < g.size()) {
    if (j < g.size() && !have_mg) {
      mg = g.mons[j] * m;
      have_mg = true;
    }
    int c = i == p.size() ? -1 : (j == g.size() ? 1 : ord.cmp(p.mons[i], mg));
    if (c > 0) {
      out.mons.push_back(p.mons[i]);
      out.coeffs.push_back(u_one ? p.coeffs[i] : u * p.coeffs[i]);
      ++i;
    } else if (c < 0) {
      out.mons.push_back(mg);
      out.coeffs.push_back(-(v * g.coeffs[j]));
      ++j;
      have_mg = false;
    } else {
      K s = u_one ? p.coeffs[i] - v * g.coeffs[j] : u * p.coeffs[i] - v * g.coeffs[j];
      if (!s.is_zero()) {
        out.mons.push_back(mg);
        out.coeffs.push_back(std::move(s));
      }
      ++i;
      ++j;
      have_mg = false;
    }
  }
  return out;
}

template <class K>
void make_primitive(OrderedPoly<K>& p) {
  FieldTraits<K>::make_primitive(std::span<K>(p.coeffs));
}

template <class K>
void make_monic(OrderedPoly<K>& p) {
  if (p.is_zero() || is_one(p.lc())) return;
  K inv = K(1) / p.lc();
  for (auto& c : p.coeffs) c *= inv;
}

int poly_sugar(const std::vector<Monomial>& mons, const PolyRing& ring) {
  int s = 0;
  for (const auto& m : mons) s = std::max(s, m.weighted_degree(ring.weights()));
  return s;
}

thread_local const std::atomic<bool>* t_cancel = nullptr;

void check_cancel(const GroebnerOptions& opts) {
  if (opts.cancel && opts.cancel->load(std::memory_order_relaxed)) throw Cancelled();
  if (t_cancel && t_cancel->load(std::memory_order_relaxed)) throw Cancelled();
}

template <class K>
class Buchberger {
public:
  Buchberger(const RingPtr& ring, const MonomialOrder& ord, const GroebnerOptions& opts)
      : ring_(ring), ord_(ord), opts_(opts) {}

  std::vector<OrderedPoly<K>> run(std::vector<OrderedPoly<K>> input) {
    std::sort(input.begin(), input.end(),
              [&](const auto& a, const auto& b) { return ord_.cmp(a.lm(), b.lm()) < 0; });
    for (auto& f : input) {
      f.sugar = poly_sugar(f.mons, *ring_);
      top_reduce(f);
      if (f.is_zero()) continue;
      make_primitive(f);
      update(std::move(f));
    }
    while (!pairs_.empty()) {
      check_cancel(opts_);
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (pair_less(pairs_[k], pairs_[best])) best = k;
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      ++stats.pairs_reduced;
      OrderedPoly<K> h = spoly(pr);
      top_reduce(h);
      if (h.is_zero()) {
        ++stats.zero_reductions;
        continue;
      }
      make_primitive(h);
      update(std::move(h));
    }
    std::vector<OrderedPoly<K>> out;
    for (std::size_t k = 0; k < G_.size(); ++k)
      if (active_[k]) out.push_back(std::move(G_[k]));
    for (auto& g : out) make_monic(g);
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return ord_.cmp(a.lm(), b.lm()) < 0; });
    return out;
  }

  GroebnerStats stats;

private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
  };

  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ord_.cmp(a.lcm, b.lcm);
    if (c) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  int deg(const Monomial& m) const { return m.weighted_degree(ring_->weights()); }

  OrderedPoly<K> spoly(const Pair& pr) {
    const auto& f = G_[pr.i];
    const auto& g = G_[pr.j];
    auto [u, v] = FieldTraits<K>::reduction_factors(f.lc(), g.lc());
    Monomial mf = pr.lcm / f.lm(), mg = pr.lcm / g.lm();
    // u*mf*f - v*mg*g: scale f by its cofactor first.
    OrderedPoly<K> sf;
    sf.mons.reserve(f.size());
    for (const auto& m : f.mons) sf.mons.push_back(m * mf);
    sf.coeffs = f.coeffs;
    OrderedPoly<K> r = sub_mul(sf, u, is_one(u), v, mg, g, ord_);
    r.sugar = pr.sugar;
    return r;
  }

  /// Reduces the leading term until it is not divisible by any active leading monomial.
  void top_reduce(OrderedPoly<K>& p) {
    int steps = 0;
    while (!p.is_zero()) {
      std::size_t best = G_.size();
      for (std::size_t k = 0; k < G_.size(); ++k) {
        if (!active_[k] || !G_[k].lm().divides(p.lm())) continue;
        if (best == G_.size() || G_[k].size() < G_[best].size()) best = k;
      }
      if (best == G_.size()) return;
      const auto& g = G_[best];
      auto [u, v] = FieldTraits<K>::reduction_factors(p.lc(), g.lc());
      Monomial m = p.lm() / g.lm();
      int sugar = std::max(p.sugar, g.sugar + deg(m));
      p = sub_mul(p, u, is_one(u), v, m, g, ord_);
      p.sugar = sugar;
      if (++steps % 8 == 0) {
        check_cancel(opts_);
        make_primitive(p);
      }
    }
  }

  void update(OrderedPoly<K> h) {
    if (h.sugar == 0) h.sugar = poly_sugar(h.mons, *ring_);
    const std::size_t hi = G_.size();
    const Monomial hlm = h.lm();

    // New pairs, pruned by the chain criterion among themselves and by the product criterion.
    std::vector<Pair> C;
    for (std::size_t k = 0; k < G_.size(); ++k) {
      if (!active_[k]) continue;
      Monomial l = Monomial::lcm(hlm, G_[k].lm());
      int s = std::max(h.sugar + deg(l) - deg(hlm), G_[k].sugar + deg(l) - deg(G_[k].lm()));
      C.push_back({k, hi, l, s});
      ++stats.pairs_considered;
    }
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = hlm.coprime(G_[p.i].lm());
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : D)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> E;
    for (const auto& p : D)
      if (!hlm.coprime(G_[p.i].lm())) E.push_back(p);

    std::vector<Pair> B;
    B.reserve(pairs_.size() + E.size());
    for (const auto& p : pairs_) {
      bool drop = hlm.divides(p.lcm) && !(Monomial::lcm(G_[p.i].lm(), hlm) == p.lcm) &&
                  !(Monomial::lcm(hlm, G_[p.j].lm()) == p.lcm);
      if (!drop) B.push_back(p);
    }
    for (auto& p : E) B.push_back(p);
    pairs_ = std::move(B);

    for (std::size_t k = 0; k < G_.size(); ++k)
      if (active_[k] && hlm.divides(G_[k].lm())) active_[k] = false;
    G_.push_back(std::move(h));
    active_.push_back(true);
  }

  RingPtr ring_;
  const MonomialOrder& ord_;
  const GroebnerOptions& opts_;
  std::vector<OrderedPoly<K>> G_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

CancelScope::CancelScope(const std::atomic<bool>* flag) : previous_(t_cancel) { t_cancel = flag; }
CancelScope::~CancelScope() { t_cancel = previous_; }
void CancelScope::poll() { check_cancel({}); }

template <class K>
GroebnerBasis<K>::GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<OrderedPoly<K>> basis,
                                GroebnerStats stats)
    : ring_(std::move(ring)), order_(std::move(order)), basis_(std::move(basis)), stats_(stats) {}

template <class K>
std::vector<Monomial> GroebnerBasis<K>::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : basis_) out.push_back(g.lm());
  return out;
}

template <class K>
OrderedPoly<K> GroebnerBasis<K>::to_ordered(const MPoly<K>& f) const {
  std::vector<std::size_t> idx(f.nterms());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return order_.cmp(f.monomials()[a], f.monomials()[b]) > 0; });
  OrderedPoly<K> r;
  for (auto i : idx) {
    r.mons.push_back(f.monomials()[i]);
    r.coeffs.push_back(f.coeffs()[i]);
  }
  return r;
}

template <class K>
MPoly<K> GroebnerBasis<K>::from_ordered(const OrderedPoly<K>& f) const {
  std::vector<std::pair<Monomial, K>> t;
  t.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) t.emplace_back(f.mons[i], f.coeffs[i]);
  return MPoly<K>::from_terms(ring_, std::move(t));
}

template <class K>
std::vector<MPoly<K>> GroebnerBasis<K>::polys() const {
  std::vector<MPoly<K>> out;
  for (const auto& g : basis_) out.push_back(from_ordered(g));
  return out;
}

template <class K>
bool GroebnerBasis<K>::is_standard(const Monomial& m) const {
  for (const auto& g : basis_)
    if (g.lm().divides(m)) return false;
  return true;
}

template <class K>
OrderedPoly<K> GroebnerBasis<K>::normal_form(OrderedPoly<K> p) const {
  OrderedPoly<K> rem;
  const K one(1);
  std::size_t start = 0;
  while (start < p.size()) {
    const OrderedPoly<K>* div = nullptr;
    for (const auto& g : basis_)
      if (g.lm().divides(p.mons[start])) {
        div = &g;
        break;
      }
    if (!div) {
      rem.mons.push_back(p.mons[start]);
      rem.coeffs.push_back(p.coeffs[start]);
      ++start;
      continue;
    }
    Monomial m = p.mons[start] / div->lm();
    K c = p.coeffs[start];
    p = sub_mul(p, one, true, c, m, *div, order_, start);
    start = 0;
  }
  return rem;
}

template <class K>
MPoly<K> GroebnerBasis<K>::normal_form(const MPoly<K>& f) const {
  if (f.is_zero()) return MPoly<K>(ring_);
  return from_ordered(normal_form(to_ordered(f)));
}

template <class K>
std::shared_ptr<const GroebnerBasis<K>> groebner(const std::vector<MPoly<K>>& gens, const RingPtr& ring,
                                                 const MonomialOrder& order, const GroebnerOptions& opts) {
  Buchberger<K> bb(ring, order, opts);
  GroebnerBasis<K> tmp(ring, order, {}, {});
  std::vector<OrderedPoly<K>> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(tmp.to_ordered(g));
  auto basis = bb.run(std::move(in));
  // Tail-reduce against the (monic, minimal) basis.
  GroebnerBasis<K> red(ring, order, basis, {});
  for (auto& g : basis) {
    OrderedPoly<K> tail;
    tail.mons.assign(g.mons.begin() + 1, g.mons.end());
    tail.coeffs.assign(g.coeffs.begin() + 1, g.coeffs.end());
    OrderedPoly<K> nt = red.normal_form(std::move(tail));
    g.mons.resize(1);
    g.coeffs.resize(1);
    g.mons.insert(g.mons.end(), nt.mons.begin(), nt.mons.end());
    g.coeffs.insert(g.coeffs.end(), nt.coeffs.begin(), nt.coeffs.end());
  }
  return std::make_shared<const GroebnerBasis<K>>(ring, order, std::move(basis), bb.stats);
}

template class GroebnerBasis<Rational>;
template class GroebnerBasis<NFElem>;
template class GroebnerBasis<RatFunc>;
template std::shared_ptr<const GroebnerBasis<Rational>> groebner(const std::vector<MPoly<Rational>>&, const RingPtr&,
                                                                 const MonomialOrder&, const GroebnerOptions&);
template std::shared_ptr<const GroebnerBasis<NFElem>> groebner(const std::vector<MPoly<NFElem>>&, const RingPtr&,
                                                               const MonomialOrder&, const GroebnerOptions&);
template std::shared_ptr<const GroebnerBasis<RatFunc>> groebner(const std::vector<MPoly<RatFunc>>&, const RingPtr&,
                                                                const MonomialOrder&, const GroebnerOptions&);

}  // namespace k3
