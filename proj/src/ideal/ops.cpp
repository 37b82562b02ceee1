#include "k3/ideal/ops.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <functional>
#include <set>

#include "k3/ideal/linalg.hpp"

namespace k3 {
namespace {

using HPoly = std::vector<long long>;

void hadd(HPoly& a, const HPoly& b, int shift, long long sign) {
  if (a.size() < b.size() + static_cast<std::size_t>(shift)) a.resize(b.size() + static_cast<std::size_t>(shift), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + static_cast<std::size_t>(shift)] += sign * b[i];
}

HPoly hmul(const HPoly& a, const HPoly& b) {
  HPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void htrim(HPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<Monomial> minimalize(std::vector<Monomial> g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    return da != db ? da < db : a < b;
  });
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<Monomial> out;
  for (const auto& m : g) {
    bool red = false;
    for (const auto& o : out)
      if (o.divides(m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  return out;
}

HPoly hilbert_rec(std::vector<Monomial> gens, const std::vector<int>& w) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  bool coprime = true;
  for (std::size_t i = 0; i < gens.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < gens.size() && coprime; ++j)
      if (!gens[i].coprime(gens[j])) coprime = false;
  if (coprime) {
    HPoly r{1};
    for (const auto& m : gens) {
      HPoly f(static_cast<std::size_t>(m.weighted_degree(w)) + 1, 0);
      f[0] = 1;
      f.back() -= 1;
      r = hmul(r, f);
    }
    return r;
  }
  // Pivot on the variable occurring in most non-pure-power generators.
  const int n = static_cast<int>(w.size());
  int best = -1, best_count = 0;
  for (int v = 0; v < n; ++v) {
    int c = 0;
    for (const auto& m : gens)
      if (m[v] && m.total_degree() != m[v]) ++c;
    if (c > best_count) {
      best = v;
      best_count = c;
    }
  }
  std::vector<int> exps;
  for (const auto& m : gens)
    if (m[best] && m.total_degree() != m[best]) exps.push_back(m[best]);
  std::sort(exps.begin(), exps.end());
  int e = exps[exps.size() / 2];
  Monomial p = Monomial::var(best, e);

  std::vector<Monomial> with = gens;
  with.push_back(p);
  std::vector<Monomial> quo;
  for (auto m : gens) {
    m[best] = static_cast<std::uint16_t>(m[best] > e ? m[best] - e : 0);
    quo.push_back(m);
  }
  HPoly r = hilbert_rec(std::move(with), w);
  hadd(r, hilbert_rec(std::move(quo), w), e * w[static_cast<std::size_t>(best)], 1);
  htrim(r);
  return r;
}

/// Ring with one extra variable appended.
RingPtr extend_ring(const RingPtr& ring, const std::string& name, int weight) {
  std::string n = name;
  while (ring->index_of(n) || n == ring->field().param) n += "_";
  return ring->extended({n}, {weight});
}

template <class K>
std::vector<MPoly<K>> lift(const std::vector<MPoly<K>>& gens, const RingPtr& target) {
  std::vector<MPoly<K>> out;
  for (const auto& g : gens) out.push_back(g.in_ring(target));
  return out;
}

/// Drops the last variable of the generators' ring, which must not occur.
template <class K>
Ideal<K> drop_last(const std::vector<MPoly<K>>& gens, const RingPtr& ring) {
  std::vector<MPoly<K>> out;
  for (const auto& g : gens)
    if (!g.involves(ring->nvars())) out.push_back(g.in_ring(ring));
  return Ideal<K>(ring, out);
}

std::vector<bool> last_only(int n) {
  std::vector<bool> d(static_cast<std::size_t>(n), false);
  d.back() = true;
  return d;
}

template <class K>
MPoly<K> random_linear_form(const RingPtr& ring, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(1, 9);
  MPoly<K> l(ring);
  for (int i = 0; i < ring->nvars(); ++i) l += MPoly<K>::var(ring, i).scaled(K(static_cast<long>(d(rng))));
  return l;
}

}  // namespace

std::vector<long long> hilbert_numerator(const std::vector<Monomial>& monomials, const std::vector<int>& weights) {
  return hilbert_rec(monomials, weights);
}

RingPtr ring_without(const PolyRing& ring, const std::vector<bool>& drop) {
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 0; i < ring.nvars(); ++i)
    if (!drop[static_cast<std::size_t>(i)]) {
      names.push_back(ring.name(i));
      weights.push_back(ring.weight(i));
    }
  return PolyRing::make(names, weights, ring.field());
}

template <class K>
HilbertData dimension_degree(const Ideal<K>& I) {
  if (!I.is_homogeneous()) throw std::invalid_argument("dimension_degree needs a homogeneous ideal");
  const auto& w = I.ring()->weights();
  HilbertData h;
  auto gb = I.groebner();
  HPoly num = hilbert_numerator(gb->leading_monomials(), w);
  htrim(num);
  h.numerator = num;
  if (num.empty()) return h;
  int n = I.ring()->nvars(), k = 0;
  while (true) {
    long long s = 0;
    for (auto c : num) s += c;
    if (s != 0) break;
    HPoly q(num.size() - 1);
    long long acc = 0;
    for (std::size_t i = 0; i + 1 < num.size(); ++i) {
      acc += num[i];
      q[i] = acc;
    }
    num = q;
    ++k;
  }
  int krull = n - k;
  h.dimension = krull - 1;
  if (h.dimension < 0) return h;
  long long q1 = 0;
  for (auto c : num) q1 += c;
  Integer wprod = 1;
  for (int x : w) wprod *= x;
  h.degree = Rational(Integer(static_cast<long>(q1)), wprod);
  return h;
}

template <class K>
MPoly<K> normal_form(const MPoly<K>& f, const Ideal<K>& I, const MonomialOrder& order) {
  return I.groebner(order)->normal_form(f);
}

template <class K>
Ideal<K> eliminate(const Ideal<K>& I, const std::vector<bool>& drop) {
  if (std::none_of(drop.begin(), drop.end(), [](bool b) { return b; })) return I;
  auto gb = I.groebner(MonomialOrder::elimination(*I.ring(), drop));
  std::vector<MPoly<K>> keep;
  for (const auto& g : gb->polys()) {
    bool uses = false;
    for (int v = 0; v < I.ring()->nvars(); ++v)
      if (drop[static_cast<std::size_t>(v)] && g.involves(v)) uses = true;
    if (!uses) keep.push_back(g);
  }
  return Ideal<K>(I.ring(), keep);
}

template <class K>
Ideal<K> restrict_to(const Ideal<K>& I, const std::vector<bool>& drop, const RingPtr& target) {
  std::vector<int> map;
  for (int v = 0; v < I.ring()->nvars(); ++v)
    if (!drop[static_cast<std::size_t>(v)]) map.push_back(v);
  if (static_cast<int>(map.size()) != target->nvars()) throw std::invalid_argument("restrict_to: ring size mismatch");
  std::vector<MPoly<K>> out;
  for (const auto& g : I.gens()) {
    std::vector<std::pair<Monomial, K>> t;
    bool ok = true;
    for (std::size_t i = 0; i < g.nterms() && ok; ++i) {
      Monomial m;
      for (int v = 0; v < I.ring()->nvars(); ++v)
        if (drop[static_cast<std::size_t>(v)] && g.monomials()[i][v]) ok = false;
      for (std::size_t j = 0; j < map.size(); ++j) m[static_cast<int>(j)] = g.monomials()[i][map[j]];
      t.emplace_back(m, g.coeffs()[i]);
    }
    if (ok) out.push_back(MPoly<K>::from_terms(target, std::move(t)));
  }
  return Ideal<K>(target, out);
}

template <class K>
Ideal<K> saturate(const Ideal<K>& I, const MPoly<K>& g) {
  const RingPtr& R = I.ring();
  if (g.is_zero()) return Ideal<K>::unit(R);
  if (g.is_constant() || I.is_zero()) return I;
  auto gdeg = g.weighted_degree();
  if (gdeg && I.is_homogeneous()) {
    RingPtr Rz = extend_ring(R, "z", *gdeg);
    int z = R->nvars();
    auto gens = lift(I.gens(), Rz);
    gens.push_back(MPoly<K>::var(Rz, z) - g.in_ring(Rz));
    auto gb = groebner<K>(gens, Rz, MonomialOrder::grevlex(*Rz));
    std::vector<MPoly<K>> img(static_cast<std::size_t>(Rz->nvars()));
    for (int v = 0; v < R->nvars(); ++v) img[static_cast<std::size_t>(v)] = MPoly<K>::var(R, v);
    img.back() = g;
    std::vector<MPoly<K>> out;
    for (const auto& p : gb->polys()) {
      int k = 1 << 30;
      for (const auto& m : p.monomials()) k = std::min<int>(k, m[z]);
      Monomial d = Monomial::var(z, k);
      std::vector<std::pair<Monomial, K>> t;
      for (std::size_t i = 0; i < p.nterms(); ++i) t.emplace_back(p.monomials()[i] / d, p.coeffs()[i]);
      out.push_back(MPoly<K>::from_terms(Rz, std::move(t)).substitute(img));
    }
    return Ideal<K>(R, out).minimalized();
  }
  RingPtr Ru = extend_ring(R, "u", 1);
  auto gens = lift(I.gens(), Ru);
  gens.push_back(MPoly<K>(Ru, K(1)) - MPoly<K>::var(Ru, R->nvars()) * g.in_ring(Ru));
  Ideal<K> J(Ru, gens);
  return drop_last(eliminate(J, last_only(Ru->nvars())).gens(), R);
}

template <class K>
Ideal<K> saturate(const Ideal<K>& I, const Ideal<K>& J) {
  if (J.is_zero()) return Ideal<K>::unit(I.ring());
  std::optional<Ideal<K>> acc;
  for (const auto& g : J.gens()) {
    Ideal<K> s = saturate(I, g);
    acc = acc ? intersect(*acc, s) : s;
    if (acc->equals(I)) break;
  }
  return *acc;
}

template <class K>
Ideal<K> saturate_irrelevant(const Ideal<K>& I) {
  if (!I.is_homogeneous()) throw std::invalid_argument("irrelevant saturation needs a homogeneous ideal");
  if (I.is_zero() || I.is_unit()) return I;
  RingPtr R = I.ring();
  if (!R->standard_grading()) return saturate(I, Ideal<K>::irrelevant(R));
  std::mt19937 rng(20240611u);
  Ideal<K> s1 = saturate(I, random_linear_form<K>(R, rng));
  Ideal<K> s2 = saturate(I, random_linear_form<K>(R, rng));
  if (s1.equals(s2)) return s1;
  return intersect(s1, s2);
}

template <class K>
Ideal<K> intersect(const Ideal<K>& I, const Ideal<K>& J) {
  const RingPtr& R = I.ring();
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  if (I.is_zero() || J.is_zero()) return Ideal<K>(R, {});
  RingPtr Ru = extend_ring(R, "u", 1);
  MPoly<K> u = MPoly<K>::var(Ru, R->nvars());
  MPoly<K> one_minus_u = MPoly<K>(Ru, K(1)) - u;
  std::vector<MPoly<K>> gens;
  for (const auto& f : I.gens()) gens.push_back(u * f.in_ring(Ru));
  for (const auto& g : J.gens()) gens.push_back(one_minus_u * g.in_ring(Ru));
  Ideal<K> T(Ru, gens);
  return drop_last(eliminate(T, last_only(Ru->nvars())).gens(), R);
}

template <class K>
std::optional<MPoly<K>> divide_exact(const MPoly<K>& f, const MPoly<K>& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  const RingPtr& R = f.ring() ? f.ring() : g.ring();
  MPoly<K> q(R), r = f;
  K inv = K(1) / g.lc();
  while (!r.is_zero()) {
    if (!g.lm().divides(r.lm())) return std::nullopt;
    MPoly<K> t = MPoly<K>::term(R, r.lc() * inv, r.lm() / g.lm());
    q += t;
    r -= t * g;
  }
  return q;
}

template <class K>
Ideal<K> quotient(const Ideal<K>& I, const MPoly<K>& g) {
  if (g.is_zero()) return Ideal<K>::unit(I.ring());
  Ideal<K> inter = intersect(I, Ideal<K>(I.ring(), {g}));
  std::vector<MPoly<K>> out;
  for (const auto& h : inter.gens()) {
    auto q = divide_exact(h, g);
    if (!q) throw std::logic_error("quotient: intersection element not divisible");
    out.push_back(*q);
  }
  return Ideal<K>(I.ring(), out);
}

template <class K>
Ideal<K> quotient(const Ideal<K>& I, const Ideal<K>& J) {
  if (J.is_zero()) return Ideal<K>::unit(I.ring());
  std::optional<Ideal<K>> acc;
  for (const auto& g : J.gens()) {
    Ideal<K> s = quotient(I, g);
    acc = acc ? intersect(*acc, s) : s;
  }
  return *acc;
}

template <class K>
std::optional<std::size_t> vector_space_dimension(const Ideal<K>& I) {
  auto gb = I.groebner();
  if (gb->is_unit()) return 0;
  auto lms = gb->leading_monomials();
  const int n = I.ring()->nvars();
  std::vector<int> bound(static_cast<std::size_t>(n), -1);
  for (const auto& m : lms)
    for (int v = 0; v < n; ++v)
      if (m.total_degree() == m[v] && m[v] > 0) {
        int b = m[v];
        if (bound[static_cast<std::size_t>(v)] < 0 || b < bound[static_cast<std::size_t>(v)]) bound[static_cast<std::size_t>(v)] = b;
      }
  for (int b : bound)
    if (b < 0) return std::nullopt;
  // Count standard monomials inside the box given by the pure powers.
  std::size_t count = 0;
  Monomial cur;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      if (gb->is_standard(cur)) ++count;
      return;
    }
    for (int e = 0; e < bound[static_cast<std::size_t>(v)]; ++e) {
      cur[v] = static_cast<std::uint16_t>(e);
      bool ok = true;
      for (const auto& m : lms)
        if (m.divides(cur)) {
          ok = false;
          break;
        }
      if (!ok) break;
      rec(v + 1);
    }
    cur[v] = 0;
  };
  rec(0);
  return count;
}

template <class K>
UniPoly<K> minimal_polynomial(const MPoly<K>& f, const Ideal<K>& I) {
  auto gb = I.groebner();
  auto dim = vector_space_dimension(I);
  if (!dim) throw std::invalid_argument("minimal polynomial needs a zero-dimensional ideal");
  if (*dim == 0) return UniPoly<K>(K(1));
  DependencyFinder<K, Monomial> dep;
  MPoly<K> cur = gb->normal_form(MPoly<K>(I.ring(), K(1)));
  for (std::size_t k = 0; k <= *dim; ++k) {
    typename DependencyFinder<K, Monomial>::Vec v;
    for (std::size_t i = 0; i < cur.nterms(); ++i) v[cur.monomials()[i]] = cur.coeffs()[i];
    if (auto combo = dep.add(std::move(v))) return UniPoly<K>(*combo).monic();
    cur = gb->normal_form(cur * f);
  }
  throw std::logic_error("minimal polynomial: no dependency found");
}

template <class K>
MPoly<K> chart_form(const Ideal<K>& I, unsigned seed) {
  const RingPtr& R = I.ring();
  for (int v = 0; v < R->nvars(); ++v) {
    MPoly<K> x = MPoly<K>::var(R, v);
    if (dimension_degree(I + x).dimension < 0) return x;
  }
  std::mt19937 rng(seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    MPoly<K> l = random_linear_form<K>(R, rng);
    if (dimension_degree(I + l).dimension < 0) return l;
  }
  throw std::runtime_error("no chart form found for a zero-dimensional scheme");
}

template <class K>
Ideal<K> radical_zero_dim(const Ideal<K>& I) {
  const RingPtr& R = I.ring();
  if (I.is_unit()) return I;
  if (!I.is_homogeneous() || vector_space_dimension(I)) {
    if (!vector_space_dimension(I)) throw std::invalid_argument("radical_zero_dim: ideal is not zero-dimensional");
    Ideal<K> J = I;
    for (int v = 0; v < R->nvars(); ++v) {
      UniPoly<K> m = minimal_polynomial(MPoly<K>::var(R, v), I);
      UniPoly<K> s = m / gcd(m, m.derivative());
      if (s.degree() == m.degree()) continue;
      MPoly<K> h(R);
      for (int k = 0; k <= s.degree(); ++k) h += MPoly<K>::var(R, v, k).scaled(s.coeff(k));
      J = J + h;
    }
    return J.minimalized();
  }
  if (!R->standard_grading()) throw std::invalid_argument("radical_zero_dim: weighted grading not supported");
  HilbertData hd = dimension_degree(I);
  if (hd.dimension < 0) return Ideal<K>::unit(R);
  if (hd.dimension > 0) throw std::invalid_argument("radical_zero_dim: scheme is not zero-dimensional");
  MPoly<K> l = chart_form(I);
  Ideal<K> aff = I + (l - MPoly<K>(R, K(1)));
  std::vector<MPoly<K>> extra;
  for (int v = 0; v < R->nvars(); ++v) {
    UniPoly<K> m = minimal_polynomial(MPoly<K>::var(R, v), aff);
    UniPoly<K> s = m / gcd(m, m.derivative());
    if (s.degree() == m.degree()) continue;
    MPoly<K> h(R);
    const int d = s.degree();
    for (int k = 0; k <= d; ++k)
      if (!s.coeff(k).is_zero()) h += (MPoly<K>::var(R, v, k) * pow(l, static_cast<unsigned>(d - k))).scaled(s.coeff(k));
    extra.push_back(h);
  }
  Ideal<K> J = I;
  for (auto& h : extra) J = J + h;
  return saturate(J, l);
}

#define K3_IDEAL_OPS_INST(K)                                                              \
  template HilbertData dimension_degree(const Ideal<K>&);                                \
  template MPoly<K> normal_form(const MPoly<K>&, const Ideal<K>&, const MonomialOrder&);  \
  template Ideal<K> eliminate(const Ideal<K>&, const std::vector<bool>&);                \
  template Ideal<K> restrict_to(const Ideal<K>&, const std::vector<bool>&, const RingPtr&); \
  template Ideal<K> saturate(const Ideal<K>&, const MPoly<K>&);                          \
  template Ideal<K> saturate(const Ideal<K>&, const Ideal<K>&);                          \
  template Ideal<K> saturate_irrelevant(const Ideal<K>&);                                \
  template Ideal<K> intersect(const Ideal<K>&, const Ideal<K>&);                         \
  template Ideal<K> quotient(const Ideal<K>&, const MPoly<K>&);                          \
  template Ideal<K> quotient(const Ideal<K>&, const Ideal<K>&);                          \
  template std::optional<MPoly<K>> divide_exact(const MPoly<K>&, const MPoly<K>&);       \
  template UniPoly<K> minimal_polynomial(const MPoly<K>&, const Ideal<K>&);              \
  template std::optional<std::size_t> vector_space_dimension(const Ideal<K>&);           \
  template Ideal<K> radical_zero_dim(const Ideal<K>&);                                   \
  template MPoly<K> chart_form(const Ideal<K>&, unsigned);

K3_IDEAL_OPS_INST(Rational)
K3_IDEAL_OPS_INST(NFElem)
K3_IDEAL_OPS_INST(RatFunc)

}  // namespace k3
