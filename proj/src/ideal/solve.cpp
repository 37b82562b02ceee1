#include "k3/ideal/solve.hpp"

#include <algorithm>
#include <random>

#include "k3/ideal/linalg.hpp"

namespace k3 {

std::vector<Rational> PointOrbit::rational_coords() const {
  if (!is_rational()) throw std::domain_error("point orbit is not rational");
  std::vector<Rational> out;
  for (const auto& c : coords) out.push_back(c.to_rational());
  return out;
}

std::string PointOrbit::to_string() const {
  std::string s;
  if (has_coords()) {
    s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += " : ";
      s += coords[i].to_string();
    }
    s += ")";
  } else {
    s = "<orbit>";
  }
  if (!is_rational()) s += " over QQ[a]/(" + minpoly.to_string("a") + ")";
  return s;
}

namespace {

using DF = DependencyFinder<Rational, Monomial>;

DF::Vec to_vec(const QMPoly& p) {
  DF::Vec v;
  for (std::size_t i = 0; i < p.nterms(); ++i) v[p.monomials()[i]] = p.coeffs()[i];
  return v;
}

}  // namespace

std::vector<PointOrbit> solve_points(const QIdeal& I, unsigned seed) {
  const RingPtr& R = I.ring();
  QIdeal rad = radical_zero_dim(I);
  if (rad.is_unit()) return {};
  QMPoly l = chart_form(rad, seed);
  QIdeal aff = rad + (l - QMPoly(R, Rational(1)));
  auto npts = vector_space_dimension(aff);
  if (!npts) throw std::invalid_argument("solve_points: scheme is not zero-dimensional");
  auto gb = aff.groebner();

  // Separating linear form.
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  QMPoly z(R);
  UniPoly<Rational> mz;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 50) throw std::runtime_error("solve_points: no separating form found");
    z = QMPoly(R);
    if (attempt < R->nvars()) {
      z = QMPoly::var(R, attempt);  // single coordinates give the smallest defining polynomials
    } else {
      for (int v = 0; v < R->nvars(); ++v) z += QMPoly::var(R, v).scaled(Rational(d(rng)));
    }
    mz = minimal_polynomial(z, aff);
    if (static_cast<std::size_t>(mz.degree()) == *npts) break;
  }

  // x_v = g_v(z) modulo the chart ideal.
  const std::size_t N = *npts;
  std::vector<QPoly> g(static_cast<std::size_t>(R->nvars()));
  for (int v = 0; v < R->nvars(); ++v) {
    DF dep;
    QMPoly cur = gb->normal_form(QMPoly(R, Rational(1)));
    for (std::size_t k = 0; k < N; ++k) {
      if (dep.add(to_vec(cur))) throw std::logic_error("solve_points: powers of separating form dependent");
      cur = gb->normal_form(cur * z);
    }
    auto combo = dep.add(to_vec(gb->normal_form(QMPoly::var(R, v))));
    if (!combo) throw std::logic_error("solve_points: coordinate not expressible");
    std::vector<Rational> c(N);
    for (std::size_t k = 0; k < N; ++k) c[k] = -(*combo)[k];
    g[static_cast<std::size_t>(v)] = QPoly(c);
  }

  std::vector<PointOrbit> out;
  for (const auto& [h, mult] : factor(mz)) {
    (void)mult;
    PointOrbit o;
    o.minpoly = h;
    QMPoly hz(R);
    for (int k = 0; k <= h.degree(); ++k)
      if (!h.coeff(k).is_zero()) hz += (pow(z, static_cast<unsigned>(k)) * pow(l, static_cast<unsigned>(h.degree() - k))).scaled(h.coeff(k));
    o.ideal = saturate(rad + hz, l);
    if (h.degree() <= 6) {
      NumberFieldPtr F = h.degree() == 1 ? nullptr : NumberField::make(h, "a");
      o.field = F;
      for (const auto& gv : g) {
        if (F) {
          o.coords.emplace_back(F, gv);
        } else {
          Rational root = -h.coeff(0);
          o.coords.emplace_back(gv(root));
        }
      }
      NFElem lead;
      for (const auto& c : o.coords)
        if (!c.is_zero()) {
          lead = c;
          break;
        }
      NFElem inv = lead.inverse();
      for (auto& c : o.coords) c *= inv;
    }
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const PointOrbit& a, const PointOrbit& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.to_string() < b.to_string();
  });
  return out;
}

template <class K>
std::vector<K> single_point(const Ideal<K>& I) {
  const RingPtr& R = I.ring();
  auto gb = I.groebner();
  const int n = R->nvars();
  std::vector<MPoly<K>> lin;
  for (const auto& p : gb->polys())
    if (p.max_degree() == 1 && p.is_homogeneous()) lin.push_back(p);
  if (static_cast<int>(lin.size()) != n - 1) throw std::invalid_argument("single_point: scheme is not one reduced point");
  Matrix<K> M(static_cast<int>(lin.size()), n);
  for (std::size_t r = 0; r < lin.size(); ++r)
    for (std::size_t i = 0; i < lin[r].nterms(); ++i) {
      const Monomial& m = lin[r].monomials()[i];
      for (int v = 0; v < n; ++v)
        if (m[v]) M(static_cast<int>(r), v) = lin[r].coeffs()[i];
    }
  auto ker = M.kernel();
  if (ker.size() != 1) throw std::invalid_argument("single_point: scheme is not one reduced point");
  auto pt = ker[0];
  K lead;
  for (const auto& c : pt)
    if (!c.is_zero()) {
      lead = c;
      break;
    }
  K inv = K(1) / lead;
  for (auto& c : pt) c *= inv;
  // Every basis element must vanish at the point (rules out embedded junk).
  std::vector<MPoly<K>> images;
  for (int v = 0; v < n; ++v) images.push_back(MPoly<K>(R, pt[static_cast<std::size_t>(v)]));
  for (const auto& p : gb->polys())
    if (!p.substitute(images).is_zero()) throw std::invalid_argument("single_point: point does not satisfy the ideal");
  return pt;
}

template std::vector<Rational> single_point(const Ideal<Rational>&);
template std::vector<NFElem> single_point(const Ideal<NFElem>&);
template std::vector<RatFunc> single_point(const Ideal<RatFunc>&);

}  // namespace k3
