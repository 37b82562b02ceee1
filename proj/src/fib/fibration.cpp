#include "k3/fib/fibration.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "k3/ideal/linalg.hpp"

namespace k3 {

namespace {

using Vec = DependencyFinder<Rational, Monomial>::Vec;

Vec to_vec(const QMPoly& p) {
  Vec v;
  for (std::size_t i = 0; i < p.nterms(); ++i) v[p.monomials()[i]] = p.coeffs()[i];
  return v;
}

/// Rank of the span of the given forms modulo the ideal.
int rank_modulo(const QIdeal& I, const std::vector<QMPoly>& forms) {
  auto gb = I.groebner();
  DependencyFinder<Rational, Monomial> dep;
  int r = 0;
  for (const auto& f : forms) {
    QMPoly nf = gb->normal_form(f);
    if (nf.is_zero()) continue;
    if (!dep.add(to_vec(nf))) ++r;
  }
  return r;
}

template <class K>
K eval_at(const MPoly<K>& f, const std::vector<K>& p) {
  K s;
  for (std::size_t i = 0; i < f.nterms(); ++i) {
    K t = f.coeffs()[i];
    for (int v = 0; v < f.ring()->nvars(); ++v)
      for (int e = 0; e < f.monomials()[i][v]; ++e) t *= p[static_cast<std::size_t>(v)];
    s += t;
  }
  return s;
}

/// p (not involving variable v) moved into the ring without v.
TMPoly drop_variable(const TMPoly& p, int v, const RingPtr& target) {
  std::vector<std::pair<Monomial, RatFunc>> t;
  for (std::size_t i = 0; i < p.nterms(); ++i) {
    const Monomial& m = p.monomials()[i];
    if (m[v]) throw std::logic_error("drop_variable: polynomial involves the variable");
    Monomial n;
    for (int k = 0, o = 0; k < p.ring()->nvars(); ++k)
      if (k != v) n[o++] = m[k];
    t.emplace_back(n, p.coeffs()[i]);
  }
  return TMPoly::from_terms(target, std::move(t));
}

bool proportional(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

struct CurveState {
  TIdeal ideal;
  std::vector<RatFunc> point;
};

void remove_linear(CurveState& s) {
  while (true) {
    const auto polys = s.ideal.groebner()->polys();
    const TMPoly* lin = nullptr;
    for (const auto& p : polys)
      if (p.max_degree() == 1) {
        lin = &p;
        break;
      }
    if (!lin) return;
    const RingPtr& R = s.ideal.ring();
    int v = -1;
    for (int k = 0; k < R->nvars() && v < 0; ++k)
      if (lin->lm()[k]) v = k;
    std::vector<bool> drop(static_cast<std::size_t>(R->nvars()), false);
    drop[static_cast<std::size_t>(v)] = true;
    RingPtr NR = ring_without(*R, drop);
    TMPoly xv = TMPoly::var(R, v);
    TMPoly expr = drop_variable(xv - lin->scaled(lin->lc().inverse()), v, NR);
    std::vector<TMPoly> images;
    for (int k = 0, o = 0; k < R->nvars(); ++k) images.push_back(k == v ? expr : TMPoly::var(NR, o++));
    std::vector<TMPoly> gens;
    for (const auto& p : polys) {
      if (&p == lin) continue;
      TMPoly q = p.substitute(images);
      if (!q.is_zero()) gens.push_back(q);
    }
    s.ideal = TIdeal(NR, gens);
    s.point.erase(s.point.begin() + v);
  }
}

void project_once(CurveState& s, int variant) {
  const RingPtr& R = s.ideal.ring();
  const int n = R->nvars();
  const auto& P = s.point;
  auto gens = s.ideal.groebner()->polys();
  Matrix<RatFunc> J(static_cast<int>(gens.size()), n);
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (int k = 0; k < n; ++k) J(static_cast<int>(r), k) = eval_at(gens[r].derivative(k), P);
  auto ker = J.kernel();
  if (ker.size() != 2) throw std::invalid_argument("reduce_to_plane_cubic: marked point is singular on the curve");
  std::vector<RatFunc> v = proportional(ker[0], P) ? ker[1] : ker[0];
  int j = -1;
  if (variant % 2 == 0) {
    for (int k = n - 1; k >= 0 && j < 0; --k)
      if (!P[static_cast<std::size_t>(k)].is_zero()) j = k;
  } else {
    for (int k = 0; k < n && j < 0; ++k)
      if (!P[static_cast<std::size_t>(k)].is_zero()) j = k;
  }
  const RatFunc& pj = P[static_cast<std::size_t>(j)];
  std::vector<TMPoly> to_moved;
  for (int k = 0; k < n; ++k) {
    TMPoly xk = TMPoly::var(R, k);
    to_moved.push_back(k == j ? xk : xk + TMPoly::var(R, j).scaled(P[static_cast<std::size_t>(k)] / pj));
  }
  std::vector<TMPoly> moved;
  for (const auto& g : gens) moved.push_back(g.substitute(to_moved));
  std::vector<bool> drop(static_cast<std::size_t>(n), false);
  drop[static_cast<std::size_t>(j)] = true;
  RingPtr NR = ring_without(*R, drop);
  TIdeal image = restrict_to(eliminate(TIdeal(R, moved), drop), drop, NR);
  std::vector<RatFunc> w;
  for (int k = 0; k < n; ++k)
    if (k != j) w.push_back(v[static_cast<std::size_t>(k)] - P[static_cast<std::size_t>(k)] / pj * v[static_cast<std::size_t>(j)]);
  for (const auto& g : image.gens())
    if (!eval_at(g, w).is_zero()) throw std::logic_error("reduce_to_plane_cubic: tangent direction is off the image");
  s.ideal = image;
  s.point = w;
}

/// Projectively equal vector with polynomial entries and no common content.
std::vector<RatFunc> primitive_vec(std::vector<RatFunc> p) {
  FieldTraits<RatFunc>::make_primitive(p);
  return p;
}

std::vector<RatFunc> normalized(std::vector<RatFunc> p) {
  for (const auto& c : p)
    if (!c.is_zero()) {
      RatFunc inv = c.inverse();
      for (auto& x : p) x *= inv;
      break;
    }
  return p;
}

}  // namespace

std::string Pencil::to_string() const { return "(" + f.to_string() + " : " + g.to_string() + ")"; }

Pencil make_pencil(const ProjScheme& X, const QMPoly& f, const QMPoly& g) {
  if (!f.is_homogeneous() || !g.is_homogeneous() || f.is_zero() || g.is_zero() || f.weighted_degree() != g.weighted_degree())
    throw std::invalid_argument("pencil forms must be nonzero forms of one degree");
  if (rank_modulo(X.ideal, {f, g}) != 2) throw std::invalid_argument("pencil forms are dependent modulo the surface");
  Pencil P{X, f, g, saturate_irrelevant(X.ideal + QIdeal(X.ring(), {f, g}))};
  return P;
}

Pencil pencil_through(const ProjScheme& X, const QIdeal& B, int d) {
  auto forms = linear_system(X, B, d);
  if (forms.size() != 2)
    throw std::invalid_argument("pencil_through: system of degree " + std::to_string(d) + " has dimension " + std::to_string(forms.size()));
  return make_pencil(X, forms[0], forms[1]);
}

Pencil residual_pencil(const ProjScheme& X, const QIdeal& F) {
  for (int d = 1; d <= 4; ++d) {
    auto through = linear_system(X, F, d);
    if (through.empty()) continue;
    QIdeal R = saturate_irrelevant(quotient(X.ideal + through[0], F));
    auto forms = linear_system(X, R, d);
    if (forms.size() == 2) return make_pencil(X, forms[0], forms[1]);
    // F is the fixed part of a pencil rather than a fibre.
    if (through.size() == 2) return make_pencil(X, through[0], through[1]);
    throw std::invalid_argument("residual_pencil: residual system has dimension " + std::to_string(forms.size()) + ", not 2");
  }
  throw std::invalid_argument("residual_pencil: no form of degree at most 4 vanishes on F");
}

bool same_pencil(const Pencil& P, const QMPoly& f, const QMPoly& g) {
  const QIdeal& I = P.surface.ideal;
  return rank_modulo(I, {f, g}) == 2 && rank_modulo(I, {P.f, P.g, f, g}) == 2;
}

TMPoly lift_poly(const QMPoly& p, const RingPtr& target) {
  return map_coeffs<RatFunc>(p, target, [](const Rational& c) { return RatFunc(c); });
}

GenericFiber generic_fiber(const Pencil& P) {
  RingPtr RT = P.surface.ring()->with_field(FieldDesc::function_field("t"));
  std::vector<TMPoly> gens;
  for (const auto& g : P.surface.ideal.gens()) gens.push_back(lift_poly(g, RT));
  TMPoly f = lift_poly(P.f, RT);
  gens.push_back(lift_poly(P.g, RT) - f.scaled(RatFunc::t()));
  GenericFiber C;
  C.ideal = saturate(TIdeal(RT, gens), f).minimalized();
  HilbertData h = dimension_degree(C.ideal);
  C.dimension = h.dimension;
  C.degree = h.degree;
  return C;
}

std::vector<RatFunc> section_point(const Pencil& P, const GenericFiber& C, const CurveOnSurface& L) {
  auto gb = L.ideal.groebner();
  QMPoly nf = gb->normal_form(P.f), ng = gb->normal_form(P.g);
  bool in_fiber = false;
  if (nf.is_zero() != ng.is_zero()) {
    in_fiber = true;
  } else if (!nf.is_zero()) {
    in_fiber = (ng - nf.scaled(ng.lc() / nf.lc())).is_zero();
  }
  if (in_fiber) throw std::invalid_argument("section_point: " + L.label + " lies in a fibre");
  std::vector<TMPoly> gens = C.ideal.gens();
  for (const auto& g : L.ideal.gens()) gens.push_back(lift_poly(g, C.ring()));
  TIdeal meet = saturate_irrelevant(TIdeal(C.ring(), gens));
  HilbertData h = dimension_degree(meet);
  Rational count = h.dimension < 0 ? Rational(0) : h.degree;
  if (h.dimension > 0 || count != Rational(1))
    throw std::invalid_argument("section_point: " + L.label + " meets the generic fibre in " +
                                (h.dimension > 0 ? std::string("a curve") : count.to_string() + " points") + ", not 1");
  return single_point(meet);
}

PlaneCubic reduce_to_plane_cubic(const GenericFiber& C, int variant) {
  if (!C.point) throw std::invalid_argument("reduce_to_plane_cubic: no marked point");
  if (C.dimension != 1) throw std::invalid_argument("reduce_to_plane_cubic: not a curve");
  CurveState s{C.ideal, *C.point};
  PlaneCubic out;
  out.degree_chain.push_back(static_cast<int>(C.degree.num().get_si()));
  if (C.degree < Rational(3)) throw std::invalid_argument("reduce_to_plane_cubic: curve of degree " + C.degree.to_string() + " is not of genus 1");
  remove_linear(s);
  int step = 0;
  while (s.ideal.ring()->nvars() > 3) {
    Rational before = dimension_degree(s.ideal).degree;
    project_once(s, variant >> step);
    ++step;
    HilbertData h = dimension_degree(s.ideal);
    if (h.dimension != 1 || h.degree != before - Rational(1))
      throw std::invalid_argument("reduce_to_plane_cubic: projection degenerates");
    out.degree_chain.push_back(static_cast<int>(h.degree.num().get_si()));
    remove_linear(s);
  }
  if (s.ideal.ring()->nvars() < 3) throw std::invalid_argument("reduce_to_plane_cubic: curve is a line");
  auto gb = s.ideal.groebner();
  if (gb->size() != 1 || gb->polys()[0].max_degree() != 3)
    throw std::invalid_argument("reduce_to_plane_cubic: plane curve of degree " + std::to_string(gb->size() == 1 ? gb->polys()[0].max_degree() : -1) +
                                " is not a cubic");
  out.cubic = gb->polys()[0];
  out.point = normalized(s.point);
  if (out.degree_chain.back() != 3) out.degree_chain.push_back(3);
  return out;
}

NagellResult nagell(const TMPoly& C0, const std::vector<RatFunc>& P0) {
  const RingPtr& R = C0.ring();
  const TMPoly C = C0.primitive();
  const std::vector<RatFunc> P = primitive_vec(P0);
  if (R->nvars() != 3 || P.size() != 3) throw std::invalid_argument("nagell: expected a plane cubic and a point");
  if (!C.is_homogeneous() || C.max_degree() != 3) throw std::invalid_argument("nagell: not a cubic form");
  if (!eval_at(C, P).is_zero()) throw std::invalid_argument("nagell: point is not on the cubic");
  std::vector<RatFunc> grad;
  for (int k = 0; k < 3; ++k) grad.push_back(eval_at(C.derivative(k), P));
  if (std::all_of(grad.begin(), grad.end(), [](const RatFunc& c) { return c.is_zero(); }))
    throw std::invalid_argument("nagell: point is singular");

  NagellResult res;
  // Already in Weierstrass shape at (0 : 1 : 0).
  if (P[0].is_zero() && P[2].is_zero()) {
    auto m = [](int a, int b, int c) {
      Monomial x;
      x[0] = static_cast<std::uint16_t>(a);
      x[1] = static_cast<std::uint16_t>(b);
      x[2] = static_cast<std::uint16_t>(c);
      return x;
    };
    const std::vector<Monomial> allowed = {m(0, 2, 1), m(1, 1, 1), m(0, 1, 2), m(3, 0, 0), m(2, 0, 1), m(1, 0, 2), m(0, 0, 3)};
    bool shape = true;
    for (const auto& mm : C.monomials())
      if (std::find(allowed.begin(), allowed.end(), mm) == allowed.end()) shape = false;
    RatFunc alpha = C.coeff(m(0, 2, 1));
    if (shape && !alpha.is_zero() && C.coeff(m(3, 0, 0)) == -alpha) {
      RatFunc inv = alpha.inverse();
      WeierstrassModel W{C.coeff(m(1, 1, 1)) * inv, -C.coeff(m(2, 0, 1)) * inv, C.coeff(m(0, 1, 2)) * inv,
                         -C.coeff(m(1, 0, 2)) * inv, -C.coeff(m(0, 0, 3)) * inv};
      if (W.discriminant().is_zero()) throw std::invalid_argument("nagell: cubic is singular");
      res.model = W;
      res.map.already_weierstrass = true;
      return res;
    }
  }

  // Third intersection Q of the tangent line at P.
  grad = primitive_vec(grad);
  std::vector<RatFunc> d = primitive_vec({grad[1] * P[2] - grad[2] * P[1], grad[2] * P[0] - grad[0] * P[2], grad[0] * P[1] - grad[1] * P[0]});
  RingPtr AB = PolyRing::make({"_a", "_b"}, {}, R->field());
  TMPoly a = TMPoly::var(AB, 0), b = TMPoly::var(AB, 1);
  std::vector<TMPoly> line;
  for (int k = 0; k < 3; ++k) line.push_back(a.scaled(P[static_cast<std::size_t>(k)]) + b.scaled(d[static_cast<std::size_t>(k)]));
  TMPoly c = C.substitute(line);
  Monomial ab2 = Monomial::var(0) * Monomial::var(1, 2), b3 = Monomial::var(1, 3);
  RatFunc alpha = c.coeff(ab2), beta = c.coeff(b3);
  bool flex = alpha.is_zero();
  std::vector<RatFunc> Q = P;
  if (!flex)
    for (int k = 0; k < 3; ++k) Q[static_cast<std::size_t>(k)] = -beta * P[static_cast<std::size_t>(k)] + alpha * d[static_cast<std::size_t>(k)];
  Q = primitive_vec(Q);

  RingPtr UV = PolyRing::make({"_u", "_v"}, {}, R->field());
  const std::pair<int, int> pairs[] = {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}};
  for (auto [i1, i2] : pairs) {
    // Columns e_i1, e_i2, Q.
    auto col = [&](int r, int cidx) -> RatFunc {
      if (cidx == 0) return RatFunc(r == i1 ? 1 : 0);
      if (cidx == 1) return RatFunc(r == i2 ? 1 : 0);
      return Q[static_cast<std::size_t>(r)];
    };
    RatFunc det;
    {
      RatFunc m[3][3];
      for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) m[r][k] = col(r, k);
      det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    if (det.is_zero()) continue;
    // Coordinates of P in the new basis: P = pu e_i1 + pv e_i2 + pw Q.
    int i3 = 3 - i1 - i2;
    // Scaled by Q[i3] to stay polynomial.
    const RatFunc& q3 = Q[static_cast<std::size_t>(i3)];
    const RatFunc& p3 = P[static_cast<std::size_t>(i3)];
    RatFunc pu = q3 * P[static_cast<std::size_t>(i1)] - p3 * Q[static_cast<std::size_t>(i1)];
    RatFunc pv = q3 * P[static_cast<std::size_t>(i2)] - p3 * Q[static_cast<std::size_t>(i2)];
    TMPoly U = TMPoly::var(UV, 0), V = TMPoly::var(UV, 1);
    std::vector<TMPoly> img;
    for (int r = 0; r < 3; ++r) img.push_back(U.scaled(col(r, 0)) + V.scaled(col(r, 1)) + TMPoly(UV, col(r, 2)));
    TMPoly f = C.substitute(img);
    std::vector<std::vector<RatFunc>> parts(4, std::vector<RatFunc>(4));
    for (std::size_t i = 0; i < f.nterms(); ++i) {
      const Monomial& mm = f.monomials()[i];
      parts[static_cast<std::size_t>(mm[0] + mm[1])][static_cast<std::size_t>(mm[1])] += f.coeffs()[i];
    }
    // Tangent slope s0 = num / den.
    RatFunc num, den;
    if (flex) {
      if (parts[1][1].is_zero()) continue;
      num = -parts[1][0];
      den = parts[1][1];
    } else {
      if (pu.is_zero()) continue;
      num = pv;
      den = pu;
    }
    // Branch quartic D(s) = f2^2 - 4 f1 f3; expand den^4 D((num + e) / den) in e.
    UniPoly<RatFunc> f1(parts[1]), f2(parts[2]), f3(parts[3]);
    UniPoly<RatFunc> D = f2 * f2 - f1 * f3 * UniPoly<RatFunc>(RatFunc(4));
    if (D.degree() > 4) throw std::logic_error("nagell: branch polynomial has degree above 4");
    UniPoly<RatFunc> shifted(std::vector<RatFunc>{num, RatFunc(1)});
    UniPoly<RatFunc> E, power(RatFunc(1));
    for (int i = 0; i <= 4; ++i) {
      RatFunc scale = D.coeff(i);
      for (int k = i; k < 4; ++k) scale *= den;
      if (!scale.is_zero()) E = E + power * UniPoly<RatFunc>(scale);
      power = power * shifted;
    }
    if (!E.coeff(0).is_zero()) throw std::logic_error("nagell: tangent slope is not a root of the branch quartic");
    RatFunc c1 = E.coeff(1), c2 = E.coeff(2), c3 = E.coeff(3), c4 = E.coeff(4);
    if (c1.is_zero()) throw std::invalid_argument("nagell: cubic is singular");
    // y^2 = x^3 + c2 x^2 + c1 c3 x + c1^2 c4, already rescaled by den.
    WeierstrassModel W{RatFunc(0), c2, RatFunc(0), c1 * c3, c1 * c1 * c4};
    if (W.discriminant().is_zero()) throw std::invalid_argument("nagell: cubic is singular");
    res.model = W;
    res.map.s0 = num / den;
    res.map.c1 = c1;
    res.map.basis.assign(3, std::vector<RatFunc>(3));
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) res.map.basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = col(r, k);
    return res;
  }
  throw std::invalid_argument("nagell: no usable coordinate frame");
}

bool ComponentsResult::complete() const {
  Rational s;
  for (const auto& c : components) s += Rational(c.degree * c.multiplicity);
  return s == fiber_degree && fiber_degree == expected_degree;
}

std::string ComponentsResult::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(components[i].degree);
    if (components[i].multiplicity != 1) s += "^" + std::to_string(components[i].multiplicity);
  }
  s += "}";
  if (!complete()) s += " incomplete: fibre degree " + fiber_degree.to_string() + " of " + expected_degree.to_string();
  return s;
}

FibrationModel build_model(const Pencil& P, const CurveOnSurface& section, int variant) {
  FibrationModel M;
  M.fiber = generic_fiber(P);
  M.fiber.point = section_point(P, M.fiber, section);
  M.cubic = reduce_to_plane_cubic(M.fiber, variant);
  M.weierstrass = nagell(M.cubic.cubic, M.cubic.point);
  M.table = fiber_table(M.weierstrass.model);
  return M;
}

QIdeal fiber_ideal(const Pencil& P, const Place& place) {
  const ProjScheme& X = P.surface;
  if (place.infinite) return saturate(X.ideal + P.f, P.g);
  const int k = place.degree();
  QMPoly H(X.ring());
  for (int i = 0; i <= k; ++i)
    if (!place.poly.coeff(i).is_zero())
      H += (pow(P.g, static_cast<unsigned>(i)) * pow(P.f, static_cast<unsigned>(k - i))).scaled(place.poly.coeff(i));
  return saturate(X.ideal + H, P.f);
}

ComponentsResult reducible_fiber_components(const Pencil& P, const Place& place, unsigned seed) {
  const RingPtr& R = P.surface.ring();
  const int k = place.degree();
  QIdeal D = fiber_ideal(P, place);
  ComponentsResult res;
  HilbertData hd = dimension_degree(D);
  if (hd.dimension != 1) throw std::invalid_argument("reducible_fiber_components: fibre is not a curve");
  res.fiber_degree = hd.degree / Rational(k);
  res.expected_degree = generic_fiber(P).degree;

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  std::optional<std::vector<FiberComponent>> best;
  for (int trial = 0; trial < 3; ++trial) {
    QMPoly l(R);
    for (int v = 0; v < R->nvars(); ++v) l += QMPoly::var(R, v).scaled(Rational(dist(rng)));
    QIdeal Z = D + l;
    if (dimension_degree(Z).dimension != 0) continue;
    std::vector<FiberComponent> comps;
    for (const auto& o : solve_points(Z, seed + static_cast<unsigned>(trial))) {
      if (o.degree() % k != 0) throw std::logic_error("reducible_fiber_components: orbit not compatible with the place");
      Rational m = multiplicity_at_orbit(Z, o);
      comps.push_back({o.degree() / k, static_cast<int>(m.num().get_si())});
    }
    if (!best || comps.size() < best->size()) best = comps;
  }
  if (!best) throw std::runtime_error("reducible_fiber_components: no transverse hyperplane found");
  std::sort(best->begin(), best->end(), [](const FiberComponent& a, const FiberComponent& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.multiplicity < b.multiplicity;
  });
  res.components = *best;
  return res;
}

std::optional<KodairaType> detect_configuration(const std::vector<std::vector<long>>& M, bool common_point) {
  using K = KodairaType::Kind;
  const std::size_t n = M.size();
  if (n == 2 && M[0][1] == 2) return KodairaType{K::I, 2};
  if (n == 3 && M[0][1] == 1 && M[0][2] == 1 && M[1][2] == 1) return common_point ? KodairaType{K::IV, 0} : KodairaType{K::I, 3};
  if (n == 4) {
    for (std::size_t i = 0; i < 4; ++i) {
      int ones = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == j) continue;
        if (M[i][j] == 1) ++ones;
        else if (M[i][j] != 0) return std::nullopt;
      }
      if (ones != 2) return std::nullopt;
    }
    // Two-regular on four vertices is either a 4-cycle or two disjoint edges.
    int reach = 1;
    std::vector<bool> seen(4, false);
    std::vector<std::size_t> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < 4; ++j)
        if (M[i][j] == 1 && !seen[j]) {
          seen[j] = true;
          ++reach;
          stack.push_back(j);
        }
    }
    if (reach == 4) return KodairaType{K::I, 4};
  }
  return std::nullopt;
}

std::optional<KodairaType> detect_configuration(const ProjScheme& X, const std::vector<CurveOnSurface>& curves) {
  const std::size_t n = curves.size();
  if (n < 2) return std::nullopt;
  std::vector<std::vector<long>> M(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto r = intersection_number(X, curves[i], curves[j]);
      if (!r.number) return std::nullopt;
      M[i][j] = M[j][i] = *r.number;
    }
  QIdeal all = curves[0].ideal;
  for (std::size_t i = 1; i < n; ++i) all = all + curves[i].ideal;
  return detect_configuration(M, dimension_degree(all).dimension >= 0);
}

}  // namespace k3
