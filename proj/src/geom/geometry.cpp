#include "k3/geom/geometry.hpp"

#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

#include "k3/ideal/linalg.hpp"

namespace k3 {

namespace {

QMPoly constant(const RingPtr& R, const Rational& c) { return QMPoly(R, c); }

/// Copies p into `target`, sending variable i to map[i].
QMPoly embed(const QMPoly& p, const RingPtr& target, const std::vector<int>& map) {
  std::vector<std::pair<Monomial, Rational>> t;
  for (std::size_t i = 0; i < p.nterms(); ++i) {
    Monomial m;
    for (std::size_t v = 0; v < map.size(); ++v) m[map[v]] = p.monomials()[i][static_cast<int>(v)];
    t.emplace_back(m, p.coeffs()[i]);
  }
  return QMPoly::from_terms(target, std::move(t));
}

std::vector<bool> drop_one(int n, int j) {
  std::vector<bool> d(static_cast<std::size_t>(n), false);
  d[static_cast<std::size_t>(j)] = true;
  return d;
}

std::vector<int> skip_index(int n, int j) {
  std::vector<int> m;
  for (int v = 0; v < n; ++v)
    if (v != j) m.push_back(v);
  return m;
}

void require_on(const QIdeal& I, const Point& p, const char* what) {
  if (!contains_point(I, p)) throw std::invalid_argument(std::string(what) + ": point " + point_to_string(p) + " is not on the scheme");
}

void require_standard(const PolyRing& R, const char* what) {
  if (!R.standard_grading()) throw std::invalid_argument(std::string(what) + ": ambient space must be ordinary projective space");
}

QMPoly determinant(std::vector<std::vector<QMPoly>> M, const RingPtr& R) {
  const std::size_t n = M.size();
  if (n == 0) return constant(R, Rational(1));
  if (n == 1) return M[0][0];
  if (n == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
  QMPoly det(R);
  for (std::size_t c = 0; c < n; ++c) {
    if (M[0][c].is_zero()) continue;
    std::vector<std::vector<QMPoly>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<QMPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(M[r][k]);
      sub.push_back(std::move(row));
    }
    QMPoly t = M[0][c] * determinant(std::move(sub), R);
    det = (c % 2 == 0) ? det + t : det - t;
  }
  return det;
}

void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::string field_note(const PointOrbit& o) {
  if (o.is_rational()) return "QQ";
  if (o.degree() == 2) {
    QPoly h = o.minpoly;
    Rational disc = h.coeff(1) * h.coeff(1) - Rational(4) * h.coeff(0);
    return "QQ(sqrt(" + squarefree_class(disc).get_str() + "))";
  }
  return "QQ[a]/(" + o.minpoly.to_string("a") + ")";
}

}  // namespace

std::string point_to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += " : ";
    s += p[i].to_string();
  }
  return s + ")";
}

Point parse_point(const std::string& text) {
  std::string t;
  for (char c : text) t += (c == '(' || c == ')' || c == ':' || c == ',') ? ' ' : c;
  std::istringstream is(t);
  Point p;
  std::string tok;
  while (is >> tok) p.push_back(Rational::parse(tok));
  if (p.empty()) throw std::invalid_argument("empty point");
  bool nonzero = false;
  for (const auto& c : p) nonzero = nonzero || !c.is_zero();
  if (!nonzero) throw std::invalid_argument("point with all coordinates zero");
  return p;
}

Point normalize_point(Point p) {
  Rational lead;
  for (const auto& c : p)
    if (!c.is_zero()) {
      lead = c;
      break;
    }
  if (lead.is_zero()) throw std::invalid_argument("point with all coordinates zero");
  for (auto& c : p) c = c / lead;
  return p;
}

Rational evaluate(const QMPoly& f, const Point& p) {
  if (static_cast<int>(p.size()) != f.ring()->nvars()) throw std::invalid_argument("point has wrong number of coordinates");
  Rational s;
  for (std::size_t i = 0; i < f.nterms(); ++i) {
    Rational t = f.coeffs()[i];
    for (int v = 0; v < f.ring()->nvars(); ++v)
      for (int e = 0; e < f.monomials()[i][v]; ++e) t *= p[static_cast<std::size_t>(v)];
    s += t;
  }
  return s;
}

bool contains_point(const QIdeal& I, const Point& p) {
  for (const auto& g : I.gens())
    if (!evaluate(g, p).is_zero()) return false;
  return true;
}

QIdeal point_ideal(const RingPtr& R, const Point& p) {
  if (static_cast<int>(p.size()) != R->nvars()) throw std::invalid_argument("point has wrong number of coordinates");
  require_standard(*R, "point_ideal");
  PointChart ch = chart_at(R, p);
  std::vector<QMPoly> g;
  for (int i = 0; i < R->nvars(); ++i)
    if (i != ch.j) g.push_back(ch.from_moved[static_cast<std::size_t>(i)]);
  return QIdeal(R, g);
}

PointChart chart_at(const RingPtr& R, const Point& p) {
  PointChart ch;
  ch.j = -1;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!p[static_cast<std::size_t>(i)].is_zero()) {
      ch.j = i;
      break;
    }
  if (ch.j < 0) throw std::invalid_argument("point with all coordinates zero");
  const Rational& pj = p[static_cast<std::size_t>(ch.j)];
  for (int i = 0; i < R->nvars(); ++i) {
    QMPoly xi = QMPoly::var(R, i);
    if (i == ch.j) {
      ch.to_moved.push_back(xi);
      ch.from_moved.push_back(xi);
    } else {
      QMPoly xj = QMPoly::var(R, ch.j).scaled(p[static_cast<std::size_t>(i)] / pj);
      ch.to_moved.push_back(xi + xj);
      ch.from_moved.push_back(xi - xj);
    }
  }
  return ch;
}

std::vector<QMPoly> jacobian_minors(const std::vector<QMPoly>& gens, int c) {
  if (gens.empty()) return {};
  const RingPtr& R = gens[0].ring();
  const int n = R->nvars();
  const int m = static_cast<int>(gens.size());
  if (c < 1 || c > m || c > n) throw std::invalid_argument("jacobian_minors: bad minor size");
  std::vector<std::vector<QMPoly>> J(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r)
    for (int v = 0; v < n; ++v) J[static_cast<std::size_t>(r)].push_back(gens[static_cast<std::size_t>(r)].derivative(v));
  std::vector<std::vector<int>> rows, cols;
  std::vector<int> cur;
  combinations(m, c, 0, cur, rows);
  combinations(n, c, 0, cur, cols);
  std::vector<QMPoly> out;
  for (const auto& rs : rows)
    for (const auto& cs : cols) {
      std::vector<std::vector<QMPoly>> M;
      for (int r : rs) {
        std::vector<QMPoly> row;
        for (int k : cs) row.push_back(J[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)]);
        M.push_back(std::move(row));
      }
      QMPoly d = determinant(std::move(M), R);
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  return out;
}

QIdeal singular_subscheme(const ProjScheme& X, int codim) {
  if (codim < 1) throw std::invalid_argument("singular_subscheme: codimension must be supplied");
  std::vector<QMPoly> gens = X.ideal.gens();
  for (auto& m : jacobian_minors(X.ideal.gens(), codim)) gens.push_back(std::move(m));
  return saturate_irrelevant(QIdeal(X.ring(), gens));
}

int multiplicity_at_point(const QIdeal& I, const Point& p) {
  require_on(I, p, "multiplicity_at_point");
  HilbertData h = dimension_degree(I);
  if (h.dimension != 0) throw std::invalid_argument("multiplicity_at_point: scheme is not zero-dimensional");
  HilbertData rest = dimension_degree(saturate(I, point_ideal(I.ring(), p)));
  Rational d = h.degree - (rest.dimension < 0 ? Rational(0) : rest.degree);
  return static_cast<int>(d.num().get_si());
}

Rational multiplicity_at_orbit(const QIdeal& I, const PointOrbit& orbit) {
  HilbertData h = dimension_degree(I);
  if (h.dimension != 0) throw std::invalid_argument("multiplicity_at_orbit: scheme is not zero-dimensional");
  HilbertData rest = dimension_degree(saturate(I, orbit.ideal));
  Rational d = h.degree - (rest.dimension < 0 ? Rational(0) : rest.degree);
  return d / Rational(orbit.degree());
}

QIdeal tangent_cone(const ProjScheme& X, const Point& p) {
  const RingPtr& R = X.ring();
  require_standard(*R, "tangent_cone");
  require_on(X.ideal, p, "tangent_cone");
  PointChart ch = chart_at(R, p);
  QIdeal moved(R, substitute_all(X.ideal.gens(), ch.to_moved));
  const int n = R->nvars();
  std::vector<int> ones(static_cast<std::size_t>(n), 1), ej(static_cast<std::size_t>(n), 0);
  ej[static_cast<std::size_t>(ch.j)] = 1;
  MonomialOrder ord(n, {ones, ej}, MonomialOrder::Tie::RevLex, "tangent");
  std::vector<QMPoly> cone;
  for (const auto& g : moved.groebner(ord)->polys()) {
    int top = 0;
    for (const auto& m : g.monomials()) top = std::max<int>(top, m[ch.j]);
    std::vector<std::pair<Monomial, Rational>> t;
    for (std::size_t i = 0; i < g.nterms(); ++i)
      if (g.monomials()[i][ch.j] == top) {
        Monomial m = g.monomials()[i];
        m[ch.j] = 0;
        t.emplace_back(m, g.coeffs()[i]);
      }
    cone.push_back(QMPoly::from_terms(R, std::move(t)).substitute(ch.from_moved));
  }
  return QIdeal(R, cone).minimalized();
}

std::pair<ProjScheme, RationalMap> project_from_point(const ProjScheme& X, const Point& p) {
  const RingPtr& R = X.ring();
  require_standard(*R, "project_from_point");
  require_on(X.ideal, p, "project_from_point");
  PointChart ch = chart_at(R, p);
  QIdeal moved(R, substitute_all(X.ideal.gens(), ch.to_moved));
  auto drop = drop_one(R->nvars(), ch.j);
  RingPtr T = ring_without(*R, drop);
  QIdeal image = restrict_to(eliminate(moved, drop), drop, T).minimalized();
  if (dimension_degree(image).dimension < X.hilbert().dimension)
    throw std::invalid_argument("project_from_point: X is a cone over " + point_to_string(p));
  RationalMap f;
  f.source = X.ideal;
  for (int i = 0; i < R->nvars(); ++i)
    if (i != ch.j) f.forms.push_back(ch.from_moved[static_cast<std::size_t>(i)]);
  f.target = T;
  f.image = image;
  return {ProjScheme{image, X.label.empty() ? "" : X.label + "/proj"}, f};
}

std::vector<QMPoly> linear_system(const ProjScheme& X, const QIdeal& Z, int d) {
  if (d < 1) throw std::invalid_argument("linear_system: degree must be positive");
  const RingPtr& R = X.ring();
  auto mons = monomials_of_weighted_degree(*R, d);
  // Degree-d part of Z: kernel of the normal-form map on monomials.
  std::vector<QMPoly> inZ;
  if (Z.is_zero()) {
    for (const auto& m : mons) inZ.push_back(QMPoly::term(R, Rational(1), m));
  } else {
    auto gb = Z.groebner();
    std::vector<QMPoly> nfs;
    std::map<Monomial, int> rowidx;
    for (const auto& m : mons) {
      nfs.push_back(gb->normal_form(QMPoly::term(R, Rational(1), m)));
      for (const auto& mm : nfs.back().monomials()) rowidx.emplace(mm, 0);
    }
    int r = 0;
    for (auto& [mm, idx] : rowidx) idx = r++;
    Matrix<Rational> M(r, static_cast<int>(mons.size()));
    for (std::size_t c = 0; c < nfs.size(); ++c)
      for (std::size_t i = 0; i < nfs[c].nterms(); ++i) M(rowidx[nfs[c].monomials()[i]], static_cast<int>(c)) = nfs[c].coeffs()[i];
    for (const auto& v : M.kernel()) {
      QMPoly f(R);
      for (std::size_t c = 0; c < mons.size(); ++c)
        if (!v[c].is_zero()) f += QMPoly::term(R, v[c], mons[c]);
      inZ.push_back(f);
    }
  }
  // Independent modulo the degree-d part of X's ideal.
  std::vector<QMPoly> out;
  if (X.ideal.is_zero()) return inZ;
  auto gbX = X.ideal.groebner();
  DependencyFinder<Rational, Monomial> dep;
  for (const auto& f : inZ) {
    QMPoly nf = gbX->normal_form(f);
    if (nf.is_zero()) continue;
    DependencyFinder<Rational, Monomial>::Vec v;
    for (std::size_t i = 0; i < nf.nterms(); ++i) v[nf.monomials()[i]] = nf.coeffs()[i];
    if (!dep.add(v)) out.push_back(f);
  }
  return out;
}

QIdeal image_of_map(const QIdeal& X, const std::vector<QMPoly>& forms, const RingPtr& target) {
  const RingPtr& R = X.ring();
  if (forms.empty()) throw std::invalid_argument("image_of_map: no forms");
  if (static_cast<int>(forms.size()) != target->nvars()) throw std::invalid_argument("image_of_map: target ring size mismatch");
  auto d = forms[0].weighted_degree();
  for (const auto& f : forms)
    if (f.weighted_degree() != d || !f.is_homogeneous()) throw std::invalid_argument("image_of_map: forms must be homogeneous of one degree");
  std::vector<std::string> extra;
  for (std::size_t i = 0; i < forms.size(); ++i) extra.push_back("_img" + std::to_string(i));
  RingPtr G = R->extended(extra, std::vector<int>(forms.size(), *d));
  std::vector<QMPoly> gens;
  for (const auto& g : X.gens()) gens.push_back(g.in_ring(G));
  for (std::size_t i = 0; i < forms.size(); ++i)
    gens.push_back(QMPoly::var(G, R->nvars() + static_cast<int>(i)) - forms[i].in_ring(G));
  std::vector<bool> drop(static_cast<std::size_t>(G->nvars()), false);
  for (int v = 0; v < R->nvars(); ++v) drop[static_cast<std::size_t>(v)] = true;
  QIdeal graph(G, gens);
  return restrict_to(eliminate(graph, drop), drop, target).minimalized();
}

QIdeal preimage_of_point(const RationalMap& f, const Point& q) {
  if (q.size() != f.forms.size()) throw std::invalid_argument("preimage_of_point: point has the wrong number of coordinates");
  const RingPtr& R = f.source.ring();
  std::vector<QMPoly> gens = f.source.gens();
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      QMPoly m = f.forms[i].scaled(q[j]) - f.forms[j].scaled(q[i]);
      if (!m.is_zero()) gens.push_back(std::move(m));
    }
  return saturate(QIdeal(R, gens), QIdeal(R, f.forms));
}

std::pair<ProjScheme, RationalMap> map_by_linear_system(const ProjScheme& X, const QIdeal& Z, int d,
                                                        const std::string& target_prefix) {
  auto forms = linear_system(X, Z, d);
  if (forms.empty()) throw std::invalid_argument("map_by_linear_system: the linear system is empty");
  RingPtr T = PolyRing::projective(static_cast<int>(forms.size()), target_prefix);
  RationalMap f;
  f.source = X.ideal;
  f.forms = forms;
  f.target = T;
  f.image = image_of_map(X.ideal, forms, T);
  return {ProjScheme{*f.image, X.label.empty() ? "" : X.label + "/map"}, f};
}

BirationalityReport is_birational(const RationalMap& f, unsigned seed) {
  BirationalityReport rep;
  const RingPtr& R = f.source.ring();
  QIdeal Y = f.image ? *f.image : image_of_map(f.source, f.forms, f.target);
  HilbertData hx = dimension_degree(f.source), hy = dimension_degree(Y);
  if (hy.dimension < hx.dimension || hy.dimension < 0) throw std::invalid_argument("is_birational: degenerate image");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  auto combo = [&]() {
    QMPoly s(R);
    for (const auto& phi : f.forms) s += phi.scaled(Rational(dist(rng)));
    return s;
  };
  rep.birational = true;
  for (int slice = 0; slice < 3; ++slice) {
    // An empty or positive-dimensional slice means the random forms were dependent; draw again.
    std::optional<HilbertData> hf;
    for (int attempt = 0; attempt < 8 && !hf; ++attempt) {
      std::vector<QMPoly> gens = f.source.gens();
      for (int k = 0; k < hx.dimension; ++k) gens.push_back(combo());
      HilbertData h = dimension_degree(saturate(QIdeal(R, gens), combo()));
      if (h.dimension == 0) hf = h;
    }
    if (!hf) {
      rep.birational = false;
      rep.note = "no slice cut a nonempty finite set";
      rep.slice_degrees.push_back(Rational(-1));
      continue;
    }
    Rational ratio = hf->degree / hy.degree;
    rep.slice_degrees.push_back(ratio);
    if (ratio != Rational(1)) rep.birational = false;
  }
  return rep;
}

LinesResult find_lines_through_point(const ProjScheme& X, const Point& p) {
  const RingPtr& R = X.ring();
  require_standard(*R, "find_lines_through_point");
  require_on(X.ideal, p, "find_lines_through_point");
  PointChart ch = chart_at(R, p);
  const int n = R->nvars();
  auto drop = drop_one(n, ch.j);
  RingPtr D = ring_without(*R, drop);
  auto map = skip_index(n, ch.j);
  // Coefficients of s^k in g(e_j + s v), as forms in the direction v.
  std::vector<QMPoly> conds;
  for (const auto& g0 : X.ideal.gens()) {
    QMPoly g = g0.substitute(ch.to_moved);
    std::map<int, std::vector<std::pair<Monomial, Rational>>> parts;
    for (std::size_t i = 0; i < g.nterms(); ++i) {
      const Monomial& m = g.monomials()[i];
      Monomial mv;
      for (std::size_t v = 0; v < map.size(); ++v) mv[static_cast<int>(v)] = m[map[v]];
      parts[static_cast<int>(mv.total_degree())].emplace_back(mv, g.coeffs()[i]);
    }
    for (auto& [k, terms] : parts)
      if (k > 0) conds.push_back(QMPoly::from_terms(D, std::move(terms)));
  }
  QIdeal dirs(D, conds);
  LinesResult res;
  HilbertData h = dimension_degree(dirs);
  if (h.dimension > 0) {
    res.infinite = true;
    return res;
  }
  if (h.dimension < 0) return res;
  for (const auto& o : solve_points(dirs)) {
    CurveOnSurface c;
    std::vector<QMPoly> gens;
    for (const auto& g : o.ideal.gens()) gens.push_back(embed(g, R, map).substitute(ch.from_moved));
    c.ideal = QIdeal(R, gens).minimalized();
    c.field = field_note(o);
    c.markers.push_back(normalize_point(p));
    if (o.is_rational()) {
      auto v = o.rational_coords();
      Point q(static_cast<std::size_t>(n), Rational(0));
      for (std::size_t k = 0; k < map.size(); ++k) q[static_cast<std::size_t>(map[k])] = v[k];
      c.markers.push_back(normalize_point(q));
    }
    res.lines.push_back(std::move(c));
  }
  return res;
}

bool CurveReport::ok() const {
  for (bool b : markers_ok)
    if (!b) return false;
  return contained && dimension == 1;
}

std::string CurveReport::describe() const {
  std::ostringstream os;
  os << "contained=" << (contained ? "yes" : "no") << " dimension=" << dimension << " degree=" << degree.to_string();
  for (std::size_t i = 0; i < markers_ok.size(); ++i) os << " marker" << i << "=" << (markers_ok[i] ? "on" : "off");
  return os.str();
}

CurveReport verify_curve(const ProjScheme& X, const CurveOnSurface& C) {
  CurveReport r;
  try {
    r.contained = C.ideal.contains(X.ideal);
    HilbertData h = dimension_degree(C.ideal);
    r.dimension = h.dimension;
    r.degree = h.degree;
    for (const auto& m : C.markers) r.markers_ok.push_back(contains_point(C.ideal, m));
  } catch (const std::exception&) {
    r.contained = false;
  }
  return r;
}

IntersectionResult intersection_number(const ProjScheme& X, const CurveOnSurface& C, const CurveOnSurface& D,
                                       const std::optional<QIdeal>& singular) {
  (void)X;
  IntersectionResult r;
  QIdeal meet = C.ideal + D.ideal;
  HilbertData h = dimension_degree(meet);
  if (h.dimension >= 1) {
    r.common_component = true;
    r.note = "curves share a component";
    return r;
  }
  if (singular && h.dimension == 0) {
    HilbertData hs = dimension_degree(meet + *singular);
    if (hs.dimension >= 0) {
      r.meets_singular_locus = true;
      r.note = "intersection meets the singular locus";
      return r;
    }
  }
  r.number = h.dimension < 0 ? 0 : static_cast<int>(h.degree.num().get_si());
  return r;
}

void DivisorPairing::set(const std::string& a, const std::string& b, long value) {
  table_[{a, b}] = value;
  table_[{b, a}] = value;
}

long DivisorPairing::get(const std::string& a, const std::string& b) const {
  auto it = table_.find({a, b});
  if (it == table_.end()) throw std::out_of_range("missing pairing entry " + a + "." + b);
  return it->second;
}

long DivisorPairing::evaluate(const std::map<std::string, long>& e1, const std::map<std::string, long>& e2) const {
  long s = 0;
  for (const auto& [a, ca] : e1)
    for (const auto& [b, cb] : e2)
      if (ca && cb) s += ca * cb * get(a, b);
  return s;
}

std::map<std::string, long> parse_divisor(const std::string& text) {
  std::map<std::string, long> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size() || text.substr(i) == "0") return out;
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    long sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw std::invalid_argument("divisor: expected + or - at position " + std::to_string(i));
    }
    first = false;
    long coef = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      coef = std::stol(text.substr(i, j - i));
      i = j;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    std::size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '[' || text[j] == ']')) ++j;
    if (j == i) throw std::invalid_argument("divisor: expected a class name at position " + std::to_string(i));
    std::string name = text.substr(i, j - i);
    if (name.size() > 2 && name.front() == '[' && name.back() == ']') name = name.substr(1, name.size() - 2);
    out[name] += sign * coef;
    i = j;
  }
  return out;
}

}  // namespace k3

namespace k3 {

QMPoly plane_gcd(const std::vector<QMPoly>& forms) {
  if (forms.empty()) throw std::invalid_argument("plane_gcd: no forms");
  const RingPtr& W = forms[0].ring();
  if (W->nvars() != 3) throw std::invalid_argument("plane_gcd: expected three variables");
  // Dehomogenize at w2 and work in Q(w1)[w0].
  using TPoly = UniPoly<RatFunc>;
  auto to_t = [](const QMPoly& f) {
    std::vector<RatFunc> c;
    for (std::size_t i = 0; i < f.nterms(); ++i) {
      const Monomial& m = f.monomials()[i];
      std::size_t a = m[0];
      if (c.size() <= a) c.resize(a + 1);
      c[a] += RatFunc(QPoly::monomial(f.coeffs()[i], m[1]));
    }
    return TPoly(std::move(c));
  };
  TPoly g;
  for (const auto& f : forms)
    if (!f.is_zero()) g = gcd(g, to_t(f));
  if (g.is_zero()) return QMPoly(W);
  if (g.degree() > 0) g = g / gcd(g, g.derivative());
  QPoly den(Rational(1));
  for (const auto& c : g.coeffs()) den = den * c.den() / gcd_q(den, c.den());
  std::vector<QPoly> num;
  QPoly content;
  for (const auto& c : g.coeffs()) {
    num.push_back(c.num() * (den / c.den()));
    content = gcd_q(content, num.back());
  }
  int deg = 0;
  for (std::size_t a = 0; a < num.size(); ++a) {
    num[a] = num[a] / content;
    if (!num[a].is_zero()) deg = std::max(deg, static_cast<int>(a) + num[a].degree());
  }
  std::vector<std::pair<Monomial, Rational>> terms;
  for (std::size_t a = 0; a < num.size(); ++a)
    for (int b = 0; b <= num[a].degree(); ++b) {
      if (num[a].is_zero() || num[a].coeff(b).is_zero()) continue;
      Monomial m;
      m[0] = static_cast<std::uint16_t>(a);
      m[1] = static_cast<std::uint16_t>(b);
      m[2] = static_cast<std::uint16_t>(deg - static_cast<int>(a) - b);
      terms.emplace_back(m, num[a].coeff(b));
    }
  return QMPoly::from_terms(W, std::move(terms));
}

namespace {

/// The degree-e curve cut from Y inside the linear span given by `span` (n - e linear forms).
std::optional<QIdeal> component_in_span(const QIdeal& Y, const std::vector<QMPoly>& span, int e, std::mt19937& rng) {
  const RingPtr& R = Y.ring();
  const int n = R->nvars() - 1;
  std::uniform_int_distribution<int> dist(-9, 9);
  QIdeal L(R, span);
  QIdeal D;
  if (e == 1) {
    D = L;
  } else {
    // Random basis of the span, and dual forms recovering the coordinates u from x.
    Matrix<Rational> A(static_cast<int>(span.size()), n + 1);
    for (std::size_t r = 0; r < span.size(); ++r)
      for (int v = 0; v <= n; ++v) A(static_cast<int>(r), v) = span[r].coeff(Monomial::var(v));
    auto ker = A.kernel();
    std::vector<std::vector<Rational>> basis;
    for (int k = 0; k <= e; ++k) {
      std::vector<Rational> b(static_cast<std::size_t>(n + 1));
      for (const auto& kv : ker) {
        Rational c(dist(rng));
        for (int v = 0; v <= n; ++v) b[static_cast<std::size_t>(v)] += c * kv[static_cast<std::size_t>(v)];
      }
      basis.push_back(std::move(b));
    }
    Matrix<Rational> B(e + 1, n + 1);
    for (int k = 0; k <= e; ++k)
      for (int v = 0; v <= n; ++v) B(k, v) = basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
    if (B.rank() != e + 1) return std::nullopt;
    RingPtr U = PolyRing::projective(e + 1, "_u");
    std::vector<QMPoly> x_of_u;
    for (int v = 0; v <= n; ++v) {
      QMPoly f(U);
      for (int k = 0; k <= e; ++k)
        f += QMPoly::var(U, k).scaled(basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)]);
      x_of_u.push_back(f);
    }
    // Dual: u_k = sum_v W(k, v) x_v on the span, from a right inverse of B.
    std::vector<QMPoly> u_of_x;
    {
      // Solve B * W^T = I via the normal equations (B B^T) C = I, W^T = B^T C.
      Matrix<Rational> G(e + 1, 2 * (e + 1));
      for (int i = 0; i <= e; ++i) {
        for (int j = 0; j <= e; ++j) {
          Rational s;
          for (int v = 0; v <= n; ++v) s += B(i, v) * B(j, v);
          G(i, j) = s;
        }
        G(i, e + 1 + i) = Rational(1);
      }
      G.rref();
      for (int k = 0; k <= e; ++k) {
        QMPoly f(R);
        for (int v = 0; v <= n; ++v) {
          Rational w;
          for (int i = 0; i <= e; ++i) w += B(i, v) * G(i, e + 1 + k);
          if (!w.is_zero()) f += QMPoly::var(R, v).scaled(w);
        }
        u_of_x.push_back(f);
      }
    }
    QIdeal YU = saturate_irrelevant(QIdeal(U, substitute_all(Y.gens(), x_of_u)));
    QMPoly h;
    if (e == 2) {
      h = plane_gcd(YU.gens()).substitute(u_of_x);
    } else {
      RingPtr Pl = PolyRing::projective(3, "_w");
      std::vector<QMPoly> proj;
      for (int i = 0; i < 3; ++i) {
        QMPoly f(U);
        for (int k = 0; k <= e; ++k) f += QMPoly::var(U, k).scaled(Rational(dist(rng)));
        proj.push_back(f);
      }
      QMPoly hp = plane_gcd(image_of_map(YU, proj, Pl).gens());
      h = hp.substitute(substitute_all(proj, u_of_x));
    }
    if (h.is_zero()) return std::nullopt;
    D = saturate_irrelevant(L + h);
  }
  QIdeal C = saturate_irrelevant(D + Y);
  HilbertData hd = dimension_degree(C);
  if (hd.dimension != 1 || hd.degree != Rational(e)) return std::nullopt;
  return C;
}

/// Galois orbits of a random hyperplane section of the curve Y.
std::optional<std::vector<PointOrbit>> section_orbits(const QIdeal& Y, std::mt19937& rng, unsigned seed) {
  std::uniform_int_distribution<int> dist(-9, 9);
  const RingPtr& R = Y.ring();
  QMPoly l(R);
  for (int v = 0; v < R->nvars(); ++v) l += QMPoly::var(R, v).scaled(Rational(dist(rng)));
  QIdeal H = Y + l;
  if (dimension_degree(H).dimension != 0) return std::nullopt;
  return solve_points(H, seed);
}

/// Ideals of the unions of orbits whose degrees add up to e.
std::vector<QIdeal> orbit_groups(const std::vector<PointOrbit>& orbits, int e) {
  std::vector<QIdeal> out;
  const std::size_t m = orbits.size();
  if (m > 16) return out;
  for (unsigned mask = 1; mask < (1U << m); ++mask) {
    int total = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1U << i)) total += orbits[i].degree();
    if (total != e) continue;
    std::optional<QIdeal> I;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1U << i)) I = I ? intersect(*I, orbits[i].ideal) : orbits[i].ideal;
    out.push_back(*I);
  }
  return out;
}

}  // namespace

std::optional<QIdeal> component_through_point(const QIdeal& Y, const Point& p, int e, unsigned seed) {
  const RingPtr& R = Y.ring();
  const int n = R->nvars() - 1;
  if (e < 1 || e >= n) throw std::invalid_argument("component_through_point: bad degree");
  require_on(Y, p, "component_through_point");
  std::mt19937 rng(seed);
  ProjScheme ambient{QIdeal(R, {}), ""};
  QIdeal P = point_ideal(R, p);
  for (int trial = 0; trial < 4; ++trial) {
    auto orbits = section_orbits(Y, rng, seed + static_cast<unsigned>(trial));
    if (!orbits) continue;
    for (const auto& group : orbit_groups(*orbits, e)) {
      auto span = linear_system(ambient, intersect(group, P), 1);
      if (static_cast<int>(span.size()) != n - e) continue;
      auto C = component_in_span(Y, span, e, rng);
      if (C && contains_point(*C, p)) return C;
    }
  }
  return std::nullopt;
}

std::vector<QIdeal> components_of_degree(const QIdeal& Y, int e, unsigned seed) {
  const RingPtr& R = Y.ring();
  const int n = R->nvars() - 1;
  if (e < 1 || e >= n) throw std::invalid_argument("components_of_degree: bad degree");
  std::mt19937 rng(seed);
  ProjScheme ambient{QIdeal(R, {}), ""};
  // Per section, the ideals of orbit groups of total degree e (a component may split into
  // several rational orbits).
  std::vector<std::vector<QIdeal>> groups;
  for (int trial = 0; trial < 8 && groups.size() < 3; ++trial) {
    auto orbits = section_orbits(Y, rng, seed + static_cast<unsigned>(trial));
    if (!orbits) continue;
    groups.push_back(orbit_groups(*orbits, e));
  }
  std::vector<QIdeal> out;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      for (const auto& a : groups[i])
        for (const auto& b : groups[j]) {
          bool seen = false;
          for (const auto& D : out)
            if (a.contains(D) && b.contains(D)) seen = true;
          if (seen) continue;
          auto span = linear_system(ambient, intersect(a, b), 1);
          if (static_cast<int>(span.size()) != n - e) continue;
          auto C = component_in_span(Y, span, e, rng);
          if (C) out.push_back(*C);
        }
  return out;
}

}  // namespace k3
