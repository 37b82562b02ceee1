#include "k3/replay/runner.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <fnmatch.h>
#include <fstream>
#include <future>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "k3/fib/fibration.hpp"
#include "k3/poly/parse.hpp"

namespace k3::replay {

using nlohmann::json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped:requires-external-data";
  }
  return "?";
}

int Report::count(Status s) const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [&](const StepResult& r) { return r.status == s; }));
}

bool glob_match(const std::string& pattern, const std::string& id) {
  return pattern.empty() || fnmatch(pattern.c_str(), id.c_str(), 0) == 0;
}

namespace {

/// A step that cannot run because an external input is absent.
struct MissingInput {
  std::string file;
};

json rat_json(const Rational& r) {
  if (r.is_integer() && r.num().fits_slong_p()) return r.num().get_si();
  return r.to_string();
}

std::optional<Rational> as_rational(const json& v) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

bool same_value(const json& e, const json& m) {
  if (e.is_array() && m.is_array()) {
    if (e.size() != m.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!same_value(e[i], m[i])) return false;
    return true;
  }
  if (e.is_boolean() || m.is_boolean()) return e == m;
  auto re = as_rational(e), rm = as_rational(m);
  if (re && rm && (e.is_number() || m.is_number())) return *re == *rm;
  return e == m;
}

json sorted(json v) {
  if (v.is_array()) {
    for (auto& x : v) x = sorted(x);
    std::sort(v.begin(), v.end());
  }
  return v;
}

Place place_of(const json& t) {
  std::string s = t.is_string() ? t.get<std::string>() : std::to_string(t.get<long long>());
  if (s == "inf" || s == "oo") return Place{true, QPoly()};
  Rational a = Rational::parse(s);
  return Place{false, QPoly(std::vector<Rational>{-a, Rational(1)})};
}

std::vector<ExpectedFiber> expected_fibers(const json& table) {
  std::vector<ExpectedFiber> out;
  for (const auto& e : table) {
    ExpectedFiber f;
    f.type = KodairaType::parse(e["type"].get<std::string>());
    if (e.contains("residue_degree")) f.residue_degree = e["residue_degree"].get<int>();
    if (e.contains("count")) f.count = e["count"].get<int>();
    if (e.contains("disc_class")) f.disc_class = Integer(static_cast<long>(e["disc_class"].get<long long>()));
    out.push_back(f);
  }
  return out;
}

std::string fiber_key(const std::string& type, int degree, const std::optional<std::string>& disc) {
  std::string s = type;
  if (degree > 1) s += " over a degree-" + std::to_string(degree) + " place";
  if (disc) s += " (disc class " + *disc + ")";
  return s;
}

/// Multiset of expected entries, one string per fibre orbit, sorted; classes shown squarefree.
json render_expected(const json& table) {
  json out = json::array();
  for (const auto& e : table) {
    int count = e.contains("count") ? e["count"].get<int>() : 1;
    int degree = e.contains("residue_degree") ? e["residue_degree"].get<int>() : 1;
    std::optional<std::string> disc;
    if (e.contains("disc_class")) disc = squarefree_part(Integer(static_cast<long>(e["disc_class"].get<long long>()))).get_str();
    std::string name = KodairaType::parse(e["type"].get<std::string>()).name();
    for (int i = 0; i < count; ++i) out.push_back(fiber_key(name, degree, disc));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Actual reducible (non-I1) fibres in the same rendering; classes shown where expected.
json render_actual(const FiberTable& t, const json& expected) {
  bool want_disc = false;
  for (const auto& e : expected) want_disc = want_disc || e.contains("disc_class");
  json out = json::array();
  for (const auto& f : t.fibers) {
    if (f.type == KodairaType{KodairaType::Kind::I, 1}) continue;
    std::optional<std::string> disc;
    if (want_disc && f.residue_degree() > 1 && f.disc_class) disc = squarefree_part(*f.disc_class).get_str();
    out.push_back(fiber_key(f.type.name(), f.residue_degree(), disc));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QMPoly> minimal_generators(const QIdeal& I) {
  auto gb = I.minimalized().gens();
  std::stable_sort(gb.begin(), gb.end(), [](const QMPoly& a, const QMPoly& b) { return a.max_degree() < b.max_degree(); });
  std::vector<QMPoly> kept;
  for (const auto& g : gb) {
    if (!kept.empty() && QIdeal(I.ring(), kept).contains(g)) continue;
    kept.push_back(g);
  }
  return kept;
}

/// Sorted generator degrees if X is a complete intersection, else a description.
json complete_intersection(const ProjScheme& X) {
  auto gens = minimal_generators(X.ideal);
  HilbertData h = X.hilbert();
  int codim = X.ring()->nvars() - 1 - h.dimension;
  json degs = json::array();
  std::vector<int> d;
  for (const auto& g : gens) d.push_back(g.max_degree());
  std::sort(d.begin(), d.end());
  for (int x : d) degs.push_back(x);
  if (static_cast<int>(gens.size()) == codim) return degs;
  return "not a complete intersection: " + std::to_string(gens.size()) + " generators in codimension " + std::to_string(codim);
}

json poly_list(const std::vector<QMPoly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

QIdeal read_data_ideal(const std::filesystem::path& file, const RingPtr& ring, const char* key) {
  YAML::Node n = YAML::LoadFile(file.string());
  if (!n[key] || !n[key].IsSequence()) throw std::invalid_argument(file.filename().string() + ": missing list '" + key + "'");
  std::vector<QMPoly> gens;
  for (const auto& e : n[key]) gens.push_back(parse_poly<Rational>(e.as<std::string>(), ring));
  return QIdeal(ring, gens);
}

struct Context {
  const PipelineSpec& spec;
  const RunOptions& options;
  unsigned seed;

  std::mutex mu;
  std::map<std::string, ProjScheme> schemes;
  std::map<std::string, CurveOnSurface> curves;
  std::map<std::string, Pencil> pencils;
  std::map<std::string, RationalMap> maps;
  std::map<std::string, std::shared_future<std::shared_ptr<const FibrationModel>>> models;

  template <class M>
  typename M::mapped_type get(M& m, const std::string& name, const char* what) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = m.find(name);
    if (it == m.end()) throw std::invalid_argument(std::string("'") + name + "' is not a " + what);
    return it->second;
  }
  ProjScheme scheme(const std::string& n) { return get(schemes, n, "scheme"); }
  CurveOnSurface curve(const std::string& n) { return get(curves, n, "curve"); }
  Pencil pencil(const std::string& n) { return get(pencils, n, "pencil"); }
  RationalMap map(const std::string& n) { return get(maps, n, "map"); }

  template <class M, class V>
  void put(M& m, const std::string& name, V v) {
    std::lock_guard<std::mutex> lock(mu);
    m.insert_or_assign(name, std::move(v));
  }

  /// Built once per (pencil, section); concurrent requests wait for the first.
  std::shared_ptr<const FibrationModel> model(const std::string& key, const Pencil& P, const CurveOnSurface& section) {
    std::shared_future<std::shared_ptr<const FibrationModel>> fut;
    std::promise<std::shared_ptr<const FibrationModel>> prom;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = models.find(key + "|" + section.label);
      if (it == models.end()) {
        fut = prom.get_future().share();
        models.emplace(key + "|" + section.label, fut);
        owner = true;
      } else {
        fut = it->second;
      }
    }
    if (owner) {
      try {
        prom.set_value(std::make_shared<const FibrationModel>(build_model(P, section)));
      } catch (...) {
        prom.set_exception(std::current_exception());
      }
    }
    return fut.get();
  }

  std::filesystem::path data_file(const std::string& name) const {
    if (!options.data_dir) throw MissingInput{name};
    auto p = *options.data_dir / name;
    if (!std::filesystem::exists(p)) throw MissingInput{name};
    return p;
  }
};

class StepRun {
public:
  StepRun(const Step& step, Context& ctx, StepResult& res) : st_(step), ctx_(ctx), res_(res), p_(step.params) {}

  void execute() {
    const std::string& k = st_.kind;
    if (k == "define_scheme") define_scheme();
    else if (k == "verify_degree_dim") verify_degree_dim();
    else if (k == "verify_singular_locus") verify_singular_locus();
    else if (k == "project_point") project_point();
    else if (k == "map_linear_system") map_linear_system();
    else if (k == "verify_birational") verify_birational();
    else if (k == "verify_curve") verify_curve();
    else if (k == "intersection_check") intersection_check();
    else if (k == "pairing_check") pairing_check();
    else if (k == "pencil") pencil();
    else if (k == "fiber_table_check") fiber_table_check();
    else if (k == "component_degrees_check") component_degrees_check();
    else if (k == "residual_pencil_check") residual_pencil_check();
    else throw std::logic_error("unknown step kind " + k);
  }

private:
  const Step& st_;
  Context& ctx_;
  StepResult& res_;
  const json& p_;

  const Expectation* expectation(const std::string& key) const {
    for (const auto& e : st_.expect)
      if (e.key == key) return &e;
    return nullptr;
  }
  bool wants(const std::string& key) const { return expectation(key) != nullptr; }

  /// Records a check against the expectation for `key`, or an implicit one when given.
  void check(const std::string& key, const json& measured, std::optional<json> implicit = std::nullopt,
             bool multiset = false) {
    const Expectation* e = expectation(key);
    if (!e && !implicit) return;
    Check c;
    c.key = key;
    c.expected = e ? e->value : *implicit;
    c.measured = measured;
    c.basis = e ? e->basis : "computed";
    c.claim = e ? e->claim : "";
    c.ok = multiset ? same_value(sorted(c.expected), sorted(measured)) : same_value(c.expected, measured);
    res_.checks.push_back(std::move(c));
  }

  void check_with(const std::string& key, const json& expected_rendered, const json& measured, bool ok) {
    const Expectation* e = expectation(key);
    if (!e) return;
    Check c;
    c.key = key;
    c.expected = expected_rendered;
    c.measured = measured;
    c.basis = e->basis;
    c.claim = e->claim;
    c.ok = ok;
    res_.checks.push_back(std::move(c));
  }

  std::string s(const char* key) const { return p_.at(key).is_string() ? p_.at(key).get<std::string>() : p_.at(key).dump(); }

  // ---- kinds ----

  void define_scheme() {
    RingPtr ring = ctx_.spec.rings.at(s("ring"));
    QIdeal I;
    if (p_.contains("data_file")) {
      I = read_data_ideal(ctx_.data_file(s("data_file")), ring, "equations");
    } else {
      std::vector<QMPoly> gens;
      for (const auto& e : p_["equations"]) gens.push_back(parse_poly<Rational>(e.get<std::string>(), ring));
      I = QIdeal(ring, gens);
    }
    ProjScheme X{I, st_.id};
    check("ambient_dim", ring->nvars() - 1);
    check("generators", static_cast<long long>(I.gens().size()));
    if (wants("dimension") || wants("degree")) {
      HilbertData h = X.hilbert();
      check("dimension", h.dimension);
      check("degree", rat_json(h.degree));
    }
    ctx_.put(ctx_.schemes, st_.id, X);
  }

  static Rational invariant(const ProjScheme& X, const HilbertData& h) {
    return h.degree - Rational(2 * (X.ring()->nvars() - 1));
  }

  void verify_degree_dim() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    HilbertData h = X.hilbert();
    check("degree", rat_json(h.degree));
    check("dimension", h.dimension);
    check("ambient_dim", X.ring()->nvars() - 1);
    check("invariant", rat_json(invariant(X, h)));
    if (wants("complete_intersection")) check("complete_intersection", complete_intersection(X));
    if (wants("invariant_drop")) {
      if (!p_.contains("compare_to")) throw std::invalid_argument("invariant_drop needs 'compare_to'");
      ProjScheme Y = ctx_.scheme(s("compare_to"));
      check("invariant_drop", rat_json(invariant(Y, Y.hilbert()) - invariant(X, h)));
    }
    res_.info["hilbert_numerator"] = h.numerator;
  }

  void verify_singular_locus() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    HilbertData hx = X.hilbert();
    int codim = X.ring()->nvars() - 1 - hx.dimension;
    QIdeal sing = singular_subscheme(X, codim);
    HilbertData h = dimension_degree(sing);
    check("empty", h.dimension < 0);
    check("dimension", h.dimension);
    check("degree", h.dimension < 0 ? json(0) : rat_json(h.degree));
    if (h.dimension == 0) {
      auto orbits = solve_points(sing, ctx_.seed);
      int rational = 0;
      json degs = json::array(), mults = json::array(), info = json::array();
      for (const auto& o : orbits) {
        rational += o.is_rational();
        degs.push_back(o.degree());
        Rational m = multiplicity_at_orbit(sing, o);
        mults.push_back(rat_json(m));
        info.push_back(o.to_string() + ", multiplicity " + m.to_string());
      }
      check("rational_points", rational);
      check("orbit_degrees", degs, std::nullopt, true);
      json common = mults.empty() ? json(nullptr) : mults[0];
      for (const auto& m : mults)
        if (m != common) common = mults;
      check("point_multiplicity", common);
      res_.info["orbits"] = info;
    } else {
      for (const char* k : {"rational_points", "orbit_degrees", "point_multiplicity"})
        check(k, "singular locus is not zero-dimensional");
    }
    ctx_.put(ctx_.schemes, st_.id, ProjScheme{sing, st_.id});
  }

  void project_point() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    ProjScheme start = X;
    json degrees = json::array(), ambients = json::array(), cones = json::array(), birational = json::array();
    bool drops_match = true;
    bool need_cone = wants("tangent_cone_degrees") || wants("drop_matches_multiplicity");
    bool need_bir = wants("birational") || wants("drop_matches_multiplicity");
    RationalMap last;
    for (const auto& pt : p_["points"]) {
      Point q = parse_point(pt.get<std::string>());
      Rational before = X.hilbert().degree;
      Rational m;
      if (need_cone) {
        m = dimension_degree(tangent_cone(X, q)).degree;
        cones.push_back(rat_json(m));
      }
      auto [Y, f] = project_from_point(X, q);
      Rational after = Y.hilbert().degree;
      degrees.push_back(rat_json(after));
      ambients.push_back(Y.ring()->nvars() - 1);
      if (need_bir) {
        bool b = is_birational(f, ctx_.seed).birational;
        birational.push_back(b);
        if (b && need_cone && before - after != m) drops_match = false;
      }
      X = ProjScheme{Y.ideal, st_.id};
      last = f;
    }
    check("degrees", degrees);
    check("ambients", ambients);
    check("final_degree", degrees.back());
    check("final_ambient", ambients.back());
    check("tangent_cone_degrees", cones);
    check("birational", birational);
    check("drop_matches_multiplicity", drops_match);
    check("invariant_drop", rat_json(invariant(start, start.hilbert()) - invariant(X, X.hilbert())));
    if (wants("complete_intersection")) check("complete_intersection", complete_intersection(X));
    ctx_.put(ctx_.schemes, st_.id, X);
    ctx_.put(ctx_.maps, st_.id, last);
  }

  QIdeal through_ideal(const ProjScheme& X) {
    const RingPtr& R = X.ring();
    std::optional<QIdeal> Z;
    for (const auto& item : p_.value("through", json::array())) {
      std::string t = item.get<std::string>();
      QIdeal part = t[0] == '(' ? point_ideal(R, parse_point(t)) : curve_or_scheme(t);
      Z = Z ? intersect(*Z, part) : part;
    }
    return Z ? *Z : QIdeal(R, {});
  }

  QIdeal curve_or_scheme(const std::string& name) {
    {
      std::lock_guard<std::mutex> lock(ctx_.mu);
      if (ctx_.curves.count(name)) return ctx_.curves.at(name).ideal;
    }
    return ctx_.scheme(name).ideal;
  }

  void map_linear_system() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    std::vector<QMPoly> forms;
    if (p_.contains("forms_data")) {
      forms = read_data_ideal(ctx_.data_file(s("forms_data")), X.ring(), "forms").gens();
    } else {
      forms = linear_system(X, through_ideal(X), p_["degree"].get<int>());
    }
    if (forms.empty()) throw std::invalid_argument("the linear system is empty");
    RationalMap f;
    f.source = X.ideal;
    f.forms = forms;
    f.target = PolyRing::projective(static_cast<int>(forms.size()), "y");
    f.image = image_of_map(X.ideal, forms, f.target);
    ProjScheme Y{*f.image, st_.id};
    HilbertData h = Y.hilbert();
    check("ambient_dim", static_cast<int>(forms.size()) - 1);
    check("degree", rat_json(h.degree));
    check("dimension", h.dimension);
    if (wants("birational")) check("birational", is_birational(f, ctx_.seed).birational);
    res_.info["forms"] = poly_list(forms);
    ctx_.put(ctx_.schemes, st_.id, Y);
    ctx_.put(ctx_.maps, st_.id, f);
    if (p_.contains("pullbacks")) {
      json pulled = json::object();
      for (auto it = p_["pullbacks"].begin(); it != p_["pullbacks"].end(); ++it) {
        Point q = parse_point(it.value()["point"].get<std::string>());
        Point through = parse_point(it.value()["through"].get<std::string>());
        QIdeal pre = preimage_of_point(f, q);
        auto C = component_through_point(pre, through, it.value()["degree"].get<int>(), ctx_.seed);
        if (!C) throw std::invalid_argument("no component of degree " + it.value()["degree"].dump() + " through " +
                                            point_to_string(through) + " in the preimage of " + point_to_string(q));
        CurveOnSurface curve{it.key(), *C, {through}, it.value().value("field", "QQ")};
        pulled[it.key()] = poly_list(minimal_generators(*C));
        ctx_.put(ctx_.curves, it.key(), curve);
      }
      res_.info["pullbacks"] = pulled;
    }
  }

  void verify_birational() {
    RationalMap f = ctx_.map(s("map"));
    auto rep = is_birational(f, ctx_.seed);
    check("birational", rep.birational);
    json slices = json::array();
    for (const auto& r : rep.slice_degrees) slices.push_back(rat_json(r));
    res_.info["slice_degrees"] = slices;
  }

  QIdeal fiber(const ProjScheme& X, const json& f) {
    if (f.contains("add")) {
      std::vector<QMPoly> gens = X.ideal.gens();
      for (const auto& e : f["add"]) gens.push_back(parse_poly<Rational>(e.get<std::string>(), X.ring()));
      return saturate_irrelevant(QIdeal(X.ring(), gens));
    }
    Pencil P = f.contains("pencil") ? ctx_.pencil(f["pencil"].get<std::string>())
                                    : make_pencil(X, parse_poly<Rational>(f["forms"][0].get<std::string>(), X.ring()),
                                                  parse_poly<Rational>(f["forms"][1].get<std::string>(), X.ring()));
    return fiber_ideal(P, place_of(f["t"]));
  }

  void verify_curve() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    const json& curves = p_["curves"];
    std::map<std::string, CurveOnSurface> local;
    std::set<std::string> pending;
    for (auto it = curves.begin(); it != curves.end(); ++it) pending.insert(it.key());
    auto lookup = [&](const std::string& n) -> std::optional<QIdeal> {
      if (local.count(n)) return local.at(n).ideal;
      if (curves.contains(n)) return std::nullopt;  // defined later in this step
      return ctx_.curve(n).ideal;
    };
    json generators = json::object();
    while (!pending.empty()) {
      bool progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        const std::string name = *it;
        const json& c = curves[name];
        std::optional<QIdeal> I;
        if (c.contains("equations")) {
          std::vector<QMPoly> gens;
          for (const auto& e : c["equations"]) gens.push_back(parse_poly<Rational>(e.get<std::string>(), X.ring()));
          I = QIdeal(X.ring(), gens);
        } else if (c.contains("component")) {
          const json& cc = c["component"];
          Point through = parse_point(cc["through"].get<std::string>());
          I = component_through_point(fiber(X, cc["fiber"]), through, cc["degree"].get<int>(), ctx_.seed);
          if (!I) throw std::invalid_argument(name + ": no component of degree " + cc["degree"].dump() + " through " + point_to_string(through));
        } else if (c.contains("residual")) {
          std::optional<QIdeal> minus;
          bool ready = true;
          for (const auto& m : c["residual"]["minus"]) {
            auto J = lookup(m.get<std::string>());
            if (!J) {
              ready = false;
              break;
            }
            minus = minus ? intersect(*minus, *J) : *J;
          }
          if (!ready) {
            ++it;
            continue;
          }
          I = saturate_irrelevant(quotient(fiber(X, c["residual"]["fiber"]), *minus));
        } else {
          const json& pc = c["preimage"];
          QIdeal pre = preimage_of_point(ctx_.map(pc["map"].get<std::string>()), parse_point(pc["point"].get<std::string>()));
          if (pc.contains("through")) {
            I = component_through_point(pre, parse_point(pc["through"].get<std::string>()), pc.value("degree", 1), ctx_.seed);
            if (!I) throw std::invalid_argument(name + ": no component through the marker in the preimage");
          } else {
            I = pre;
          }
        }
        CurveOnSurface C{name, *I, {}, c.value("field", "QQ")};
        for (const auto& m : c.value("markers", json::array())) C.markers.push_back(parse_point(m.get<std::string>()));
        CurveReport rep = k3::verify_curve(X, C);
        check(name + ".on_surface", rep.contained, true);
        check(name + ".dimension", rep.dimension, 1);
        check(name + ".degree", rat_json(rep.degree));
        if (!C.markers.empty()) {
          bool all = std::all_of(rep.markers_ok.begin(), rep.markers_ok.end(), [](bool b) { return b; });
          check(name + ".markers", all, true);
        }
        generators[name] = poly_list(minimal_generators(C.ideal));
        local[name] = C;
        it = pending.erase(it);
        progress = true;
      }
      if (!progress) throw std::invalid_argument("curves of this step refer to each other in a cycle");
    }
    for (auto& [name, C] : local) ctx_.put(ctx_.curves, name, C);
    res_.info["curves"] = generators;
  }

  void intersection_check() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    for (const auto& e : st_.expect) {
      if (e.key == "configuration") continue;
      auto dot = e.key.find('.');
      CurveOnSurface a = ctx_.curve(e.key.substr(0, dot)), b = ctx_.curve(e.key.substr(dot + 1));
      IntersectionResult r = intersection_number(X, a, b);
      check(e.key, r.number ? json(*r.number) : json(r.note));
    }
    if (p_.contains("configuration")) {
      std::vector<CurveOnSurface> cs;
      for (const auto& n : p_["configuration"]) cs.push_back(ctx_.curve(n.get<std::string>()));
      auto type = detect_configuration(X, cs);
      check("configuration", type ? json(type->name()) : json("none"));
    }
  }

  void pairing_check() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    long self = p_.value("self", -2);
    std::vector<std::string> names = p_.value("classes", std::vector<std::string>{});
    DivisorPairing pairing;
    Rational dX = X.hilbert().degree;
    if (!dX.is_integer()) throw std::invalid_argument("surface degree is not an integer");
    pairing.set("H", "H", dX.num().get_si());
    json table = json::object();
    std::vector<CurveOnSurface> cs;
    for (const auto& n : names) cs.push_back(ctx_.curve(n));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      Rational d = dimension_degree(cs[i].ideal).degree;
      pairing.set("H", names[i], d.num().get_si());
      pairing.set(names[i], names[i], self);
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        auto r = intersection_number(X, cs[i], cs[j]);
        if (!r.number) throw std::invalid_argument(names[i] + "." + names[j] + ": " + r.note);
        pairing.set(names[i], names[j], *r.number);
        table[names[i] + "." + names[j]] = *r.number;
      }
    }
    check("square", pairing.square(parse_divisor(s("expression"))));
    res_.info["pairings"] = table;
  }

  std::pair<QMPoly, QMPoly> forms(const ProjScheme& X, const json& f) const {
    return {parse_poly<Rational>(f[0].get<std::string>(), X.ring()), parse_poly<Rational>(f[1].get<std::string>(), X.ring())};
  }

  void pencil() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    std::optional<Pencil> chosen;
    std::string label;
    if (p_.contains("forms")) {
      auto [f, g] = forms(X, p_["forms"]);
      chosen = make_pencil(X, f, g);
    } else {
      json readings = json::object();
      std::optional<CurveOnSurface> section;
      if (p_.contains("section")) section = ctx_.curve(s("section"));
      for (const auto& r : p_["readings"]) {
        std::string l = r["label"].get<std::string>();
        try {
          auto [f, g] = forms(X, r["forms"]);
          Pencil P = make_pencil(X, f, g);
          if (p_.contains("select")) {
            auto m = ctx_.model(st_.id + "#" + l, P, *section);
            MatchMode mode = p_.value("mode", "exact") == "contains" ? MatchMode::Contains : MatchMode::Exact;
            auto rep = match_table(m->table, expected_fibers(p_["select"]), mode);
            if (!rep.matched) {
              readings[l] = "table does not match: " + rep.to_string();
              continue;
            }
          }
          readings[l] = "validates";
          if (!chosen) {
            chosen = P;
            label = l;
          }
        } catch (const std::exception& e) {
          readings[l] = std::string("rejected: ") + e.what();
        }
      }
      res_.info["readings"] = readings;
      if (!chosen) throw std::invalid_argument("no reading of the pencil validates");
      check("reading", label);
    }
    if (wants("generic_degree") || wants("generic_dimension")) {
      GenericFiber C = generic_fiber(*chosen);
      check("generic_degree", rat_json(C.degree));
      check("generic_dimension", C.dimension);
    }
    res_.info["pencil"] = chosen->to_string();
    ctx_.put(ctx_.pencils, st_.id, *chosen);
    if (!label.empty() && p_.contains("section")) {
      // Share the selecting model with later table checks.
      std::lock_guard<std::mutex> lock(ctx_.mu);
      auto it = ctx_.models.find(st_.id + "#" + label + "|" + s("section"));
      if (it != ctx_.models.end()) ctx_.models.emplace(st_.id + "|" + s("section"), it->second);
    }
  }

  std::pair<std::string, Pencil> pencil_param() {
    const json& pc = p_["pencil"];
    if (pc.is_string()) return {pc.get<std::string>(), ctx_.pencil(pc.get<std::string>())};
    ProjScheme X = ctx_.scheme(pc["scheme"].get<std::string>());
    auto [f, g] = forms(X, pc["forms"]);
    return {st_.id, make_pencil(X, f, g)};
  }

  void fiber_table_check() {
    auto [key, P] = pencil_param();
    CurveOnSurface section = ctx_.curve(s("section"));
    std::shared_ptr<const FibrationModel> m;
    try {
      m = ctx_.model(key, P, section);
    } catch (const std::exception& e) {
      check("section", std::string("model not built: ") + e.what(), true);
      throw;
    }
    check("section", true, true);
    if (const Expectation* e = expectation("table")) {
      MatchMode mode = p_.value("mode", "exact") == "contains" ? MatchMode::Contains : MatchMode::Exact;
      auto rep = match_table(m->table, expected_fibers(e->value), mode);
      json expected = render_expected(e->value);
      if (mode == MatchMode::Contains) expected = json{{"contains", expected}};
      check_with("table", expected, render_actual(m->table, e->value), rep.matched);
      for (const auto& mm : rep.mismatches) res_.diff.push_back("table: " + mm);
    }
    check("euler", m->table.euler_total());
    json fibers = json::array();
    for (const auto& f : m->table.fibers) fibers.push_back(f.to_string());
    res_.info["fibers"] = fibers;
    res_.info["degree_chain"] = m->cubic.degree_chain;
    res_.info["pencil"] = P.to_string();
  }

  void component_degrees_check() {
    auto [key, P] = pencil_param();
    std::vector<Place> places;
    if (p_.contains("places")) {
      for (const auto& t : p_["places"]) places.push_back(place_of(t));
    } else {
      auto m = ctx_.model(key, P, ctx_.curve(s("section")));
      KodairaType want = KodairaType::parse(s("select_type"));
      for (const auto& f : m->table.fibers)
        if (f.type == want) places.push_back(f.place);
    }
    json shapes = json::array(), info = json::array();
    for (const auto& pl : places) {
      ComponentsResult r = reducible_fiber_components(P, pl, ctx_.seed);
      json degs = json::array();
      for (const auto& c : r.components)
        for (int i = 0; i < c.multiplicity; ++i) degs.push_back(c.degree);
      if (!r.complete()) degs.push_back("incomplete");
      shapes.push_back(degs);
      info.push_back(pl.to_string() + ": " + r.to_string());
    }
    check("shapes", sorted(shapes), std::nullopt, true);
    res_.info["places"] = info;
  }

  void residual_pencil_check() {
    ProjScheme X = ctx_.scheme(s("scheme"));
    std::vector<CurveOnSurface> cs;
    std::optional<QIdeal> F;
    for (const auto& n : p_["support"]) {
      cs.push_back(ctx_.curve(n.get<std::string>()));
      F = F ? intersect(*F, cs.back().ideal) : cs.back().ideal;
    }
    if (wants("configuration")) {
      auto type = detect_configuration(X, cs);
      check("configuration", type ? json(type->name()) : json("none"));
    }
    std::optional<Pencil> P;
    json measured;
    try {
      P = residual_pencil(X, *F);
      measured = json::array({P->f.to_string(), P->g.to_string()});
    } catch (const std::invalid_argument& e) {
      measured = e.what();
      json systems = json::object();
      for (int d = 1; d <= 2; ++d) systems["degree " + std::to_string(d)] = linear_system(X, *F, d).size();
      res_.info["forms_through_support"] = systems;
    }
    if (const Expectation* e = expectation("pencil")) {
      bool same = false;
      if (P) {
        auto [f, g] = forms(X, e->value);
        same = same_pencil(*P, f, g);
      }
      check_with("pencil", e->value, same ? e->value : measured, same);
    }
    if (P) {
      res_.info["pencil"] = P->to_string();
      ctx_.put(ctx_.pencils, st_.id, *P);
    }
  }
};

void finish_checks(const Step& st, StepResult& r) {
  for (const auto& e : st.expect) {
    bool seen = std::any_of(r.checks.begin(), r.checks.end(), [&](const Check& c) { return c.key == e.key; });
    if (seen) continue;
    Check c;
    c.key = e.key;
    c.expected = e.value;
    c.measured = "not evaluated";
    c.basis = e.basis;
    c.claim = e.claim;
    r.checks.push_back(std::move(c));
  }
  for (const auto& c : r.checks)
    if (!c.ok) r.diff.push_back(c.key + ": expected " + c.expected.dump() + ", got " + c.measured.dump());
  if (!r.diff.empty()) r.status = Status::Fail;
}

}  // namespace

Report run(const PipelineSpec& spec, const RunOptions& options) {
  const std::size_t n = spec.steps.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[spec.steps[i].id] = i;

  // Selected steps and their dependency closure.
  std::vector<bool> selected(n, false), needed(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (glob_match(options.filter, spec.steps[i].id)) {
      selected[i] = true;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    if (needed[i]) continue;
    needed[i] = true;
    for (const auto& d : spec.steps[i].deps) stack.push_back(index.at(d));
  }

  Context ctx{spec, options, options.seed ? *options.seed : spec.seed, {}, {}, {}, {}, {}, {}};
  std::vector<StepResult> results(n);
  std::vector<int> waiting(n, 0);
  std::vector<std::vector<std::size_t>> dependents(n);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!needed[i]) continue;
    ++remaining;
    for (const auto& d : spec.steps[i].deps) {
      ++waiting[i];
      dependents[index.at(d)].push_back(i);
    }
  }

  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (needed[i] && waiting[i] == 0) ready.push_back(i);

  auto execute = [&](std::size_t i) {
    const Step& st = spec.steps[i];
    StepResult& r = results[i];
    r.id = st.id;
    r.kind = st.kind;
    // Inherit the state of dependencies.
    for (const auto& d : st.deps) {
      const StepResult& dr = results[index.at(d)];
      if (dr.status == Status::Skipped && r.status != Status::Fail) {
        r.status = Status::Skipped;
        r.missing = dr.missing;
      } else if (dr.status == Status::Fail) {
        r.status = Status::Fail;
        r.diff.push_back("blocked by failed step " + d);
      }
    }
    if (r.status == Status::Pass) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        StepRun(st, ctx, r).execute();
      } catch (const MissingInput& m) {
        r.status = Status::Skipped;
        r.missing = m.file;
      } catch (const std::exception& e) {
        r.diff.push_back(std::string("error: ") + e.what());
        r.status = Status::Fail;
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    if (r.status == Status::Skipped) {
      r.checks.clear();
      return;
    }
    finish_checks(st, r);
  };

  int jobs = std::max(1, options.jobs);
  auto worker = [&]() {
    std::unique_lock<std::mutex> lock(mu);
    while (true) {
      cv.wait(lock, [&] { return !ready.empty() || remaining == 0; });
      if (remaining == 0) return;
      // Lowest spec index first keeps single-job runs in file order.
      auto it = std::min_element(ready.begin(), ready.end());
      std::size_t i = *it;
      ready.erase(it);
      lock.unlock();
      execute(i);
      lock.lock();
      --remaining;
      for (std::size_t j : dependents[i])
        if (--waiting[j] == 0) ready.push_back(j);
      cv.notify_all();
    }
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  Report rep;
  rep.pipeline = spec.name;
  rep.spec = spec.origin;
  rep.seed = ctx.seed;
  for (std::size_t i = 0; i < n; ++i) {
    if (!selected[i]) continue;
    const Step& st = spec.steps[i];
    for (const auto& e : st.expect)
      if (e.basis == "claim") ++rep.coverage.claims;
    if (results[i].status == Status::Skipped) {
      for (const auto& e : st.expect)
        if (e.basis == "claim") ++rep.coverage.skipped;
    } else {
      for (const auto& c : results[i].checks)
        if (c.basis == "claim") ++rep.coverage.checked;
    }
    rep.steps.push_back(std::move(results[i]));
  }
  return rep;
}

json report_to_json(const Report& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    json checks = json::array();
    for (const auto& c : s.checks) {
      json j = {{"key", c.key}, {"expected", c.expected}, {"measured", c.measured}, {"ok", c.ok}, {"basis", c.basis}};
      if (!c.claim.empty()) j["claim"] = c.claim;
      checks.push_back(j);
    }
    json js = {{"id", s.id}, {"kind", s.kind}, {"status", status_name(s.status)}, {"checks", checks}};
    if (!s.info.empty()) js["info"] = s.info;
    if (!s.diff.empty()) js["diff"] = s.diff;
    if (!s.missing.empty()) js["missing"] = s.missing;
    steps.push_back(js);
  }
  return {{"pipeline", r.pipeline},
          {"spec", r.spec},
          {"seed", r.seed},
          {"coverage", {{"claims", r.coverage.claims}, {"checked", r.coverage.checked}, {"skipped", r.coverage.skipped}}},
          {"summary",
           {{"steps", r.steps.size()},
            {"pass", r.count(Status::Pass)},
            {"fail", r.count(Status::Fail)},
            {"skipped", r.count(Status::Skipped)}}},
          {"steps", steps}};
}

std::string render_report(const Report& r, Format format) {
  if (format == Format::Structured) return report_to_json(r).dump(2) + "\n";
  std::ostringstream os;
  os << "pipeline " << r.pipeline << " (" << r.spec << "), seed " << r.seed << "\n";
  for (const auto& s : r.steps) {
    os << std::left << std::setw(10) << ("[" + std::string(s.status == Status::Skipped ? "skip" : status_name(s.status)) + "]")
       << std::setw(24) << s.id << " " << std::setw(24) << s.kind;
    if (s.status != Status::Skipped) os << std::fixed << std::setprecision(2) << s.seconds << "s";
    os << "\n";
    if (s.status == Status::Skipped) os << "          requires external data: " << s.missing << "\n";
    for (const auto& c : s.checks) {
      os << "          " << (c.ok ? "ok   " : "FAIL ") << c.key << " = " << c.measured.dump();
      if (!c.ok) os << " (expected " << c.expected.dump() << ")";
      if (!c.claim.empty()) os << "  \"" << c.claim << "\"";
      os << "\n";
    }
    for (const auto& d : s.diff)
      if (d.rfind("error", 0) == 0 || d.rfind("blocked", 0) == 0 || d.rfind("table:", 0) == 0) os << "          " << d << "\n";
  }
  os << "coverage: " << r.coverage.claims << " claims, " << r.coverage.checked << " checked, " << r.coverage.skipped
     << " skipped\n";
  os << "summary: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, " << r.count(Status::Skipped)
     << " skipped\n";
  return os.str();
}

}  // namespace k3::replay
