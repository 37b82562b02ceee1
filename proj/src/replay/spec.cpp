#include "k3/replay/spec.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "k3/fib/weierstrass.hpp"
#include "k3/geom/geometry.hpp"
#include "k3/poly/parse.hpp"

namespace k3::replay {

using nlohmann::json;

SpecError::SpecError(const std::string& origin, int line, int column, const std::string& message)
    : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) + ":" + std::to_string(column) : "") + ": " +
                         message),
      line_(line),
      column_(column),
      message_(message) {}

const Step* PipelineSpec::find(const std::string& id) const {
  for (const auto& s : steps)
    if (s.id == id) return &s;
  return nullptr;
}

std::optional<std::string> PipelineSpec::producer(const std::string& name) const {
  for (const auto& s : steps)
    for (const auto& d : s.defines)
      if (d == name) return s.id;
  return std::nullopt;
}

const std::vector<std::string>& step_kinds() {
  static const std::vector<std::string> kinds = {
      "define_scheme",   "verify_degree_dim",  "verify_singular_locus", "project_point",
      "map_linear_system", "verify_birational", "verify_curve",          "intersection_check",
      "pairing_check",   "pencil",             "fiber_table_check",     "component_degrees_check",
      "residual_pencil_check"};
  return kinds;
}

namespace {

/// JSON pointer token escaping: '~' becomes "~0", '/' becomes "~1".
std::string escape_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

struct Mark {
  int line = 0, column = 0;
};

/// YAML converted to JSON, with the source position of every node keyed by JSON pointer.
struct Doc {
  json root;
  std::map<std::string, Mark> marks;
};

json scalar_value(const YAML::Node& n) {
  const std::string& s = n.Scalar();
  if (n.Tag() == "!") return s;  // quoted
  if (s == "true") return true;
  if (s == "false") return false;
  if (s == "null" || s == "~") return nullptr;
  if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || ((s[0] == '-' || s[0] == '+') && s.size() > 1))) {
    std::size_t used = 0;
    try {
      long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  return s;
}

json convert(const YAML::Node& n, const std::string& ptr, Doc& doc) {
  doc.marks[ptr] = Mark{n.Mark().line + 1, n.Mark().column + 1};
  switch (n.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar:
      return scalar_value(n);
    case YAML::NodeType::Sequence: {
      json a = json::array();
      for (std::size_t i = 0; i < n.size(); ++i) a.push_back(convert(n[i], ptr + "/" + std::to_string(i), doc));
      return a;
    }
    case YAML::NodeType::Map: {
      json o = json::object();
      for (auto it = n.begin(); it != n.end(); ++it) {
        std::string key = it->first.as<std::string>();
        if (o.contains(key)) {
          Mark m{it->first.Mark().line + 1, it->first.Mark().column + 1};
          throw std::pair<Mark, std::string>(m, "duplicate key '" + key + "'");
        }
        o[key] = convert(it->second, ptr + "/" + escape_token(key), doc);
      }
      return o;
    }
  }
  return nullptr;
}

class Loader {
public:
  Loader(std::string origin, std::filesystem::path base) : origin_(std::move(origin)), base_(std::move(base)) {}

  PipelineSpec load(const std::string& text) {
    YAML::Node node;
    try {
      node = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
      throw SpecError(origin_, e.mark.line + 1, e.mark.column + 1, e.msg);
    }
    if (!node || node.IsNull()) throw SpecError(origin_, 0, 0, "empty spec");
    try {
      doc_.root = convert(node, "", doc_);
    } catch (const std::pair<Mark, std::string>& e) {
      throw SpecError(origin_, e.first.line, e.first.column, e.second);
    }
    if (!doc_.root.is_object()) fail("", "a spec is a mapping with 'pipeline', 'rings' and 'steps'");
    allow_keys("", doc_.root, {"pipeline", "seed", "rings", "steps", "description"});

    spec_.origin = origin_;
    spec_.base_dir = base_;
    spec_.name = str("/pipeline", true);
    if (doc_.root.contains("seed")) {
      const json& s = doc_.root["seed"];
      if (!s.is_number_integer() || s.get<long long>() < 0) fail("/seed", "seed must be a nonnegative integer");
      spec_.seed = static_cast<unsigned>(s.get<long long>());
    }
    load_rings();
    load_steps();
    resolve();
    return spec_;
  }

private:
  std::string origin_;
  std::filesystem::path base_;
  Doc doc_;
  PipelineSpec spec_;
  std::map<std::string, RingPtr> scheme_ring_;  // statically known rings of schemes

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg, int extra_col = 0) const {
    std::string p = ptr;
    while (true) {
      auto it = doc_.marks.find(p);
      if (it != doc_.marks.end()) throw SpecError(origin_, it->second.line, it->second.column + extra_col, msg);
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    throw SpecError(origin_, 0, 0, msg);
  }

  const json& at(const std::string& ptr) const { return doc_.root.at(json::json_pointer(ptr)); }
  bool has(const std::string& ptr) const { return doc_.root.contains(json::json_pointer(ptr)); }

  std::string str(const std::string& ptr, bool required) const {
    if (!has(ptr)) {
      if (required) fail(ptr.substr(0, ptr.rfind('/')), "missing '" + ptr.substr(ptr.rfind('/') + 1) + "'");
      return {};
    }
    const json& v = at(ptr);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail(ptr, "expected a string");
  }

  std::vector<std::string> str_list(const std::string& ptr) const {
    std::vector<std::string> out;
    if (!has(ptr)) return out;
    const json& v = at(ptr);
    if (!v.is_array()) fail(ptr, "expected a list");
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(str(ptr + "/" + std::to_string(i), true));
    return out;
  }

  void allow_keys(const std::string& ptr, const json& obj, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(ptr, "expected a mapping");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) fail(ptr + "/" + escape_token(it.key()), "unknown key '" + it.key() + "'");
    }
  }

  void load_rings() {
    if (!has("/rings")) fail("", "missing 'rings'");
    const json& rings = at("/rings");
    if (!rings.is_object() || rings.empty()) fail("/rings", "'rings' must be a nonempty mapping");
    for (auto it = rings.begin(); it != rings.end(); ++it) {
      std::string ptr = "/rings/" + escape_token(it.key());
      allow_keys(ptr, it.value(), {"variables", "projective", "prefix", "weights"});
      std::vector<std::string> names;
      if (it.value().contains("projective")) {
        const json& n = it.value()["projective"];
        if (!n.is_number_integer() || n.get<int>() < 1) fail(ptr + "/projective", "expected a positive dimension");
        std::string prefix = it.value().contains("prefix") ? str(ptr + "/prefix", true) : "x";
        for (int i = 0; i <= n.get<int>(); ++i) names.push_back(prefix + std::to_string(i));
      } else {
        names = str_list(ptr + "/variables");
        if (names.empty()) fail(ptr, "a ring needs 'variables' or 'projective'");
      }
      std::vector<int> weights;
      if (it.value().contains("weights")) {
        for (const auto& w : it.value()["weights"]) {
          if (!w.is_number_integer()) fail(ptr + "/weights", "weights must be integers");
          weights.push_back(w.get<int>());
        }
      }
      try {
        spec_.rings[it.key()] = PolyRing::make(names, weights);
      } catch (const std::exception& e) {
        fail(ptr, e.what());
      }
    }
  }

  // ---- steps ----

  struct KindSchema {
    std::vector<const char*> params;
    std::vector<const char*> expect;  // empty: any key accepted (validated by the kind)
  };

  static const std::map<std::string, KindSchema>& schemas() {
    static const std::map<std::string, KindSchema> s = {
        {"define_scheme", {{"ring", "equations", "data_file"}, {"ambient_dim", "dimension", "degree", "generators"}}},
        {"verify_degree_dim",
         {{"scheme", "compare_to"},
          {"degree", "dimension", "ambient_dim", "complete_intersection", "invariant", "invariant_drop"}}},
        {"verify_singular_locus",
         {{"scheme"}, {"empty", "dimension", "degree", "rational_points", "orbit_degrees", "point_multiplicity"}}},
        {"project_point",
         {{"scheme", "points"},
          {"degrees", "ambients", "final_degree", "final_ambient", "tangent_cone_degrees", "birational",
           "drop_matches_multiplicity", "invariant_drop", "complete_intersection"}}},
        {"map_linear_system",
         {{"scheme", "degree", "through", "forms_data", "pullbacks"}, {"ambient_dim", "degree", "dimension", "birational"}}},
        {"verify_birational", {{"map"}, {"birational"}}},
        {"verify_curve", {{"scheme", "curves"}, {}}},
        {"intersection_check", {{"scheme", "configuration"}, {}}},
        {"pairing_check", {{"scheme", "classes", "self", "expression"}, {"square"}}},
        {"pencil", {{"scheme", "forms", "readings", "section", "select", "mode"}, {"generic_degree", "generic_dimension", "reading"}}},
        {"fiber_table_check", {{"pencil", "section", "mode"}, {"table", "euler", "section"}}},
        {"component_degrees_check", {{"pencil", "section", "select_type", "places"}, {"shapes"}}},
        {"residual_pencil_check", {{"scheme", "support"}, {"pencil", "configuration"}}},
    };
    return s;
  }

  void load_steps() {
    if (!has("/steps")) fail("", "missing 'steps'");
    const json& steps = at("/steps");
    if (!steps.is_array()) fail("/steps", "'steps' must be a list");
    std::set<std::string> defined;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      std::string ptr = "/steps/" + std::to_string(i);
      const json& s = steps[i];
      if (!s.is_object()) fail(ptr, "a step is a mapping");
      Step st;
      st.id = str(ptr + "/id", true);
      st.kind = str(ptr + "/kind", true);
      st.line = doc_.marks.count(ptr) ? doc_.marks.at(ptr).line : 0;
      auto sit = schemas().find(st.kind);
      if (sit == schemas().end()) fail(ptr + "/kind", "unknown step kind '" + st.kind + "'");
      for (auto it = s.begin(); it != s.end(); ++it) {
        const std::string& k = it.key();
        if (k == "id" || k == "kind" || k == "after" || k == "expect" || k == "description") continue;
        bool ok = false;
        for (const char* p : sit->second.params) ok = ok || k == p;
        if (!ok) fail(ptr + "/" + escape_token(k), "unknown parameter '" + k + "' for " + st.kind);
        st.params[k] = it.value();
      }
      if (!st.params.is_object()) st.params = json::object();
      st.deps = str_list(ptr + "/after");
      load_expect(ptr, st, sit->second);
      st.defines.push_back(st.id);
      analyse(ptr, st);
      for (const auto& d : st.defines) {
        if (!defined.insert(d).second) fail(ptr, "name '" + d + "' is defined twice");
        if (spec_.rings.count(d)) fail(ptr, "name '" + d + "' is already a ring");
      }
      spec_.steps.push_back(std::move(st));
    }
  }

  void load_expect(const std::string& ptr, Step& st, const KindSchema& schema) {
    auto add = [&](const std::string& key, const json& v, const std::string& vptr) {
      Expectation e;
      e.key = key;
      if (v.is_object() && v.contains("value")) {
        allow_keys(vptr, v, {"value", "claim", "basis"});
        e.value = v["value"];
        if (v.contains("claim")) {
          e.claim = v["claim"].get<std::string>();
          e.basis = "claim";
        }
        if (v.contains("basis")) e.basis = v["basis"].get<std::string>();
        if (e.basis != "claim" && e.basis != "computed" && e.basis != "arithmetic")
          fail(vptr + "/basis", "basis must be claim, computed or arithmetic");
        if (e.basis == "claim" && e.claim.empty()) fail(vptr, "a claim needs its text");
      } else {
        e.value = v;
      }
      st.expect.push_back(std::move(e));
    };
    if (has(ptr + "/expect")) {
      const json& ex = at(ptr + "/expect");
      if (!ex.is_object()) fail(ptr + "/expect", "'expect' must be a mapping");
      for (auto it = ex.begin(); it != ex.end(); ++it) {
        std::string vptr = ptr + "/expect/" + escape_token(it.key());
        bool ok = schema.expect.empty();
        for (const char* k : schema.expect) ok = ok || it.key() == k;
        if (!ok) fail(vptr, "unknown expectation '" + it.key() + "' for " + st.kind);
        add(it.key(), it.value(), vptr);
      }
    }
    // Curve entries carry their own expectations, flattened to "<curve>.<key>".
    if (st.kind == "verify_curve" && st.params.contains("curves") && st.params["curves"].is_object()) {
      for (auto it = st.params["curves"].begin(); it != st.params["curves"].end(); ++it) {
        if (!it.value().is_object() || !it.value().contains("expect")) continue;
        std::string cptr = ptr + "/curves/" + escape_token(it.key()) + "/expect";
        const json& ex = it.value()["expect"];
        if (!ex.is_object()) fail(cptr, "'expect' must be a mapping");
        for (auto e = ex.begin(); e != ex.end(); ++e) {
          static const std::set<std::string> keys = {"degree", "dimension", "on_surface", "markers"};
          std::string vptr = cptr + "/" + escape_token(e.key());
          if (!keys.count(e.key())) fail(vptr, "unknown curve expectation '" + e.key() + "'");
          add(it.key() + "." + e.key(), e.value(), vptr);
        }
      }
    }
  }

  void need(const std::string& ptr, const Step& st, const char* key) const {
    if (!st.params.contains(key)) fail(ptr, std::string("missing '") + key + "' for " + st.kind);
  }

  void use(Step& st, const std::string& name) const {
    if (std::find(st.uses.begin(), st.uses.end(), name) == st.uses.end()) st.uses.push_back(name);
  }

  RingPtr ring_of_scheme(const std::string& name) const {
    auto it = scheme_ring_.find(name);
    return it == scheme_ring_.end() ? nullptr : it->second;
  }

  void check_poly(const std::string& ptr, const json& v, const RingPtr& ring) const {
    if (!v.is_string()) fail(ptr, "a polynomial is written as a string");
    if (!ring) return;
    try {
      parse_poly<Rational>(v.get<std::string>(), ring);
    } catch (const ParseError& e) {
      fail(ptr, std::string("polynomial: ") + e.what(), static_cast<int>(e.position()));
    } catch (const std::exception& e) {
      fail(ptr, std::string("polynomial: ") + e.what());
    }
  }

  void check_polys(const std::string& ptr, const json& v, const RingPtr& ring, std::size_t count = 0) const {
    if (!v.is_array() || v.empty()) fail(ptr, "expected a nonempty list of polynomials");
    if (count && v.size() != count) fail(ptr, "expected " + std::to_string(count) + " polynomials");
    for (std::size_t i = 0; i < v.size(); ++i) check_poly(ptr + "/" + std::to_string(i), v[i], ring);
  }

  void check_point(const std::string& ptr, const json& v) const {
    if (!v.is_string()) fail(ptr, "a point is written as a string such as \"(1:0:0)\"");
    try {
      parse_point(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(ptr, std::string("point: ") + e.what());
    }
  }

  static bool is_point_text(const json& v) { return v.is_string() && !v.get<std::string>().empty() && v.get<std::string>()[0] == '('; }

  std::string scheme_param(const std::string& ptr, Step& st) {
    need(ptr, st, "scheme");
    std::string s = str(ptr + "/scheme", true);
    use(st, s);
    return s;
  }

  /// Fibre description: {pencil, t} or {scheme forms, t} or {add: [...]}.
  void analyse_fiber(const std::string& ptr, const json& f, Step& st, const RingPtr& ring) {
    allow_keys(ptr, f, {"pencil", "forms", "t", "add"});
    if (f.contains("add")) {
      check_polys(ptr + "/add", f["add"], ring);
      return;
    }
    if (!f.contains("t")) fail(ptr, "a fibre needs 't' (a rational number or 'inf')");
    if (f.contains("pencil")) {
      use(st, str(ptr + "/pencil", true));
    } else if (f.contains("forms")) {
      check_polys(ptr + "/forms", f["forms"], ring, 2);
    } else {
      fail(ptr, "a fibre needs 'pencil', 'forms' or 'add'");
    }
  }

  void analyse(const std::string& ptr, Step& st) {
    const json& p = st.params;
    const std::string& k = st.kind;
    if (k == "define_scheme") {
      need(ptr, st, "ring");
      std::string r = str(ptr + "/ring", true);
      auto it = spec_.rings.find(r);
      if (it == spec_.rings.end()) fail(ptr + "/ring", "unknown ring '" + r + "'");
      scheme_ring_[st.id] = it->second;
      if (p.contains("equations") == p.contains("data_file")) fail(ptr, "define_scheme needs exactly one of 'equations' and 'data_file'");
      if (p.contains("equations")) check_polys(ptr + "/equations", p["equations"], it->second);
      if (p.contains("data_file")) st.data_file = str(ptr + "/data_file", true);
    } else if (k == "verify_degree_dim" || k == "verify_singular_locus") {
      scheme_param(ptr, st);
      if (p.contains("compare_to")) use(st, str(ptr + "/compare_to", true));
    } else if (k == "project_point") {
      scheme_param(ptr, st);
      need(ptr, st, "points");
      if (!p["points"].is_array() || p["points"].empty()) fail(ptr + "/points", "expected a nonempty list of points");
      for (std::size_t i = 0; i < p["points"].size(); ++i) check_point(ptr + "/points/" + std::to_string(i), p["points"][i]);
    } else if (k == "map_linear_system") {
      std::string s = scheme_param(ptr, st);
      if (!p.contains("forms_data")) need(ptr, st, "degree");
      if (p.contains("degree") && (!p["degree"].is_number_integer() || p["degree"].get<int>() < 1))
        fail(ptr + "/degree", "degree must be a positive integer");
      if (p.contains("forms_data")) st.data_file = str(ptr + "/forms_data", true);
      if (p.contains("through")) {
        if (!p["through"].is_array()) fail(ptr + "/through", "expected a list");
        for (std::size_t i = 0; i < p["through"].size(); ++i) {
          std::string ip = ptr + "/through/" + std::to_string(i);
          if (is_point_text(p["through"][i])) check_point(ip, p["through"][i]);
          else use(st, str(ip, true));
        }
      }
      if (p.contains("pullbacks")) {
        if (!p["pullbacks"].is_object()) fail(ptr + "/pullbacks", "expected a mapping of curve names");
        for (auto it = p["pullbacks"].begin(); it != p["pullbacks"].end(); ++it) {
          std::string cp = ptr + "/pullbacks/" + escape_token(it.key());
          allow_keys(cp, it.value(), {"point", "through", "degree", "field"});
          if (!it.value().contains("point") || !it.value().contains("through") || !it.value().contains("degree"))
            fail(cp, "a pullback needs 'point', 'through' and 'degree'");
          check_point(cp + "/point", it.value()["point"]);
          check_point(cp + "/through", it.value()["through"]);
          st.defines.push_back(it.key());
        }
      }
      (void)s;
    } else if (k == "verify_birational") {
      need(ptr, st, "map");
      use(st, str(ptr + "/map", true));
    } else if (k == "verify_curve") {
      std::string s = scheme_param(ptr, st);
      RingPtr ring = ring_of_scheme(s);
      need(ptr, st, "curves");
      if (!p["curves"].is_object() || p["curves"].empty()) fail(ptr + "/curves", "expected a mapping of curve names");
      for (auto it = p["curves"].begin(); it != p["curves"].end(); ++it) {
        std::string cp = ptr + "/curves/" + escape_token(it.key());
        const json& c = it.value();
        allow_keys(cp, c, {"equations", "component", "residual", "preimage", "markers", "field", "expect"});
        int sources = c.contains("equations") + c.contains("component") + c.contains("residual") + c.contains("preimage");
        if (sources != 1) fail(cp, "a curve needs exactly one of 'equations', 'component', 'residual', 'preimage'");
        if (c.contains("equations")) check_polys(cp + "/equations", c["equations"], ring);
        if (c.contains("component")) {
          allow_keys(cp + "/component", c["component"], {"fiber", "through", "degree"});
          if (!c["component"].contains("fiber") || !c["component"].contains("through") || !c["component"].contains("degree"))
            fail(cp + "/component", "a component needs 'fiber', 'through' and 'degree'");
          analyse_fiber(cp + "/component/fiber", c["component"]["fiber"], st, ring);
          check_point(cp + "/component/through", c["component"]["through"]);
        }
        if (c.contains("residual")) {
          allow_keys(cp + "/residual", c["residual"], {"fiber", "minus"});
          if (!c["residual"].contains("fiber") || !c["residual"].contains("minus"))
            fail(cp + "/residual", "a residual needs 'fiber' and 'minus'");
          analyse_fiber(cp + "/residual/fiber", c["residual"]["fiber"], st, ring);
          for (const auto& m : str_list(cp + "/residual/minus")) use(st, m);
        }
        if (c.contains("preimage")) {
          allow_keys(cp + "/preimage", c["preimage"], {"map", "point", "through", "degree"});
          if (!c["preimage"].contains("map") || !c["preimage"].contains("point"))
            fail(cp + "/preimage", "a preimage needs 'map' and 'point'");
          use(st, str(cp + "/preimage/map", true));
          check_point(cp + "/preimage/point", c["preimage"]["point"]);
          if (c["preimage"].contains("through")) check_point(cp + "/preimage/through", c["preimage"]["through"]);
        }
        if (c.contains("markers")) {
          if (!c["markers"].is_array()) fail(cp + "/markers", "expected a list of points");
          for (std::size_t i = 0; i < c["markers"].size(); ++i) check_point(cp + "/markers/" + std::to_string(i), c["markers"][i]);
        }
        st.defines.push_back(it.key());
      }
    } else if (k == "intersection_check") {
      scheme_param(ptr, st);
      for (const auto& c : str_list(ptr + "/configuration")) use(st, c);
      for (const auto& e : st.expect) {
        if (e.key == "configuration") {
          if (!p.contains("configuration")) fail(ptr, "expectation 'configuration' needs the 'configuration' curve list");
          continue;
        }
        auto dot = e.key.find('.');
        if (dot == std::string::npos) fail(ptr + "/expect", "intersection keys are written 'A.B'");
        use(st, e.key.substr(0, dot));
        use(st, e.key.substr(dot + 1));
        if (!e.value.is_number_integer()) fail(ptr + "/expect", "intersection numbers are integers");
      }
    } else if (k == "pairing_check") {
      scheme_param(ptr, st);
      need(ptr, st, "expression");
      for (const auto& c : str_list(ptr + "/classes")) use(st, c);
      try {
        for (const auto& [name, coeff] : parse_divisor(str(ptr + "/expression", true))) {
          (void)coeff;
          if (name != "H" && std::find(st.uses.begin(), st.uses.end(), name) == st.uses.end())
            fail(ptr + "/expression", "class '" + name + "' is not listed in 'classes'");
        }
      } catch (const SpecError&) {
        throw;
      } catch (const std::exception& e) {
        fail(ptr + "/expression", e.what());
      }
    } else if (k == "pencil") {
      std::string s = scheme_param(ptr, st);
      RingPtr ring = ring_of_scheme(s);
      if (p.contains("forms") == p.contains("readings")) fail(ptr, "pencil needs exactly one of 'forms' and 'readings'");
      if (p.contains("forms")) check_polys(ptr + "/forms", p["forms"], ring, 2);
      if (p.contains("readings")) {
        if (!p["readings"].is_array() || p["readings"].empty()) fail(ptr + "/readings", "expected a list of readings");
        for (std::size_t i = 0; i < p["readings"].size(); ++i) {
          std::string rp = ptr + "/readings/" + std::to_string(i);
          allow_keys(rp, p["readings"][i], {"label", "forms", "note"});
          str(rp + "/label", true);
          if (!p["readings"][i].contains("forms")) fail(rp, "a reading needs 'forms'");
          check_polys(rp + "/forms", p["readings"][i]["forms"], ring, 2);
        }
        if (p.contains("select") && !p.contains("section")) fail(ptr, "selecting a reading by its table needs 'section'");
      }
      if (p.contains("section")) use(st, str(ptr + "/section", true));
      if (p.contains("select")) check_table(ptr + "/select", p["select"]);
      scheme_ring_[st.id] = ring;
    } else if (k == "fiber_table_check" || k == "component_degrees_check") {
      need(ptr, st, "pencil");
      const json& pc = p["pencil"];
      if (pc.is_string()) {
        use(st, pc.get<std::string>());
      } else {
        allow_keys(ptr + "/pencil", pc, {"scheme", "forms"});
        if (!pc.contains("scheme") || !pc.contains("forms")) fail(ptr + "/pencil", "an inline pencil needs 'scheme' and 'forms'");
        std::string s = str(ptr + "/pencil/scheme", true);
        use(st, s);
        check_polys(ptr + "/pencil/forms", pc["forms"], ring_of_scheme(s), 2);
      }
      if (p.contains("section")) use(st, str(ptr + "/section", true));
      if (p.contains("mode")) {
        std::string m = str(ptr + "/mode", true);
        if (m != "exact" && m != "contains") fail(ptr + "/mode", "mode is 'exact' or 'contains'");
      }
      if (k == "fiber_table_check") {
        need(ptr, st, "section");
        for (auto& e : st.expect)
          if (e.key == "table") e.value = table_value(ptr + "/expect/table", e.value);
      } else {
        if (p.contains("select_type") == p.contains("places")) fail(ptr, "component_degrees_check needs one of 'select_type' and 'places'");
        if (p.contains("select_type")) need(ptr, st, "section");
      }
    } else if (k == "residual_pencil_check") {
      std::string s = scheme_param(ptr, st);
      need(ptr, st, "support");
      auto support = str_list(ptr + "/support");
      if (support.empty()) fail(ptr + "/support", "expected a nonempty list of curves");
      for (const auto& c : support) use(st, c);
      for (const auto& e : st.expect)
        if (e.key == "pencil") check_polys(ptr + "/expect/pencil", e.value, ring_of_scheme(s), 2);
      scheme_ring_[st.id] = ring_of_scheme(s);
    }
  }

  /// Expected table entries: a list inline or a fixture file name relative to the spec.
  json table_value(const std::string& ptr, const json& v) const {
    if (v.is_string()) {
      std::filesystem::path f = base_ / v.get<std::string>();
      std::ifstream in(f);
      if (!in) fail(ptr, "cannot read table fixture " + v.get<std::string>());
      std::stringstream ss;
      ss << in.rdbuf();
      Loader sub(v.get<std::string>(), base_);
      return sub.load_table(ss.str());
    }
    check_table(ptr, v);
    return v;
  }

public:
  json load_table(const std::string& text) {
    YAML::Node node;
    try {
      node = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
      throw SpecError(origin_, e.mark.line + 1, e.mark.column + 1, e.msg);
    }
    if (!node || node.IsNull()) throw SpecError(origin_, 0, 0, "empty table fixture");
    doc_.root = convert(node, "", doc_);
    json fibers = doc_.root.is_object() && doc_.root.contains("fibers") ? doc_.root["fibers"] : doc_.root;
    std::string ptr = doc_.root.is_object() ? "/fibers" : "";
    check_table(ptr, fibers);
    return fibers;
  }

private:
  void check_table(const std::string& ptr, const json& v) const {
    if (!v.is_array()) fail(ptr, "a fibre table is a list of {type, residue_degree, disc_class, count}");
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string ep = ptr + "/" + std::to_string(i);
      allow_keys(ep, v[i], {"type", "residue_degree", "disc_class", "count"});
      if (!v[i].contains("type")) fail(ep, "a fibre entry needs 'type'");
      try {
        KodairaType::parse(v[i]["type"].get<std::string>());
      } catch (const std::exception& e) {
        fail(ep + "/type", e.what());
      }
      for (const char* key : {"residue_degree", "count", "disc_class"})
        if (v[i].contains(key) && !v[i][key].is_number_integer()) fail(ep + "/" + key, std::string(key) + " must be an integer");
    }
  }

  void resolve() {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec_.steps.size(); ++i) index[spec_.steps[i].id] = i;
    for (auto& st : spec_.steps) {
      std::string ptr = "/steps/" + std::to_string(&st - spec_.steps.data());
      for (const auto& d : st.deps)
        if (!index.count(d)) fail(ptr + "/after", "dangling reference: no step '" + d + "'");
      for (const auto& name : st.uses) {
        auto prod = spec_.producer(name);
        if (!prod) fail(ptr, "dangling reference: '" + name + "' is not defined by any step");
        if (*prod == st.id) continue;  // curves of one verify_curve step may build on each other
        if (std::find(st.deps.begin(), st.deps.end(), *prod) == st.deps.end()) st.deps.push_back(*prod);
      }
    }
    // Cycle detection by depth-first search.
    std::vector<int> state(spec_.steps.size(), 0);
    std::vector<std::string> stack;
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
      state[i] = 1;
      stack.push_back(spec_.steps[i].id);
      for (const auto& d : spec_.steps[i].deps) {
        std::size_t j = index[d];
        if (state[j] == 1) {
          std::string cycle;
          auto from = std::find(stack.begin(), stack.end(), d);
          for (auto it = from; it != stack.end(); ++it) cycle += *it + " -> ";
          cycle += d;
          fail("/steps/" + std::to_string(j), "dependency cycle: " + cycle);
        }
        if (state[j] == 0) visit(j);
      }
      stack.pop_back();
      state[i] = 2;
    };
    for (std::size_t i = 0; i < spec_.steps.size(); ++i)
      if (state[i] == 0) visit(i);
  }
};

}  // namespace

PipelineSpec parse_spec(const std::string& text, const std::string& origin, const std::filesystem::path& base_dir) {
  return Loader(origin, base_dir).load(text);
}

PipelineSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path.filename().string(), 0, 0, "cannot open spec file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path.filename().string(), path.parent_path());
}

}  // namespace k3::replay
