#include "relaxlab/io.hpp"

#include <fstream>
#include <sstream>

namespace relaxlab {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, "missing field '" + key + "'");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::size_t index(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() == 0) throw ParseError(path, "expected a positive integer index");
  return j.get<std::size_t>();
}

/// Builder failures (convexity guards) become parse errors at the node.
template <class F>
Expr guarded(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ConstructionError& e) {
    throw ParseError(path, std::string("rejected node: ") + e.what());
  }
}

std::vector<Expr> expr_list(const Json& j, const std::string& path) {
  std::vector<Expr> out;
  const Json& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(expr_from_json(a[i], at(path, i)));
  return out;
}

}  // namespace

Rat rat_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw ParseError(path, "expected a rational literal \"p/q\"");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

Json rat_to_json(const Rat& r) { return r.str(); }

Json ext_to_json(const ExtReal& v) { return v.str(); }

Pattern pattern_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected a pattern object");
  std::vector<Rat> prefix;
  if (j.contains("prefix")) {
    const Json& a = array(j["prefix"], at(path, "prefix"));
    for (std::size_t i = 0; i < a.size(); ++i) prefix.push_back(rat_from_json(a[i], at(at(path, "prefix"), i)));
  }
  const Json& tail = field(j, "tail", path);
  const std::string tp = at(path, "tail");
  if (!tail.is_object() || tail.size() != 1) throw ParseError(tp, "expected {\"constant\": c} or {\"geometric\": {...}}");
  try {
    if (tail.contains("constant")) return Pattern::constant(rat_from_json(tail["constant"], at(tp, "constant")), prefix);
    if (tail.contains("geometric")) {
      const Json& g = tail["geometric"];
      const std::string gp = at(tp, "geometric");
      return Pattern::geometric(rat_from_json(field(g, "a", gp), at(gp, "a")),
                                rat_from_json(field(g, "ratio", gp), at(gp, "ratio")), prefix);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(tp, e.what());
  }
  throw ParseError(tp, "unknown tail kind");
}

Json pattern_to_json(const Pattern& p) {
  Json j = Json::object();
  if (!p.prefix().empty()) {
    j["prefix"] = Json::array();
    for (const auto& r : p.prefix()) j["prefix"].push_back(rat_to_json(r));
  }
  if (p.is_constant_tail())
    j["tail"] = {{"constant", rat_to_json(p.tail_coeff())}};
  else
    j["tail"] = {{"geometric", {{"a", rat_to_json(p.tail_coeff())}, {"ratio", rat_to_json(p.ratio())}}}};
  return j;
}

Region region_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected a region object");
  Region r;
  r.tail_free = j.value("tail_free", false);
  if (j.contains("ineqs")) {
    const Json& a = array(j["ineqs"], at(path, "ineqs"));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string ip = at(at(path, "ineqs"), i);
      LinearIneq q;
      const Json& cs = field(a[i], "coeffs", ip);
      if (!cs.is_object()) throw ParseError(at(ip, "coeffs"), "expected an object");
      for (const auto& [name, v] : cs.items()) q.coeffs[name] = rat_from_json(v, at(at(ip, "coeffs"), name));
      if (a[i].contains("const")) q.constant = rat_from_json(a[i]["const"], at(ip, "const"));
      r.ineqs.push_back(std::move(q));
    }
  }
  if (j.contains("boxes")) {
    const Json& a = array(j["boxes"], at(path, "boxes"));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string bp = at(at(path, "boxes"), i);
      CoordBox b;
      b.index = index(field(a[i], "index", bp), at(bp, "index"));
      if (a[i].contains("lo")) b.lo = rat_from_json(a[i]["lo"], at(bp, "lo"));
      if (a[i].contains("hi")) b.hi = rat_from_json(a[i]["hi"], at(bp, "hi"));
      r.boxes.push_back(b);
    }
  }
  return r;
}

Json region_to_json(const Region& r) {
  Json j = Json::object();
  j["tail_free"] = r.tail_free;
  j["ineqs"] = Json::array();
  for (const auto& q : r.ineqs) {
    Json c = Json::object();
    for (const auto& [name, v] : q.coeffs) c[name] = rat_to_json(v);
    j["ineqs"].push_back({{"coeffs", c}, {"const", rat_to_json(q.constant)}});
  }
  if (!r.boxes.empty()) {
    j["boxes"] = Json::array();
    for (const auto& b : r.boxes) {
      Json bj = {{"index", b.index}};
      if (b.lo) bj["lo"] = rat_to_json(*b.lo);
      if (b.hi) bj["hi"] = rat_to_json(*b.hi);
      j["boxes"].push_back(bj);
    }
  }
  return j;
}

Point point_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected a point object");
  std::vector<Rat> prefix;
  if (j.contains("prefix")) {
    const Json& a = array(j["prefix"], at(path, "prefix"));
    for (std::size_t i = 0; i < a.size(); ++i) prefix.push_back(rat_from_json(a[i], at(at(path, "prefix"), i)));
  }
  std::map<std::string, Rat> scalars;
  if (j.contains("scalars")) {
    if (!j["scalars"].is_object()) throw ParseError(at(path, "scalars"), "expected an object");
    for (const auto& [name, v] : j["scalars"].items()) scalars[name] = rat_from_json(v, at(at(path, "scalars"), name));
  }
  if (j.contains("tail")) return Point::bidual(prefix, rat_from_json(j["tail"], at(path, "tail")), scalars);
  return Point::primal(prefix, scalars);
}

Json point_to_json(const Point& p) {
  Json j = Json::object();
  j["prefix"] = Json::array();
  for (const auto& r : p.prefix()) j["prefix"].push_back(rat_to_json(r));
  if (p.space() == Space::Bidual) j["tail"] = rat_to_json(p.tail());
  Json s = Json::object();
  for (const auto& [name, v] : p.scalars()) s[name] = rat_to_json(v);
  j["scalars"] = s;
  return j;
}

Expr expr_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) throw ParseError(path, "expected a single-key expression object");
  const std::string kind = j.begin().key();
  const Json& b = j.begin().value();
  const std::string p = at(path, kind);
  auto R = [&](const Json& v, const std::string& key) { return rat_from_json(field(v, key, p), at(p, key)); };
  auto P = [&](const Json& v, const std::string& key) { return pattern_from_json(field(v, key, p), at(p, key)); };
  auto sub = [&](const std::string& key) { return expr_from_json(field(b, key, p), at(p, key)); };

  if (kind == "coord_abs")
    return guarded(p, [&] {
      return b.contains("weight") ? coord_abs(P(b, "center"), P(b, "weight")) : coord_abs(P(b, "center"));
    });
  if (kind == "coord_lin") return guarded(p, [&] { return coord_lin(P(b, "coeff")); });
  if (kind == "coord")
    return guarded(p, [&] {
      return coord_at(index(field(b, "index", p), at(p, "index")), b.contains("coeff") ? R(b, "coeff") : Rat(1));
    });
  if (kind == "abs_at")
    return guarded(p, [&] { return coord_abs_at(index(field(b, "index", p), at(p, "index")), R(b, "center")); });
  if (kind == "scalar")
    return guarded(p, [&] {
      return scalar(text(field(b, "name", p), at(p, "name")), b.contains("coeff") ? R(b, "coeff") : Rat(1));
    });
  if (kind == "scalar_family")
    return guarded(p, [&] { return scalar_family(text(field(b, "name", p), at(p, "name")), P(b, "coeff")); });
  if (kind == "const") return guarded(p, [&] { return constant(pattern_from_json(b, p)); });
  if (kind == "tail_const") return guarded(p, [&] { return tail_const(rat_from_json(b, p)); });
  if (kind == "add") {
    auto terms = expr_list(b, p);
    return guarded(p, [&] { return add(terms); });
  }
  if (kind == "max") {
    auto terms = expr_list(b, p);
    return guarded(p, [&] { return max(terms); });
  }
  if (kind == "scale") {
    Expr c = sub("expr");
    return guarded(p, [&] { return scale(R(b, "factor"), c); });
  }
  if (kind == "series") {
    Expr t = sub("term");
    return guarded(p, [&] { return series(P(b, "weights"), t); });
  }
  if (kind == "scale_family") {
    Expr t = sub("expr");
    return guarded(p, [&] { return scale_family(P(b, "weights"), t); });
  }
  if (kind == "sup") {
    Expr c = expr_from_json(b, p);
    return guarded(p, [&] { return sup(c); });
  }
  if (kind == "limsup") {
    Expr c = expr_from_json(b, p);
    return guarded(p, [&] { return limsup(c); });
  }
  if (kind == "pos") {
    Expr c = expr_from_json(b, p);
    return guarded(p, [&] { return pos(c); });
  }
  if (kind == "indicator") {
    Region r = region_from_json(b, p);
    return guarded(p, [&] { return indicator(r); });
  }
  throw ParseError(path, "unknown expression kind '" + kind + "'");
}

namespace {

Json node_to_json(const Node& n) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        auto list = [](const std::vector<NodePtr>& ts) {
          Json a = Json::array();
          for (const auto& t : ts) a.push_back(node_to_json(*t));
          return a;
        };
        if constexpr (std::is_same_v<T, node::CoordAbs>)
          return {{"coord_abs", {{"center", pattern_to_json(v.center)}, {"weight", pattern_to_json(v.weight)}}}};
        else if constexpr (std::is_same_v<T, node::CoordLin>)
          return {{"coord_lin", {{"coeff", pattern_to_json(v.coeff)}}}};
        else if constexpr (std::is_same_v<T, node::ScalarTerm>)
          return {{"scalar", {{"name", v.name}, {"coeff", rat_to_json(v.coeff)}}}};
        else if constexpr (std::is_same_v<T, node::ScalarFamily>)
          return {{"scalar_family", {{"name", v.name}, {"coeff", pattern_to_json(v.coeff)}}}};
        else if constexpr (std::is_same_v<T, node::Const>)
          return {{"const", pattern_to_json(v.value)}};
        else if constexpr (std::is_same_v<T, node::TailConst>)
          return {{"tail_const", rat_to_json(v.value)}};
        else if constexpr (std::is_same_v<T, node::Add>)
          return {{"add", list(v.terms)}};
        else if constexpr (std::is_same_v<T, node::ScaleNonneg>)
          return {{"scale", {{"factor", rat_to_json(v.factor)}, {"expr", node_to_json(*v.child)}}}};
        else if constexpr (std::is_same_v<T, node::Max>)
          return {{"max", list(v.terms)}};
        else if constexpr (std::is_same_v<T, node::Series>)
          return {{"series", {{"weights", pattern_to_json(v.weights)}, {"term", node_to_json(*v.term)}}}};
        else if constexpr (std::is_same_v<T, node::Sup>)
          return {{"sup", node_to_json(*v.family)}};
        else if constexpr (std::is_same_v<T, node::LimSup>)
          return {{"limsup", node_to_json(*v.family)}};
        else if constexpr (std::is_same_v<T, node::Pos>)
          return {{"pos", node_to_json(*v.child)}};
        else
          return {{"indicator", region_to_json(v.region)}};
      },
      n.v);
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  auto same_list = [](const std::vector<NodePtr>& x, const std::vector<NodePtr>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!nodes_equal(*x[i], *y[i])) return false;
    return true;
  };
  return std::visit(
      [&](const auto& u) -> bool {
        using T = std::decay_t<decltype(u)>;
        const T& w = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, node::CoordAbs>) return u.center == w.center && u.weight == w.weight;
        else if constexpr (std::is_same_v<T, node::CoordLin>) return u.coeff == w.coeff;
        else if constexpr (std::is_same_v<T, node::ScalarTerm>) return u.name == w.name && u.coeff == w.coeff;
        else if constexpr (std::is_same_v<T, node::ScalarFamily>) return u.name == w.name && u.coeff == w.coeff;
        else if constexpr (std::is_same_v<T, node::Const>) return u.value == w.value;
        else if constexpr (std::is_same_v<T, node::TailConst>) return u.value == w.value;
        else if constexpr (std::is_same_v<T, node::Add>) return same_list(u.terms, w.terms);
        else if constexpr (std::is_same_v<T, node::ScaleNonneg>) return u.factor == w.factor && nodes_equal(*u.child, *w.child);
        else if constexpr (std::is_same_v<T, node::Max>) return same_list(u.terms, w.terms);
        else if constexpr (std::is_same_v<T, node::Series>) return u.weights == w.weights && nodes_equal(*u.term, *w.term);
        else if constexpr (std::is_same_v<T, node::Sup>) return nodes_equal(*u.family, *w.family);
        else if constexpr (std::is_same_v<T, node::LimSup>) return nodes_equal(*u.family, *w.family);
        else if constexpr (std::is_same_v<T, node::Pos>) return nodes_equal(*u.child, *w.child);
        else return u.region == w.region;
      },
      a.v);
}

}  // namespace

Json expr_to_json(const Expr& e) { return node_to_json(e.node()); }

bool structurally_equal(const Expr& a, const Expr& b) { return a.space() == b.space() && nodes_equal(a.node(), b.node()); }

bool structurally_equal(const Problem& a, const Problem& b) {
  if (a.name != b.name || a.scalars != b.scalars || a.constraints.size() != b.constraints.size()) return false;
  if (!structurally_equal(a.objective, b.objective)) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i)
    if (!structurally_equal(a.constraints[i], b.constraints[i])) return false;
  if (a.slater_point.has_value() != b.slater_point.has_value()) return false;
  return !a.slater_point || point_to_json(*a.slater_point) == point_to_json(*b.slater_point);
}

Problem parse_problem(const Json& doc) {
  if (!doc.is_object()) throw ParseError("", "expected a problem object");
  Problem p;
  p.name = doc.contains("name") ? text(doc["name"], "/name") : "problem";
  if (doc.contains("scalars")) {
    const Json& a = array(doc["scalars"], "/scalars");
    for (std::size_t i = 0; i < a.size(); ++i) p.scalars.push_back(text(a[i], at("/scalars", i)));
  }
  p.objective = expr_from_json(field(doc, "objective", ""), "/objective");
  if (p.objective.is_family()) throw ParseError("/objective", "objective must be a scalar expression");
  if (doc.contains("constraints")) p.constraints = expr_list(doc["constraints"], "/constraints");
  if (doc.contains("slater_point")) p.slater_point = point_from_json(doc["slater_point"], "/slater_point");
  return p;
}

Problem parse_problem_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

Problem load_problem(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

Json problem_to_json(const Problem& p) {
  Json j = Json::object();
  j["name"] = p.name;
  j["scalars"] = p.scalars;
  j["objective"] = expr_to_json(p.objective);
  j["constraints"] = Json::array();
  for (const auto& c : p.constraints) j["constraints"].push_back(expr_to_json(c));
  if (p.slater_point) j["slater_point"] = point_to_json(*p.slater_point);
  return j;
}

}  // namespace relaxlab
