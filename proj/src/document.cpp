#include "orbikink/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orbikink/errors.hpp"

namespace orbikink {

using nlohmann::json;

namespace {

constexpr std::string_view kBoundaryPrefix = "bd:";

Side parse_side(const json& j) {
  if (!j.is_string()) throw ParseError("triangle sides must be strings");
  const auto s = j.get<std::string>();
  if (s.rfind(kBoundaryPrefix, 0) == 0) return Side{s.substr(kBoundaryPrefix.size()), true};
  return Side{s, false};
}

std::string side_text(const Side& s) { return s.boundary ? std::string(kBoundaryPrefix) + s.label : s.label; }

std::vector<std::string> string_list(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw ParseError(std::string("'") + key + "' must contain strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError("unexpected key '" + key + "' in " + where);
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Triangulation parse_triangulation(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("triangulation document must be a JSON object");
  only_keys(doc, {"arcs", "boundary_segments", "triangles"}, "triangulation document");
  Triangulation t;
  t.arcs = string_list(doc, "arcs");
  t.boundary_segments = string_list(doc, "boundary_segments");
  if (!doc.contains("triangles") || !doc.at("triangles").is_array()) {
    throw ParseError("'triangles' must be an array");
  }
  for (const auto& tj : doc.at("triangles")) {
    if (!tj.is_object() || !tj.contains("name") || !tj.at("name").is_string()) {
      throw ParseError("each triangle needs a string 'name'");
    }
    only_keys(tj, {"name", "sides", "self_folded"}, "triangle");
    const auto name = tj.at("name").get<std::string>();
    const bool has_sides = tj.contains("sides");
    const bool folded = tj.contains("self_folded");
    if (has_sides == folded) throw ParseError("triangle '" + name + "' needs exactly one of 'sides', 'self_folded'");
    if (has_sides) {
      const json& sides = tj.at("sides");
      if (!sides.is_array() || sides.size() != 3) throw ParseError("triangle '" + name + "' needs three sides");
      t.triangles.push_back(Triangle::ordinary(name, parse_side(sides[0]), parse_side(sides[1]), parse_side(sides[2])));
    } else {
      const json& sf = tj.at("self_folded");
      if (!sf.is_object() || !sf.contains("loop") || !sf.contains("radius") || !sf.at("loop").is_string() ||
          !sf.at("radius").is_string()) {
        throw ParseError("triangle '" + name + "': self_folded needs string 'loop' and 'radius'");
      }
      only_keys(sf, {"loop", "radius"}, "self_folded");
      t.triangles.push_back(
          Triangle::folded(name, sf.at("loop").get<std::string>(), sf.at("radius").get<std::string>()));
    }
  }
  return t;
}

Triangulation read_triangulation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_triangulation(buf.str());
}

std::string dump_triangulation(const Triangulation& t) {
  json doc;
  doc["arcs"] = t.arcs;
  doc["boundary_segments"] = t.boundary_segments;
  doc["triangles"] = json::array();
  for (const auto& tri : t.triangles) {
    json tj;
    tj["name"] = tri.name;
    if (tri.self_folded) {
      tj["self_folded"] = {{"loop", tri.loop()}, {"radius", tri.radius()}};
    } else {
      tj["sides"] = {side_text(tri.sides[0]), side_text(tri.sides[1]), side_text(tri.sides[2])};
    }
    doc["triangles"].push_back(tj);
  }
  return doc.dump(2);
}

std::vector<FlipMove> parse_flip_script(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_array()) throw ParseError("flip script must be a JSON array");
  std::vector<FlipMove> out;
  for (const auto& mj : doc) {
    if (!mj.is_object() || !mj.contains("kind") || !mj.contains("target") || !mj.at("kind").is_string() ||
        !mj.at("target").is_string()) {
      throw ParseError("each move needs string 'kind' and 'target'");
    }
    only_keys(mj, {"kind", "target"}, "flip move");
    const auto kind = mj.at("kind").get<std::string>();
    FlipMove m;
    if (kind == "standard") {
      m.kind = FlipMove::Kind::standard;
    } else if (kind == "double") {
      m.kind = FlipMove::Kind::double_flip;
    } else {
      throw ParseError("unknown move kind '" + kind + "'");
    }
    m.target = mj.at("target").get<std::string>();
    out.push_back(m);
  }
  return out;
}

std::string dump_flip_script(const std::vector<FlipMove>& moves) {
  json doc = json::array();
  for (const auto& m : moves) {
    doc.push_back({{"kind", m.kind == FlipMove::Kind::standard ? "standard" : "double"}, {"target", m.target}});
  }
  return doc.dump();
}

WalkText parse_walk_text(const RibbonGraph& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.empty()) throw ParseError("empty walk");
  WalkText out;
  const auto start = g.find_vertex(tokens.front());
  if (!start) throw ParseError("walk must begin with a vertex label, got '" + tokens.front() + "'");
  out.start = *start;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (auto e = g.find_edge(tokens[i])) {
      out.edges.push_back(*e);
      continue;
    }
    if (auto v = g.find_vertex(tokens[i]); v && i + 1 == tokens.size()) {
      out.finish = *v;
      continue;
    }
    throw ParseError("unknown or misplaced label '" + tokens[i] + "'");
  }
  return out;
}

Walk read_walk(const RibbonGraph& g, std::string_view text) {
  const WalkText wt = parse_walk_text(g, text);
  Walk w = standard_form(g, wt.start, wt.edges);
  if (wt.finish && *wt.finish != w.finish) {
    throw InputError("walk ends at " + g.label(w.finish) + ", not at " + g.label(*wt.finish));
  }
  return w;
}

std::string format_walk(const RibbonGraph& g, const Walk& w) {
  std::string out = g.label(w.start);
  for (EdgeId e : w.edges) out += " " + g.label(e);
  out += " " + g.label(w.finish);
  return out;
}

std::string kink_json(const Kink& k) {
  json j = {{"j", k.j},
            {"m", k.m},
            {"r", k.r},
            {"multiplicity", k.multiplicity},
            {"triangle", k.triangle},
            {"eta_order", {k.eta_first, k.eta_second}},
            {"core", {k.core_begin, k.core_end}}};
  return j.dump();
}

}  // namespace orbikink
