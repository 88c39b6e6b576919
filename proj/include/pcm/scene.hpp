// Scene configuration: JSON (de)serialization and validation.
//
// Coefficients are stored exactly as written so that a scene survives a
// serialize/parse round trip bit for bit. Normalization happens only when
// the PiecewiseMap is built.
#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcm/errors.hpp"
#include "pcm/fatou.hpp"
#include "pcm/piecewise.hpp"

namespace pcm {

struct MapSpec {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};
  Moebius build() const { return {a, b, c, d}; }
};

struct ConstraintSpec {
  double a = 1.0;
  cplx b{0.0};
  double d = -1.0;
  Side side = Side::negative;
};

struct RegionSpec {
  std::vector<ConstraintSpec> constraints;
  MapSpec map;
  std::optional<SpherePoint> interior;
};

struct SceneConfig {
  std::string name;
  std::vector<RegionSpec> regions;
  Viewport viewport;
  int width = 512, height = 512;
  int prefix = 24;
  int depth = 6;
  bool pd_overlay = true;
  bool periodic_markers = true;
  bool component_coloring = true;
  std::optional<SpherePoint> probe;  // representative point of the featured component
  std::string output;
  std::string notes;

  // Builds and validates the map (coverage, disjointness, branches).
  PiecewiseMap build() const {
    std::vector<Region> regs;
    std::vector<Moebius> maps;
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const auto& r = regions[i];
      Region reg;
      for (const auto& c : r.constraints) {
        try {
          reg.constraints.push_back({GenCircle(c.a, c.b, c.d), c.side});
        } catch (const std::invalid_argument&) {
          throw ValidationError("region " + std::to_string(i) + ": degenerate circle (|b|^2 <= ad)");
        }
      }
      reg.interior = r.interior;
      regs.push_back(std::move(reg));
      try {
        maps.push_back(r.map.build());
      } catch (const std::invalid_argument&) {
        throw ValidationError("region " + std::to_string(i) + ": degenerate branch (ad - bc = 0)");
      }
    }
    Partition part(std::move(regs));
    part.validate();
    return PiecewiseMap(std::move(part), std::move(maps));
  }
};

namespace detail {

using json = nlohmann::ordered_json;

inline json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json point_json(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  return cplx_json(p.value());
}

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what, field, 0);
}

inline double num(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "not finite");
  return v;
}

inline cplx cplx_of(const json& j, const std::string& field) {
  if (j.is_number()) return {num(j, field), 0.0};
  if (!j.is_array() || j.size() != 2) field_error(field, "expected [re, im]");
  return {num(j[0], field + "[0]"), num(j[1], field + "[1]")};
}

inline SpherePoint point_of(const json& j, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "inf") return SpherePoint::infinity();
  return SpherePoint(cplx_of(j, field));
}

inline const json& req(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) field_error(path + "." + key, "missing");
  return j.at(key);
}

}  // namespace detail

inline nlohmann::ordered_json scene_to_json(const SceneConfig& s) {
  using detail::json;
  json j;
  j["name"] = s.name;
  json regs = json::array();
  for (const auto& r : s.regions) {
    json jr;
    json cons = json::array();
    for (const auto& c : r.constraints) {
      cons.push_back({{"circle", {{"a", c.a}, {"b", detail::cplx_json(c.b)}, {"d", c.d}}},
                      {"side", c.side == Side::negative ? "negative" : "positive"}});
    }
    jr["constraints"] = cons;
    jr["map"] = {{"a", detail::cplx_json(r.map.a)},
                 {"b", detail::cplx_json(r.map.b)},
                 {"c", detail::cplx_json(r.map.c)},
                 {"d", detail::cplx_json(r.map.d)}};
    if (r.interior) jr["interior"] = detail::point_json(*r.interior);
    regs.push_back(jr);
  }
  j["regions"] = regs;
  j["viewport"] = {{"x", {s.viewport.x0, s.viewport.x1}},
                   {"y", {s.viewport.y0, s.viewport.y1}},
                   {"chart", s.viewport.chart == Chart::plane ? "plane" : "infinity"}};
  j["resolution"] = {s.width, s.height};
  j["prefix"] = s.prefix;
  j["depth"] = s.depth;
  j["render"] = {{"pd_overlay", s.pd_overlay},
                 {"periodic_markers", s.periodic_markers},
                 {"component_coloring", s.component_coloring}};
  if (s.probe) j["probe"] = detail::point_json(*s.probe);
  if (!s.output.empty()) j["output"] = s.output;
  if (!s.notes.empty()) j["notes"] = s.notes;
  return j;
}

inline std::string serialize_scene(const SceneConfig& s) { return scene_to_json(s).dump(2) + "\n"; }

// Parses and validates scene text. Throws ParseError (with line for syntax
// errors, field path for schema errors) or ValidationError.
inline SceneConfig parse_scene(const std::string& text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw ParseError(std::string("JSON syntax error at line ") + std::to_string(line) + ": " + e.what(), "", line);
  }
  if (!j.is_object()) detail::field_error("$", "expected an object");
  SceneConfig s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) detail::field_error("name", "expected a string");
    s.name = j["name"].get<std::string>();
  }
  const json& regs = detail::req(j, "regions", "$");
  if (!regs.is_array() || regs.empty()) detail::field_error("regions", "expected a non-empty array");
  for (std::size_t i = 0; i < regs.size(); ++i) {
    const std::string path = "regions[" + std::to_string(i) + "]";
    const json& jr = regs[i];
    RegionSpec r;
    const json& cons = detail::req(jr, "constraints", path);
    if (!cons.is_array() || cons.empty()) detail::field_error(path + ".constraints", "expected a non-empty array");
    for (std::size_t k = 0; k < cons.size(); ++k) {
      const std::string cp = path + ".constraints[" + std::to_string(k) + "]";
      const json& circ = detail::req(cons[k], "circle", cp);
      ConstraintSpec c;
      c.a = detail::num(detail::req(circ, "a", cp + ".circle"), cp + ".circle.a");
      c.b = detail::cplx_of(detail::req(circ, "b", cp + ".circle"), cp + ".circle.b");
      c.d = detail::num(detail::req(circ, "d", cp + ".circle"), cp + ".circle.d");
      if (cons[k].contains("side")) {
        const json& sd = cons[k]["side"];
        if (sd == "negative") {
          c.side = Side::negative;
        } else if (sd == "positive") {
          c.side = Side::positive;
        } else {
          detail::field_error(cp + ".side", "expected \"negative\" or \"positive\"");
        }
      }
      r.constraints.push_back(c);
    }
    const json& m = detail::req(jr, "map", path);
    r.map.a = detail::cplx_of(detail::req(m, "a", path + ".map"), path + ".map.a");
    r.map.b = detail::cplx_of(detail::req(m, "b", path + ".map"), path + ".map.b");
    r.map.c = detail::cplx_of(detail::req(m, "c", path + ".map"), path + ".map.c");
    r.map.d = detail::cplx_of(detail::req(m, "d", path + ".map"), path + ".map.d");
    if (jr.contains("interior")) r.interior = detail::point_of(jr["interior"], path + ".interior");
    s.regions.push_back(r);
  }
  if (j.contains("viewport")) {
    const json& v = j["viewport"];
    const cplx xr = detail::cplx_of(detail::req(v, "x", "viewport"), "viewport.x");
    const cplx yr = detail::cplx_of(detail::req(v, "y", "viewport"), "viewport.y");
    s.viewport = {xr.real(), xr.imag(), yr.real(), yr.imag(), Chart::plane};
    if (v.contains("chart")) {
      if (v["chart"] == "infinity") {
        s.viewport.chart = Chart::infinity;
      } else if (v["chart"] != "plane") {
        detail::field_error("viewport.chart", "expected \"plane\" or \"infinity\"");
      }
    }
    if (!(s.viewport.x1 > s.viewport.x0) || !(s.viewport.y1 > s.viewport.y0)) {
      throw ValidationError("viewport: empty rectangle");
    }
  }
  if (j.contains("resolution")) {
    const json& r = j["resolution"];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
      detail::field_error("resolution", "expected [width, height]");
    }
    s.width = r[0].get<int>();
    s.height = r[1].get<int>();
  }
  auto int_field = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) detail::field_error(key, "expected an integer");
    out = j[key].get<int>();
  };
  int_field("prefix", s.prefix);
  int_field("depth", s.depth);
  if (j.contains("render")) {
    const json& r = j["render"];
    auto flag = [&](const char* key, bool& out) {
      if (!r.contains(key)) return;
      if (!r[key].is_boolean()) detail::field_error(std::string("render.") + key, "expected a boolean");
      out = r[key].get<bool>();
    };
    flag("pd_overlay", s.pd_overlay);
    flag("periodic_markers", s.periodic_markers);
    flag("component_coloring", s.component_coloring);
  }
  if (j.contains("probe")) s.probe = detail::point_of(j["probe"], "probe");
  if (j.contains("output")) s.output = j["output"].get<std::string>();
  if (j.contains("notes")) s.notes = j["notes"].get<std::string>();
  if (s.width <= 0 || s.height <= 0) throw ValidationError("resolution must be positive");
  if (s.prefix <= 0 || s.prefix > 4096) throw ValidationError("prefix must be in 1..4096");
  if (s.depth < 0) throw ValidationError("depth must be non-negative");
  s.build();  // validate now so that a loaded scene is always usable
  return s;
}

inline SceneConfig load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, "", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

}  // namespace pcm
