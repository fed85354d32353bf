#pragma once

// JSON (de)serialization for the documented file formats and reports.
// Depends on the bundled nlohmann/json single header; the core library
// headers stay free of this dependency.
//
// Integer convention: values that fit in a signed 64-bit integer are
// emitted as JSON numbers, anything larger as a decimal string; parsers
// accept both forms.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dioph/bigint.hpp"
#include "dioph/carpet.hpp"
#include "dioph/chi.hpp"
#include "dioph/figure.hpp"
#include "dioph/planar_extension.hpp"
#include "dioph/point.hpp"
#include "dioph/spatial.hpp"
#include "dioph/triples.hpp"

namespace dioph {

using Json = nlohmann::ordered_json;

inline Json json_int(const BigInt& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

inline BigInt parse_bigint(const Json& j, const std::string& what) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
    return BigInt(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return BigInt(s);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(what + " is not a decimal integer: \"" + s + "\"");
    }
  }
  throw std::invalid_argument(what + " must be an integer or a decimal string");
}

inline Json json_point2(const LatticePoint2& p) { return Json::array({json_int(p.x), json_int(p.y)}); }

inline Json json_point3(const LatticePoint3& p) {
  return Json::array({json_int(p.x), json_int(p.y), json_int(p.z)});
}

inline LatticePoint2 parse_point2(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument(what + " must be an array [x, y]");
  return {parse_bigint(j[0], what + "[0]"), parse_bigint(j[1], what + "[1]")};
}

inline LatticePoint3 parse_point3(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument(what + " must be an array [x, y, z]");
  return {parse_bigint(j[0], what + "[0]"), parse_bigint(j[1], what + "[1]"),
          parse_bigint(j[2], what + "[2]")};
}

// {"points": [[x, y], ...]}
inline std::vector<LatticePoint2> parse_points2(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw std::invalid_argument("figure file must be an object with a \"points\" array");
  std::vector<LatticePoint2> pts;
  pts.reserve(j["points"].size());
  for (std::size_t i = 0; i < j["points"].size(); ++i)
    pts.push_back(parse_point2(j["points"][i], "points[" + std::to_string(i) + "]"));
  return pts;
}

// Either {"points": [[x, y, z] x 4]} or {"A": [...], "B": [...], "C": [...], "D": [...]}.
inline std::array<LatticePoint3, 4> parse_tetra_vertices(const Json& j) {
  std::array<LatticePoint3, 4> v;
  if (j.is_object() && j.contains("points")) {
    if (!j["points"].is_array() || j["points"].size() != 4)
      throw std::invalid_argument("a spatial figure needs exactly four points");
    for (int i = 0; i < 4; ++i)
      v[i] = parse_point3(j["points"][i], "points[" + std::to_string(i) + "]");
    return v;
  }
  static const char* const names[4] = {"A", "B", "C", "D"};
  if (!j.is_object())
    throw std::invalid_argument("tetrahedron file must be an object with A, B, C, D");
  for (int i = 0; i < 4; ++i) {
    if (!j.contains(names[i]))
      throw std::invalid_argument(std::string("tetrahedron file is missing vertex ") + names[i]);
    v[i] = parse_point3(j[names[i]], names[i]);
  }
  return v;
}

// {"triangles": [[[x, y], [x, y], [x, y]], ...]}
inline std::vector<Triangle2> parse_carpet_triangles(const Json& j) {
  if (!j.is_object() || !j.contains("triangles") || !j["triangles"].is_array())
    throw std::invalid_argument("carpet file must be an object with a \"triangles\" array");
  std::vector<Triangle2> tris;
  tris.reserve(j["triangles"].size());
  for (std::size_t i = 0; i < j["triangles"].size(); ++i) {
    const Json& t = j["triangles"][i];
    const std::string what = "triangles[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() != 3)
      throw std::invalid_argument(what + " must be an array of three points");
    tris.push_back({parse_point2(t[0], what + "[0]"), parse_point2(t[1], what + "[1]"),
                    parse_point2(t[2], what + "[2]")});
  }
  return tris;
}

inline Json json_tetrahedron(const std::array<LatticePoint3, 4>& v) {
  Json j;
  j["A"] = json_point3(v[0]);
  j["B"] = json_point3(v[1]);
  j["C"] = json_point3(v[2]);
  j["D"] = json_point3(v[3]);
  return j;
}

inline Json json_chi(const ChiResult& r) {
  Json j;
  j["l"] = r.l;
  j["chi_brute"] = r.chi_brute;
  j["chi_divisor"] = r.chi_divisor;
  j["chi_paper_literal"] = r.chi_paper_literal;
  j["agree"] = r.agree;
  return j;
}

inline Json json_triple(const SideTriple& t) {
  Json j;
  j["a"] = json_int(t.a);
  j["b"] = json_int(t.b);
  j["c"] = json_int(t.c);
  return j;
}

inline Json json_embedding(const Embedding& e) {
  Json j;
  j["A"] = json_point2(e.A);
  j["B"] = json_point2(e.B);
  j["C"] = json_point2(e.C);
  return j;
}

// classify-triple / search-triangles record
inline Json json_triple_report(const TripleReport& r) {
  Json j;
  j["triple"] = json_triple(r.triple);
  j["heronian"] = r.heronian;
  j["pythagorean"] = r.pythagorean;
  j["embeddings"] = Json::array();
  for (std::size_t i = 0; i < r.embeddings.size(); ++i) {
    Json e = json_embedding(r.embeddings[i]);
    e["extension_count"] = r.per_embedding_extension_counts[i];
    j["embeddings"].push_back(std::move(e));
  }
  j["erdos"] = r.erdos;
  return j;
}

inline Json json_extend2(const ExtensionReport& r) {
  Json j;
  j["dims"] = 2;
  j["status"] = "OK";
  j["base"] = Json::array({json_point2(r.base[0]), json_point2(r.base[1]), json_point2(r.base[2])});
  j["extension_count"] = r.extension_points.size();
  j["extension_points"] = Json::array();
  for (const auto& p : r.extension_points) j["extension_points"].push_back(json_point2(p));
  j["systems_solved"] = r.systems_solved;
  j["systems_total"] = r.systems_solved;  // the planar sweep is never truncated
  j["complete"] = true;
  return j;
}

inline Json json_extend3(const ExtensionReport3& r) {
  Json j;
  j["dims"] = 3;
  // A truncated sweep is an incomplete enumeration even when points were found.
  j["status"] = r.complete ? "OK" : "UNDECIDED";
  j["base"] = Json::array({json_point3(r.base[0]), json_point3(r.base[1]), json_point3(r.base[2]),
                           json_point3(r.base[3])});
  j["extension_count"] = r.extension_points.size();
  j["extension_points"] = Json::array();
  for (const auto& p : r.extension_points) j["extension_points"].push_back(json_point3(p));
  j["systems_solved"] = r.systems_solved;
  j["systems_total"] = r.systems_total;
  j["complete"] = r.complete;
  return j;
}

inline Json json_metrics(const TetraMetrics& m) {
  static const char* const edge_names[6] = {"AB", "AC", "AD", "BC", "BD", "CD"};
  static const char* const face_names[4] = {"ABC", "ABD", "ACD", "BCD"};
  auto opt = [](const std::optional<BigInt>& v) { return v ? json_int(*v) : Json(nullptr); };
  Json j;
  j["edges"] = Json::object();
  for (int i = 0; i < 6; ++i) j["edges"][edge_names[i]] = opt(m.edges[i]);
  j["faces"] = Json::object();
  for (int i = 0; i < 4; ++i) j["faces"][face_names[i]] = opt(m.faces[i]);
  j["volume"] = opt(m.volume);
  j["twice_areas_sq"] = Json::array();
  for (int i = 0; i < 4; ++i) j["twice_areas_sq"].push_back(json_int(m.twice_areas_sq[i]));
  j["six_volume"] = json_int(m.six_volume);
  return j;
}

inline Json json_violation(const Violation& v) {
  Json j;
  j["kind"] = violation_name(v.kind);
  j["first"] = v.first;
  j["second"] = v.second;
  j["detail"] = v.detail;
  return j;
}

inline Json json_carpet_validation(const CarpetValidation& v, std::size_t triangle_count) {
  Json j;
  j["valid"] = v.carpet.has_value();
  j["triangle_count"] = triangle_count;
  j["violations"] = Json::array();
  for (const auto& viol : v.violations) j["violations"].push_back(json_violation(viol));
  return j;
}

// {"k": n, "colors": [...], "witness": [...] | null}
inline Json json_coloring(const Coloring& c) {
  Json j;
  j["k"] = c.k;
  j["colors"] = c.assignment;
  if (c.odd_cycle.empty())
    j["witness"] = nullptr;
  else
    j["witness"] = c.odd_cycle;
  return j;
}

}  // namespace dioph
