#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "poscurves/toric.hpp"

namespace poscurves {

using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rational& x) {
  if (is_integer(x)) {
    BigInt num = rat_num(x);
    if (num >= -(BigInt(1) << 53) && num <= (BigInt(1) << 53))
      return Json(num.template convert_to<std::int64_t>());
  }
  return Json(format_rational(x));
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("rational entries must be integers or \"p/q\" strings");
}

inline Json vec_to_json(const VecQ& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_json(x));
  return out;
}

inline VecQ vec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  VecQ out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

inline Json mat_to_json(const MatQ& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(vec_to_json(row));
  return out;
}

inline MatQ mat_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of arrays");
  MatQ out;
  for (const auto& row : j) out.push_back(vec_from_json(row));
  return out;
}

inline Json fan_to_json(const Fan& fan) {
  Json out;
  out["dim"] = fan.dim;
  out["rays"] = mat_to_json(fan.rays);
  Json cones = Json::array();
  for (const auto& c : fan.max_cones) cones.push_back(c);
  out["cones"] = cones;
  return out;
}

inline Fan fan_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rays") || !j.contains("cones"))
    throw std::invalid_argument("fan file needs dim, rays, and cones");
  Fan fan;
  fan.dim = j.at("dim").get<int>();
  fan.rays = mat_from_json(j.at("rays"));
  for (const auto& c : j.at("cones")) {
    std::vector<int> cone;
    for (const auto& idx : c) cone.push_back(idx.get<int>());
    fan.max_cones.push_back(std::move(cone));
  }
  return fan;
}

// Divisor files carry ray coefficients; {"coefficients": [...]} or a bare array.
inline VecQ divisor_from_json(const Json& j) {
  if (j.is_array()) return vec_from_json(j);
  if (j.is_object() && j.contains("coefficients")) return vec_from_json(j.at("coefficients"));
  throw std::invalid_argument("divisor file needs a coefficient array");
}

inline Json divisor_to_json(const VecQ& a) {
  Json out;
  out["coefficients"] = vec_to_json(a);
  return out;
}

// Curve files carry a Minkowski weight {"weight": [...]} (length r, validated
// as a relation among the rays) or class coordinates {"class": [...]}.
inline VecQ curve_from_json(const ToricVariety& x, const Json& j) {
  if (j.is_array()) {
    VecQ v = vec_from_json(j);
    if (static_cast<int>(v.size()) == x.d) return v;
    return x.curve_coords(v);
  }
  if (j.is_object() && j.contains("weight")) return x.curve_coords(vec_from_json(j.at("weight")));
  if (j.is_object() && j.contains("class")) return vec_from_json(j.at("class"));
  throw std::invalid_argument("curve file needs a weight or class array");
}

inline Json curve_to_json(const ToricVariety& x, const VecQ& cls) {
  Json out;
  out["class"] = vec_to_json(cls);
  out["weight"] = vec_to_json(x.relation_of(cls));
  return out;
}

inline Json cone_to_json(const ConeDesc& c) {
  Json out;
  out["dim"] = c.dim;
  out["generators"] = mat_to_json(c.generators);
  out["inequalities"] = mat_to_json(c.inequalities);
  return out;
}

inline Json polytope_to_json(const PolytopeQ& p) {
  Json out;
  Json hs = Json::array();
  for (const auto& h : p.halfspaces) {
    Json e;
    e["normal"] = vec_to_json(h.normal);
    e["offset"] = rational_to_json(h.offset);
    e["redundant"] = h.redundant;
    hs.push_back(std::move(e));
  }
  out["halfspaces"] = hs;
  out["vertices"] = mat_to_json(p.vertices);
  return out;
}

// Plain-text vertex dump for 2D/3D polytopes.
template <typename T>
std::string polytope_mesh_text(const Polytope<T>& p, int dim) {
  std::ostringstream os;
  os << "dim " << dim << "\n";
  os << "vertices " << p.vertices.size() << "\n";
  for (const auto& v : p.vertices) {
    for (size_t j = 0; j < v.size(); ++j) {
      if (j) os << ' ';
      os << to_double(v[j]);
    }
    os << "\n";
  }
  return os.str();
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace poscurves
