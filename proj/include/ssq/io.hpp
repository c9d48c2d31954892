#pragma once

// JSON serialization of rules and reports. Scalars are written as exact
// fraction strings ("25/48") in the rational backend and as round-trip
// decimal strings in the float backend.

#include "ssq/quadrature.hpp"
#include "ssq/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ssq {

using Json = nlohmann::ordered_json;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts "p/q", decimal strings, and JSON numbers. Floating JSON numbers are
// read through their shortest decimal spelling.
inline Rational json_to_rational(const Json& j, const std::string& what) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned() || j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::invalid_argument& e) {
    throw FormatError(what + ": " + e.what());
  }
  throw FormatError(what + ": expected a number or a fraction string");
}

template <class S>
Json scalar_to_json(const S& v) {
  return to_string(v);
}

inline OrbitType parse_orbit_type(const Json& j) {
  if (j.is_number_integer()) {
    const int t = j.get<int>();
    if (t >= 0 && t <= 2) return static_cast<OrbitType>(t);
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "0" || s == "center") return OrbitType::center;
    if (s == "1" || s == "median") return OrbitType::median;
    if (s == "2" || s == "general") return OrbitType::general;
  }
  throw FormatError("orbit type must be 0, 1 or 2");
}

template <class S>
QuadratureRule<S> rule_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("rule file must be a JSON object");
  if (!doc.contains("degree") || !doc["degree"].is_number_integer()) {
    throw FormatError("rule file needs an integer 'degree'");
  }
  if (!doc.contains("orbits") || !doc["orbits"].is_array()) throw FormatError("rule file needs an 'orbits' array");
  std::vector<Orbit<S>> orbits;
  std::size_t index = 0;
  for (const auto& o : doc["orbits"]) {
    const std::string where = "orbit " + std::to_string(index++);
    if (!o.is_object()) throw FormatError(where + ": expected an object");
    if (!o.contains("type")) throw FormatError(where + ": missing 'type'");
    if (!o.contains("weight")) throw FormatError(where + ": missing 'weight'");
    Orbit<S> orbit{parse_orbit_type(o["type"]), S(0), S(0), from_rational<S>(json_to_rational(o["weight"], where))};
    if (orbit.type != OrbitType::center) {
      if (!o.contains("theta")) throw FormatError(where + ": missing 'theta'");
      orbit.theta = from_rational<S>(json_to_rational(o["theta"], where + " theta"));
    }
    if (orbit.type == OrbitType::general) {
      if (!o.contains("eta")) throw FormatError(where + ": missing 'eta'");
      orbit.eta = from_rational<S>(json_to_rational(o["eta"], where + " eta"));
    }
    orbits.push_back(orbit);
  }
  std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "rule";
  try {
    return QuadratureRule<S>(doc["degree"].get<int>(), std::move(orbits), std::move(name));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

template <class S>
Json rule_to_json(const QuadratureRule<S>& rule, const std::string& source = {}) {
  Json doc;
  doc["name"] = rule.name();
  if (!source.empty()) doc["source"] = source;
  doc["degree"] = rule.degree();
  const auto t = rule.type();
  doc["type"] = {t[0], t[1], t[2]};
  Json orbits = Json::array();
  for (const auto& o : rule.orbits()) {
    Json jo;
    jo["type"] = static_cast<int>(o.type);
    if (o.type != OrbitType::center) jo["theta"] = scalar_to_json(o.theta);
    if (o.type == OrbitType::general) jo["eta"] = scalar_to_json(o.eta);
    jo["weight"] = scalar_to_json(o.weight);
    orbits.push_back(jo);
  }
  doc["orbits"] = orbits;
  return doc;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

template <class S>
QuadratureRule<S> read_rule_file(const std::string& path) {
  return rule_from_json<S>(read_json_file(path));
}

template <class S>
Json report_to_json(const ExactnessReport<S>& rep) {
  Json doc;
  doc["rule"] = rep.rule;
  doc["target"] = rep.target;
  doc["area"] = scalar_to_json(rep.area);
  doc["verdict"] = verdict_name(rep.verdict);
  doc["exact_count"] = rep.exact_count();
  doc["count"] = rep.records.size();
  doc["max_abs_deviation"] = scalar_to_json(rep.max_abs_deviation);
  if (rep.used_side_convention) doc["side_convention"] = true;
  Json recs = Json::array();
  for (const auto& r : rep.records) {
    recs.push_back({{"label", r.label},
                    {"rule_value", scalar_to_json(r.rule_value)},
                    {"true_value", scalar_to_json(r.true_value)},
                    {"deviation", scalar_to_json(r.deviation)}});
  }
  doc["records"] = recs;
  return doc;
}

inline Json smoothness_to_json(const SmoothnessReport& rep) {
  Json doc;
  doc["required"] = rep.required;
  doc["flagged"] = rep.any_flagged();
  Json rows = Json::array();
  for (const auto& e : rep.entries) {
    rows.push_back({{"element", e.element.to_string()}, {"edge", e.edge_name}, {"order", e.order}, {"flagged", e.flagged}});
  }
  doc["entries"] = rows;
  return doc;
}

}  // namespace ssq
