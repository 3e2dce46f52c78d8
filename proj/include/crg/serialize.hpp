#pragma once

// JSON encoding of exact values and catalog entries.  Cyclotomics are
// {"conductor": n, "coeffs": [["num","den"], ...]} in the power basis;
// polynomials are lists of {"exp": [...], "coeff": ...}.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "crg/catalog.hpp"
#include "crg/polynomial.hpp"

namespace crg {

using Json = nlohmann::json;

/// Malformed input data (catalog files, command-line values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline Json to_json(const Rational& r) { return Json::array({r.get_num().get_str(), r.get_den().get_str()}); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw ConfigError("rational must be [\"num\", \"den\"]");
  return parse_rational(j[0].get<std::string>(), j[1].get<std::string>());
}

inline Json to_json(const Cyclotomic& c) {
  const Cyclotomic m = c.minimized();
  Json coeffs = Json::array();
  for (const auto& r : m.coeffs()) coeffs.push_back(to_json(r));
  return Json{{"conductor", m.conductor()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs") || !j["conductor"].is_number_integer() ||
      !j["coeffs"].is_array())
    throw ConfigError("cyclotomic must be {\"conductor\": n, \"coeffs\": [...]}");
  const int n = j["conductor"].get<int>();
  if (n <= 0) throw ConfigError("conductor must be positive");
  std::vector<Rational> c;
  for (const auto& x : j["coeffs"]) c.push_back(rational_from_json(x));
  return Cyclotomic::from_power_coeffs(n, c);
}

inline Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a nonempty list of rows");
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != j.size()) throw ConfigError("matrix must be square");
    std::vector<Cyclotomic> row;
    for (const auto& x : r) row.push_back(cyclotomic_from_json(x));
    rows.push_back(std::move(row));
  }
  return CMatrix::from_rows(rows);
}

inline Json to_json(const std::vector<Cyclotomic>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(to_json(c));
  return out;
}

inline Json exponent_json(const Exponent& e, int nvars) {
  Json out = Json::array();
  for (int i = 0; i < nvars; ++i) out.push_back(e[static_cast<std::size_t>(i)]);
  return out;
}

// Terms in decreasing exponent order.
template <class K>
Json to_json(const Polynomial<K>& p) {
  Json out = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Json coeff;
    if constexpr (std::is_same_v<K, Rational>) coeff = to_json(Cyclotomic(it->second));
    else coeff = to_json(it->second);
    out.push_back(Json{{"exp", exponent_json(it->first, p.nvars())}, {"coeff", coeff}});
  }
  return out;
}

inline MultiPoly poly_from_json(const Json& j, int nvars) {
  if (!j.is_array()) throw ConfigError("polynomial must be a list of terms");
  MultiPoly p(nvars);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coeff") || !t["exp"].is_array() ||
        static_cast<int>(t["exp"].size()) != nvars)
      throw ConfigError("polynomial term must be {\"exp\": [...], \"coeff\": ...}");
    Exponent e{};
    for (int i = 0; i < nvars; ++i) e[static_cast<std::size_t>(i)] = t["exp"][static_cast<std::size_t>(i)].get<std::uint16_t>();
    p.add_term(e, cyclotomic_from_json(t["coeff"]));
  }
  return p;
}

inline Json to_json(const GroupSpec& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(to_json(g));
  Json j{{"name", s.name},
         {"conductor", s.conductor},
         {"generators", gens},
         {"degrees", s.ref.degrees},
         {"codegrees", s.ref.codegrees}};
  j["expected_order"] = s.ref.expected_order ? Json(*s.ref.expected_order) : Json(nullptr);
  j["expected_derived_order"] = s.ref.expected_derived_order ? Json(*s.ref.expected_derived_order) : Json(nullptr);
  return j;
}

/// Parses and validates one catalog document.
inline GroupSpec group_spec_from_json(const Json& j) {
  auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw ConfigError(std::string("catalog entry lacks \"") + key + "\"");
    return j.at(key);
  };
  if (!j.is_object()) throw ConfigError("catalog entry must be an object");
  GroupSpec s;
  if (!need("name").is_string()) throw ConfigError("\"name\" must be a string");
  s.name = j["name"].get<std::string>();
  if (!need("conductor").is_number_integer() || j["conductor"].get<int>() <= 0)
    throw ConfigError(s.name + ": \"conductor\" must be a positive integer");
  s.conductor = j["conductor"].get<int>();
  if (!need("generators").is_array() || j["generators"].empty())
    throw ConfigError(s.name + ": \"generators\" must be a nonempty list");
  for (const auto& g : j["generators"]) s.generators.push_back(matrix_from_json(g));
  const std::size_t n = s.generators.front().rows();
  for (const auto& g : s.generators)
    if (g.rows() != n) throw ConfigError(s.name + ": generators have different sizes");
  auto int_list = [&](const char* key) {
    const Json& v = need(key);
    if (!v.is_array()) throw ConfigError(s.name + ": \"" + key + "\" must be a list");
    std::vector<int> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ConfigError(s.name + ": \"" + key + "\" must hold integers");
      out.push_back(x.get<int>());
    }
    if (out.size() != n) throw ConfigError(s.name + ": \"" + key + "\" must have one entry per coordinate");
    return out;
  };
  s.ref.degrees = int_list("degrees");
  s.ref.codegrees = int_list("codegrees");
  for (int d : s.ref.degrees)
    if (d <= 0) throw ConfigError(s.name + ": degrees must be positive");
  for (const char* key : {"expected_order", "expected_derived_order"}) {
    const Json& v = need(key);
    if (v.is_null()) continue;
    if (!v.is_number_integer() || v.get<long>() <= 0)
      throw ConfigError(s.name + ": \"" + key + "\" must be a positive integer or null");
    (std::string(key) == "expected_order" ? s.ref.expected_order : s.ref.expected_derived_order) = v.get<long>();
  }
  return s;
}

inline std::string catalog_file_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '(' || c == ')') continue;
    out += c == ',' ? '_' : c;
  }
  return out + ".json";
}

/// Every *.json file of a catalog directory, in table order and then by name.
inline std::vector<GroupSpec> load_catalog(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError("catalog directory '" + dir.string() + "' not found");
  std::vector<GroupSpec> out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ConfigError(f.filename().string() + ": " + e.what());
    }
    try {
      out.push_back(group_spec_from_json(j));
    } catch (const Json::exception& e) {
      throw ConfigError(f.filename().string() + ": " + e.what());
    }
  }
  if (out.empty()) throw ConfigError("catalog directory '" + dir.string() + "' holds no entries");
  const auto order = table_group_names();
  auto rank = [&](const GroupSpec& s) {
    const auto it = std::find(order.begin(), order.end(), canonical_group_name(s.name));
    return std::make_pair(static_cast<std::size_t>(it - order.begin()), s.name);
  };
  std::sort(out.begin(), out.end(), [&](const GroupSpec& a, const GroupSpec& b) { return rank(a) < rank(b); });
  return out;
}

inline void write_catalog(const std::filesystem::path& dir, const std::vector<GroupSpec>& specs) {
  std::filesystem::create_directories(dir);
  for (const auto& s : specs) {
    std::ofstream out(dir / catalog_file_name(s.name));
    out << to_json(s).dump(1) << "\n";
  }
}

}  // namespace crg
