#pragma once

// JSON schemas used by the command-line tool. Exact rationals travel as
// "p/q" strings and log values as canonical expressions ("log2(3) - 1/2").

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "infodim/cantor.hpp"
#include "infodim/distributions.hpp"
#include "infodim/error.hpp"
#include "infodim/group.hpp"
#include "infodim/shannon.hpp"
#include "infodim/splitting.hpp"

namespace infodim::json_io {

using nlohmann::json;

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("json", path + ": " + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("schema", std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw Error("schema", std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

inline Tuple tuple(const json& j) {
  if (!j.is_array()) throw Error("schema", "point must be an array of integers");
  Tuple out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error("schema", "point coordinates must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

inline std::vector<Tuple> tuples(const json& j) {
  if (!j.is_array()) throw Error("schema", "expected an array of points");
  std::vector<Tuple> out;
  for (const auto& p : j) out.push_back(tuple(p));
  return out;
}

inline std::vector<std::vector<int>> int_matrix(const json& j, const char* what) {
  if (!j.is_array()) throw Error("schema", std::string(what) + " must be an array of arrays");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) out.push_back(tuple(row));
  return out;
}

}  // namespace detail

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error("schema", "rational must be a \"p/q\" string or an integer");
}

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const Tuple& t) { return json(t); }

/// {"m": int, "atoms": [{"point": [...], "prob": "p/q"}]} or {"m": int, "support": [[...]]}.
inline std::variant<JointDistribution, SupportSet> distribution_from_json(const json& j) {
  const int m = detail::int_field(j, "m");
  if (j.contains("atoms")) {
    JointDistribution d{m, {}};
    for (const auto& a : j.at("atoms")) {
      d.atoms.push_back({detail::tuple(detail::field(a, "point")), rational_from_json(detail::field(a, "prob"))});
    }
    return validate(std::move(d));
  }
  if (j.contains("support")) return validate(SupportSet{m, detail::tuples(j.at("support"))});
  throw Error("schema", "distribution needs 'atoms' or 'support'");
}

/// {"order": n, "table": [[...]]} or {"perm_degree": k, "generators": [[...]]}.
inline FiniteGroup group_from_json(const json& j) {
  if (j.contains("table")) {
    auto table = detail::int_matrix(j.at("table"), "table");
    if (j.contains("order") && detail::int_field(j, "order") != static_cast<int>(table.size())) {
      throw Error("schema", "'order' does not match the table size");
    }
    return FiniteGroup::from_table(table);
  }
  if (j.contains("perm_degree")) {
    return permutation_group(detail::int_field(j, "perm_degree"), detail::int_matrix(detail::field(j, "generators"), "generators"));
  }
  throw Error("schema", "group needs 'table' or 'perm_degree'");
}

/// A single group object or an array of them (each may carry a "name").
inline std::vector<CatalogEntry> catalog_from_json(const json& j) {
  std::vector<CatalogEntry> out;
  auto one = [&out](const json& g) {
    std::string name = g.contains("name") ? g.at("name").get<std::string>() : "G" + std::to_string(out.size());
    out.push_back({std::move(name), group_from_json(g)});
  };
  if (j.is_array()) {
    for (const auto& g : j) one(g);
  } else {
    one(j);
  }
  return out;
}

inline json to_json(const FiniteGroup& g) { return {{"order", g.order()}, {"table", g.table()}}; }

/// Subgroups as element-index arrays: [[0,1],[0,2],...].
inline std::vector<Subgroup> subgroups_from_json(const FiniteGroup& g, const json& j) {
  std::vector<Subgroup> out;
  for (const auto& elems : detail::int_matrix(j, "subgroups")) out.push_back(subgroup_from_elements(g, elems));
  return out;
}

inline json to_json(const Subgroup& h) { return json(h.elements()); }

/// {"m": int, "N": int, "points": [[digit,...],...]}
inline CantorWitness witness_from_json(const json& j) {
  return {detail::int_field(j, "m"), detail::int_field(j, "N"), detail::tuples(detail::field(j, "points"))};
}

inline json to_json(const CantorWitness& w) { return {{"m", w.m()}, {"N", w.base()}, {"points", w.points()}}; }

inline FiniteBody body_from_json(const json& j) {
  return {detail::int_field(j, "m"), detail::int_field(j, "N"), detail::tuples(detail::field(j, "points"))};
}

inline json to_json(const FiniteBody& b) { return {{"m", b.m()}, {"N", b.base()}, {"points", b.points()}}; }

inline SubsetIndex subset_from_json(const json& j) {
  std::uint32_t mask = 0;
  for (int p : detail::tuple(j)) {
    if (p < 1 || p > kMaxVariables) throw Error("schema", "subset position " + std::to_string(p) + " out of range");
    mask |= 1u << (p - 1);
  }
  if (mask == 0) throw Error("schema", "empty subset");
  return SubsetIndex(mask);
}

inline json to_json(SubsetIndex s) { return json(s.positions()); }

/// {"parts": [{"subset": [1], "level": 2.0}, {"subset": [1,2,3], "level": "log2(3) - 1/2"}]}
/// Numeric levels are bits; string levels are exact log-linear expressions.
inline SplitSpec split_spec_from_json(const json& j) {
  SplitSpec spec;
  for (const auto& part : detail::field(j, "parts")) {
    const json& level = detail::field(part, "level");
    SplitLevel parsed;
    if (level.is_number()) {
      parsed = level.get<double>();
    } else if (level.is_string()) {
      parsed = parse_loglin(level.get<std::string>());
    } else {
      throw Error("schema", "level must be a number of bits or a log expression string");
    }
    spec.parts.push_back({subset_from_json(detail::field(part, "subset")), std::move(parsed)});
  }
  return spec;
}

inline json to_json(const SplitLevel& level) {
  if (const auto* bits = std::get_if<double>(&level)) return *bits;
  return std::get<ExactLogLin>(level).to_string();
}

inline json to_json(const SplitSpec& spec) {
  json parts = json::array();
  for (const auto& p : spec.parts) parts.push_back({{"subset", to_json(p.subset)}, {"level", to_json(p.level)}});
  return {{"parts", parts}};
}

/// Point index -> part label, as an array aligned with the body's sorted points.
inline json to_json(const SplitResult& r, const SplitSpec& spec) {
  json labels = json::array();
  for (std::size_t part : r.assignment) labels.push_back(to_string(spec.parts.at(part).subset));
  return labels;
}

inline json to_json(const ShannonCertificate& cert, const ElementalSet& elemental) {
  json rows = json::array();
  for (const auto& [row, weight] : cert.weights) {
    rows.push_back({{"row", row}, {"label", elemental.labels.at(row)}, {"weight", to_string(weight)}});
  }
  return rows;
}

inline json to_json(const PolymatroidPoint& p, const std::vector<std::string>& names) {
  json out = json::array();
  for (SubsetIndex s : subsets(p.m)) {
    out.push_back({{"subset", "H(" + join_names(s, names) + ")"}, {"value", to_string(p.values[s.slot()])}});
  }
  return out;
}

inline json to_json(const ExactLogLin& x) { return {{"exact", x.to_string()}, {"float", x.to_double()}}; }

inline json to_json(const DimValue& d) {
  return {{"cardinality", d.cardinality}, {"N", d.base}, {"exact", d.to_string()}, {"float", d.to_double()}};
}

}  // namespace infodim::json_io
