#ifndef FLATORBIT_IO_HPP
#define FLATORBIT_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "flatorbit/errors.hpp"
#include "flatorbit/lie_algebra.hpp"
#include "flatorbit/orbit.hpp"
#include "flatorbit/rational.hpp"

namespace flatorbit {

using ordered_json = nlohmann::ordered_json;

/// Algebra description as stored on disk:
///   { "name": ..., "dim": n, "labels": [...],
///     "brackets": [ { "i": 4, "j": 3, "value": { "1": "1" } }, ... ],
///     "xi0": ["1", "0", ...], "eta_names": [...], "x_names": [...],
///     "expected_invariant_ops": ["∂2", ...] }
/// Only dim, labels and brackets are required. Bracket keys are 0-based basis
/// indices; rationals are strings "p" or "p/q".
struct AlgebraSpec {
  std::string name;
  LieAlgebra algebra;
  std::optional<RatVector> xi0;
  VarList eta_names;
  VarList x_names;
  std::optional<std::vector<std::string>> expected_invariant_ops;

  OrbitOptions orbit_options() const { return {x_names, eta_names}; }
};

namespace detail {

inline Rational json_rational(const ordered_json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(where + ": rational must be a string such as \"3/4\"");
}

inline std::size_t json_index(const ordered_json& v, std::size_t dim, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError(where + ": expected a non-negative integer");
  auto k = static_cast<std::size_t>(v.get<long long>());
  if (k >= dim) throw ParseError(where + ": index " + std::to_string(k) + " out of range for dimension " + std::to_string(dim));
  return k;
}

inline std::vector<std::string> json_strings(const ordered_json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline AlgebraSpec algebra_spec_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw ParseError("algebra spec must be a JSON object");
  for (const char* key : {"dim", "labels", "brackets"})
    if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0)
    throw ParseError("\"dim\" must be a positive integer");
  const auto dim = static_cast<std::size_t>(doc["dim"].get<long long>());
  auto labels = detail::json_strings(doc["labels"], "labels");
  if (labels.size() != dim)
    throw ParseError("\"labels\" has " + std::to_string(labels.size()) + " entries but dim is " + std::to_string(dim));

  if (!doc["brackets"].is_array()) throw ParseError("\"brackets\" must be an array");
  std::vector<BracketEntry> entries;
  std::size_t count = 0;
  for (const auto& b : doc["brackets"]) {
    const std::string where = "brackets[" + std::to_string(count++) + "]";
    if (!b.is_object() || !b.contains("i") || !b.contains("j") || !b.contains("value"))
      throw ParseError(where + ": expected {\"i\", \"j\", \"value\"}");
    BracketEntry e{detail::json_index(b["i"], dim, where + ".i"), detail::json_index(b["j"], dim, where + ".j"),
                   RatVector(dim)};
    if (!b["value"].is_object()) throw ParseError(where + ".value: expected an object of index -> rational");
    for (const auto& [key, val] : b["value"].items()) {
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        long long raw = std::stoll(key, &used);
        if (used != key.size() || raw < 0) throw std::invalid_argument(key);
        k = static_cast<std::size_t>(raw);
      } catch (const std::exception&) {
        throw ParseError(where + ".value: key \"" + key + "\" is not a basis index");
      }
      if (k >= dim) throw ParseError(where + ".value: index " + key + " out of range");
      e.value[k] = detail::json_rational(val, where + ".value." + key);
    }
    entries.push_back(std::move(e));
  }

  AlgebraSpec spec;
  spec.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : std::string();
  spec.algebra = LieAlgebra(std::move(labels), entries);
  if (doc.contains("xi0")) {
    if (!doc["xi0"].is_array() || doc["xi0"].size() != dim)
      throw ParseError("\"xi0\" must be an array of " + std::to_string(dim) + " rationals");
    RatVector xi(dim);
    for (std::size_t k = 0; k < dim; ++k) xi[k] = detail::json_rational(doc["xi0"][k], "xi0[" + std::to_string(k) + "]");
    spec.xi0 = std::move(xi);
  }
  if (doc.contains("eta_names")) {
    spec.eta_names = detail::json_strings(doc["eta_names"], "eta_names");
    if (spec.eta_names.size() + 1 != dim) throw ParseError("\"eta_names\" needs dim - 1 entries");
  }
  if (doc.contains("x_names")) {
    spec.x_names = detail::json_strings(doc["x_names"], "x_names");
    if (spec.x_names.size() + 1 != dim) throw ParseError("\"x_names\" needs dim - 1 entries");
  }
  if (doc.contains("expected_invariant_ops"))
    spec.expected_invariant_ops = detail::json_strings(doc["expected_invariant_ops"], "expected_invariant_ops");
  return spec;
}

inline AlgebraSpec parse_algebra_spec(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return algebra_spec_from_json(doc);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AlgebraSpec load_algebra_spec(const std::string& path) { return parse_algebra_spec(read_text_file(path)); }

inline ordered_json rational_vector_json(const RatVector& v) {
  ordered_json a = ordered_json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

inline ordered_json algebra_spec_to_json(const AlgebraSpec& spec) {
  const LieAlgebra& L = spec.algebra;
  ordered_json doc;
  if (!spec.name.empty()) doc["name"] = spec.name;
  doc["dim"] = L.dim();
  doc["labels"] = L.labels();
  ordered_json br = ordered_json::array();
  for (const auto& e : L.entries()) {
    ordered_json val = ordered_json::object();
    for (std::size_t k = 0; k < e.value.size(); ++k)
      if (!e.value[k].is_zero()) val[std::to_string(k)] = e.value[k].str();
    br.push_back({{"i", e.i}, {"j", e.j}, {"value", val}});
  }
  doc["brackets"] = br;
  if (spec.xi0) doc["xi0"] = rational_vector_json(*spec.xi0);
  if (!spec.eta_names.empty()) doc["eta_names"] = spec.eta_names;
  if (!spec.x_names.empty()) doc["x_names"] = spec.x_names;
  if (spec.expected_invariant_ops) doc["expected_invariant_ops"] = *spec.expected_invariant_ops;
  return doc;
}

/// 64-bit FNV-1a, printed as 16 hex digits; identifies report inputs.
inline std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace flatorbit

#endif
