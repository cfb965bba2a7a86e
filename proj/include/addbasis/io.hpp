#pragma once

// JSON forms shared by the CLI and by anything that exchanges instances:
//
//   scalar          "12", "-3", "-1/3"
//   ElementSet      ["0", "1/2", "3"]
//   SumCertificate  {"target": "12", "parts": ["4", "8"]}
//   BasisInstance   {"k": 2, "domain": "N", "A": ["0", "8", "12", "20", "32"]}
//   SolveResult     {"size", "basis", "exact", "certificates", "nodes"}
//   VectorFamily    {"n": 2, "k": 2, "parts": [[["1", "0"], ["0", "1"]], ...]}
//
// Parsing accepts JSON integers wherever a scalar string is expected.

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "addbasis/element_set.hpp"
#include "addbasis/error.hpp"
#include "addbasis/matrix.hpp"
#include "addbasis/rational.hpp"
#include "addbasis/solver.hpp"
#include "addbasis/vector_model.hpp"

namespace addbasis::io {

using nlohmann::json;

inline json to_json(const Rational& x) { return x.to_string(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
  throw ParseError("expected a scalar string, got " + j.dump());
}

inline json to_json(const ElementSet& s) {
  json out = json::array();
  for (const auto& x : s) out.push_back(to_json(x));
  return out;
}

inline ElementSet element_set_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars, got " + j.dump());
  std::vector<Rational> values;
  values.reserve(j.size());
  for (const auto& v : j) values.push_back(rational_from_json(v));
  return ElementSet(std::move(values));
}

/// An array, or the first of `keys` present in an object.
inline ElementSet element_set_from_document(const json& j, std::initializer_list<const char*> keys) {
  if (j.is_array()) return element_set_from_json(j);
  if (j.is_object()) {
    for (const char* key : keys)
      if (j.contains(key)) return element_set_from_json(j.at(key));
  }
  std::string names;
  for (const char* key : keys) names += std::string(names.empty() ? "" : ", ") + key;
  throw ParseError("expected an array or an object with one of: " + names);
}

inline json to_json(const SumCertificate& c) {
  json parts = json::array();
  for (const auto& p : c.parts) parts.push_back(to_json(p));
  return {{"target", to_json(c.target)}, {"parts", parts}};
}

inline SumCertificate certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("target") || !j.contains("parts") || !j.at("parts").is_array())
    throw ParseError("certificate needs 'target' and 'parts'");
  SumCertificate c;
  c.target = rational_from_json(j.at("target"));
  for (const auto& p : j.at("parts")) c.parts.push_back(rational_from_json(p));
  return c;
}

inline json to_json(const BasisInstance& instance) {
  return {{"k", instance.k}, {"domain", to_string(instance.domain)}, {"A", to_json(instance.targets)}};
}

inline BasisInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  if (!j.contains("A")) throw ParseError("instance needs field 'A'");
  BasisInstance instance;
  instance.targets = element_set_from_json(j.at("A"));
  if (j.contains("k")) {
    if (!j.at("k").is_number_unsigned() && !j.at("k").is_number_integer()) throw ParseError("'k' must be an integer");
    const auto k = j.at("k").get<std::int64_t>();
    if (k < 1) throw ParseError("'k' must be at least 1");
    instance.k = static_cast<std::size_t>(k);
  }
  if (j.contains("domain")) {
    if (!j.at("domain").is_string()) throw ParseError("'domain' must be a string");
    instance.domain = parse_domain(j.at("domain").get<std::string>());
  }
  return instance;
}

inline json to_json(const SolveResult& r) {
  json certs = json::array();
  for (const auto& [target, cert] : r.certificates) certs.push_back(to_json(cert));
  return {{"size", r.optimal_size},
          {"basis", to_json(r.witness)},
          {"exact", r.exact},
          {"certificates", certs},
          {"nodes", r.nodes_explored}};
}

inline json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline RationalVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a vector (array of scalars)");
  RationalVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline json to_json(const VectorFamily& f) {
  json parts = json::array();
  for (const auto& part : f.parts) {
    json p = json::array();
    for (const auto& v : part) p.push_back(to_json(v));
    parts.push_back(p);
  }
  return {{"n", f.dimension}, {"k", f.order}, {"parts", parts}};
}

inline VectorFamily vector_family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("parts")) throw ParseError("family needs 'n' and 'parts'");
  VectorFamily f;
  f.dimension = j.at("n").get<std::size_t>();
  const json& parts = j.at("parts");
  if (!parts.is_array()) throw ParseError("'parts' must be an array");
  f.order = j.contains("k") ? j.at("k").get<std::size_t>() : parts.size();
  for (const auto& part : parts) {
    if (!part.is_array()) throw ParseError("each part must be an array of vectors");
    std::vector<RationalVector> vs;
    for (const auto& v : part) vs.push_back(vector_from_json(v));
    f.parts.push_back(std::move(vs));
  }
  return f;
}

}  // namespace addbasis::io
