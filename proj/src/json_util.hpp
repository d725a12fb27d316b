#pragma once

// Small helpers shared by the JSON readers.

#include "amoeba/errors.hpp"
#include "amoeba/rational.hpp"

#include <json.hpp>

#include <string>

namespace amoeba::detail {

inline const nlohmann::json& require_key(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return obj[key];
}

inline long long require_integer(const nlohmann::json& obj, const char* key) {
  const auto& v = require_key(obj, key);
  if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
  return v.get<long long>();
}

inline const nlohmann::json& require_array(const nlohmann::json& obj, const char* key) {
  const auto& v = require_key(obj, key);
  if (!v.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  return v;
}

// Rationals are written as strings; plain JSON integers are accepted too.
inline Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>()), 10));
  throw ParseError("expected a rational string, got " + v.dump());
}

}  // namespace amoeba::detail
