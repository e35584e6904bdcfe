#pragma once

#include <json.hpp>

#include "castellan/castling.hpp"
#include "castellan/integers.hpp"

namespace castellan {

/// Largest integer exactly representable by a JSON double consumer.
inline const Int kJsonSafeMax = (Int(1) << 53) - 1;

/// Integers within +/- (2^53 - 1) serialize as JSON numbers, anything
/// larger as decimal strings, so downstream tooling never loses digits.
inline nlohmann::json int_to_json(const Int& value) {
  if (value <= kJsonSafeMax && value >= -kJsonSafeMax) {
    return nlohmann::json(value.get_si());
  }
  return nlohmann::json(value.get_str());
}

inline Int int_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long>());
  throw std::invalid_argument("expected integer or decimal string in JSON");
}

inline nlohmann::json tuple_to_json(const castling::CastlingTuple& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Int& k : t.entries()) arr.push_back(int_to_json(k));
  return arr;
}

inline castling::CastlingTuple tuple_from_json(const nlohmann::json& j) {
  std::vector<Int> raw;
  for (const auto& item : j) raw.push_back(int_from_json(item));
  return castling::CastlingTuple::canonicalize(std::move(raw));
}

}  // namespace castellan
