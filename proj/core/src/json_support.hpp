#pragma once

// Shared JSON helpers for the instance and document loaders. Private to the
// library; public headers never expose nlohmann types.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtsp/errors.hpp"
#include "mtsp/instance.hpp"
#include "mtsp/rational.hpp"

namespace mtsp::detail {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kSchema, "field '" + field + "': " + what);
}

/// Integers, decimal strings, "a/b" strings, and JSON floats (re-read from
/// their shortest round-trip text) are all accepted.
Rational rational_from_json(const json& value, const std::string& field);

Rational nonnegative_rational(const json& value, const std::string& field);

/// Absent or null -> unbounded.
Capacity capacity_from_json(const json& object, const char* key, const std::string& field);

std::vector<Rational> rational_array(const json& value, const std::string& field, std::size_t expected);

/// Resolves per-vehicle vectors that are either explicit arrays or
/// {scale_of, factor} references to another vehicle's vector. `raw[k]` is the
/// JSON for vehicle k+1.
std::vector<std::vector<Rational>> resolve_scaled_vectors(const std::vector<json>& raw,
                                                          const std::vector<std::string>& fields,
                                                          std::size_t expected);

int int_field(const json& object, const char* key, const std::string& field);

Instance instance_from_json(const json& doc);

json parse_document(std::string_view text);

}  // namespace mtsp::detail
