// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace nestexp {

/// Canonical JSON serialization: objects in lexicographic key order (the
/// nlohmann::json default), floats as %.17g (round-trip exact for doubles),
/// integers plain, no whitespace. parse-then-serialize of canonical output is
/// byte-identical.
inline std::string format_double17(double v) {
  if (!std::isfinite(v))
    throw std::invalid_argument("canonical JSON: non-finite number");
  if (v == 0.0) v = 0.0;  // normalize -0 so the text round-trips
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string canonical_json(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      std::string out = "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ":";
        out += canonical_json(it.value());
      }
      return out + "}";
    }
    case nlohmann::json::value_t::array: {
      std::string out = "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",";
        first = false;
        out += canonical_json(v);
      }
      return out + "]";
    }
    case nlohmann::json::value_t::number_float:
      return format_double17(j.get<double>());
    default:
      // strings, integers, booleans, null: nlohmann's dump is canonical
      return j.dump();
  }
}

}  // namespace nestexp
