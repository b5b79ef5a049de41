#pragma once

#include <string>

#include <json.hpp>

#include "ftswrl/errors.hpp"
#include "ftswrl/ite.hpp"

namespace ftswrl {

namespace detail {

inline std::pair<std::size_t, std::size_t> lineColumnAt(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline nlohmann::json parseJsonDocument(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = lineColumnAt(text, e.byte > 0 ? e.byte - 1 : 0);
    fail(ErrorCode::SchemaError, "JSON parse error at line " + std::to_string(line) + ", column " +
                                     std::to_string(col) + ": " + e.what());
  }
}

}  // namespace detail

// Overrides parsed on top of EngineConfig::defaults(). Recognized keys:
//   defaultW            number in (0, 1]
//   fuzzyCounts         object keyword -> [lo, hi]
//   fuzzyGranularities  object keyword -> duration text ("7 days")
//   deicticWindow       duration text
//   now                 ISO 8601 instant
inline EngineConfig loadConfig(const std::string& jsonText) {
  EngineConfig cfg = EngineConfig::defaults();
  const nlohmann::json j = detail::parseJsonDocument(jsonText);
  if (!j.is_object()) fail(ErrorCode::SchemaError, "config document must be a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (key == "defaultW") {
      if (!value.is_number()) fail(ErrorCode::SchemaError, "defaultW must be a number");
      const double w = value.get<double>();
      if (!(w > 0.0 && w <= 1.0)) fail(ErrorCode::InvalidWeight, "defaultW must satisfy 0 < w <= 1");
      cfg.defaultW = w;
    } else if (key == "fuzzyCounts") {
      if (!value.is_object()) fail(ErrorCode::SchemaError, "fuzzyCounts must be an object");
      for (const auto& [keyword, range] : value.items()) {
        if (!range.is_array() || range.size() != 2 || !range[0].is_number() || !range[1].is_number())
          fail(ErrorCode::SchemaError, "fuzzyCounts entry '" + keyword + "' must be [lo, hi]");
        const double lo = range[0].get<double>(), hi = range[1].get<double>();
        if (!(lo >= 0.0 && lo <= hi))
          fail(ErrorCode::SchemaError, "fuzzyCounts entry '" + keyword + "' requires 0 <= lo <= hi");
        const std::string k = lowercased(keyword);
        auto it = cfg.fuzzyCounts.find(k);
        if (it != cfg.fuzzyCounts.end()) {
          it->second.lo = lo;
          it->second.hi = hi;
        } else {
          cfg.fuzzyCounts[k] = FuzzyCountSpec{k, lo, hi, false, 0};
        }
      }
    } else if (key == "fuzzyGranularities") {
      if (!value.is_object()) fail(ErrorCode::SchemaError, "fuzzyGranularities must be an object");
      for (const auto& [keyword, text] : value.items()) {
        if (!text.is_string())
          fail(ErrorCode::SchemaError, "fuzzyGranularities entry '" + keyword + "' must be a duration string");
        const std::string k = lowercased(keyword);
        const bool clock = k == "noon";
        cfg.fuzzyGranularities[k] = FuzzyGranularitySpec{k, parseDuration(text.get<std::string>()), clock};
      }
    } else if (key == "deicticWindow") {
      if (!value.is_string()) fail(ErrorCode::SchemaError, "deicticWindow must be a duration string");
      cfg.deicticWindow = parseDuration(value.get<std::string>());
      if (!(cfg.deicticWindow.millisExact() > 0.0))
        fail(ErrorCode::SchemaError, "deicticWindow must be positive");
    } else if (key == "now") {
      if (!value.is_string()) fail(ErrorCode::SchemaError, "now must be an ISO 8601 string");
      cfg.now = parseInstant(value.get<std::string>());
    } else {
      fail(ErrorCode::SchemaError, "unknown config key: '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace ftswrl
