#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace reso {

/// Minimal JSON-schema validator covering the subset our config schemas use:
/// type, required, properties, additionalProperties (boolean), enum, items,
/// minimum / exclusiveMinimum / maximum, minItems / maxItems. Returns a list
/// of human-readable violations; empty means valid.
inline void validate_schema_at(const nlohmann::json& schema, const nlohmann::json& value,
                               const std::string& path, std::vector<std::string>* errors) {
  using nlohmann::json;
  if (schema.contains("type")) {
    std::string t = schema["type"].get<std::string>();
    bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) || (t == "boolean" && value.is_boolean()) ||
              (t == "number" && value.is_number()) ||
              (t == "integer" && value.is_number_integer());
    if (!ok) {
      errors->push_back(path + ": expected " + t);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& opt : schema["enum"])
      if (opt == value) found = true;
    if (!found) errors->push_back(path + ": value not in enum " + schema["enum"].dump());
  }
  if (value.is_number()) {
    double x = value.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>())
      errors->push_back(path + ": below minimum " + schema["minimum"].dump());
    if (schema.contains("exclusiveMinimum") && x <= schema["exclusiveMinimum"].get<double>())
      errors->push_back(path + ": must exceed " + schema["exclusiveMinimum"].dump());
    if (schema.contains("maximum") && x > schema["maximum"].get<double>())
      errors->push_back(path + ": above maximum " + schema["maximum"].dump());
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          errors->push_back(path + ": missing required key '" + key.get<std::string>() + "'");
    if (schema.contains("properties")) {
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
        if (value.contains(it.key()))
          validate_schema_at(it.value(), value[it.key()], path + "." + it.key(), errors);
      if (schema.value("additionalProperties", true) == false)
        for (auto it = value.begin(); it != value.end(); ++it)
          if (!schema["properties"].contains(it.key()))
            errors->push_back(path + ": unexpected key '" + it.key() + "'");
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
      errors->push_back(path + ": fewer than " + schema["minItems"].dump() + " items");
    if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>())
      errors->push_back(path + ": more than " + schema["maxItems"].dump() + " items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < value.size(); ++i)
        validate_schema_at(schema["items"], value[i], path + "[" + std::to_string(i) + "]", errors);
  }
}

inline std::vector<std::string> validate_schema(const nlohmann::json& schema,
                                                const nlohmann::json& value) {
  std::vector<std::string> errors;
  validate_schema_at(schema, value, "$", &errors);
  return errors;
}

}  // namespace reso
