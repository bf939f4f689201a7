#ifndef WARPED_TESTS_SCHEMA_CHECK_HPP
#define WARPED_TESTS_SCHEMA_CHECK_HPP

// Minimal structural validator for the subset of JSON Schema the shipped
// schema files use: type, enum, required, properties, additionalProperties
// (boolean), items (single schema), minItems, maxItems.

#include <json.hpp>

#include <string>

namespace testsupport {

inline bool type_matches(const nlohmann::json& value, const std::string& t) {
  if (t == "object") return value.is_object();
  if (t == "array") return value.is_array();
  if (t == "string") return value.is_string();
  if (t == "boolean") return value.is_boolean();
  if (t == "integer") return value.is_number_integer();
  if (t == "number") return value.is_number();
  return false;
}

inline bool validate_schema(const nlohmann::json& value,
                            const nlohmann::json& schema, std::string* why) {
  const auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (schema.contains("type") &&
      !type_matches(value, schema.at("type").get<std::string>()))
    return fail("type mismatch, expected " +
                schema.at("type").get<std::string>());
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& candidate : schema.at("enum"))
      if (candidate == value) hit = true;
    if (!hit) return fail("value not in enum");
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema.at("required"))
        if (!value.contains(key.get<std::string>()))
          return fail("missing required key " + key.get<std::string>());
    const auto* props =
        schema.contains("properties") ? &schema.at("properties") : nullptr;
    for (const auto& [key, sub] : value.items()) {
      if (props != nullptr && props->contains(key)) {
        if (!validate_schema(sub, props->at(key), why)) {
          if (why) *why = key + ": " + *why;
          return false;
        }
      } else if (schema.contains("additionalProperties") &&
                 schema.at("additionalProperties").is_boolean() &&
                 !schema.at("additionalProperties").get<bool>()) {
        return fail("unexpected key " + key);
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") &&
        value.size() < schema.at("minItems").get<std::size_t>())
      return fail("too few items");
    if (schema.contains("maxItems") &&
        value.size() > schema.at("maxItems").get<std::size_t>())
      return fail("too many items");
    if (schema.contains("items")) {
      std::size_t index = 0;
      for (const auto& item : value) {
        if (!validate_schema(item, schema.at("items"), why)) {
          if (why) *why = "item " + std::to_string(index) + ": " + *why;
          return false;
        }
        ++index;
      }
    }
  }
  if (why) why->clear();
  return true;
}

} // namespace testsupport

#endif // WARPED_TESTS_SCHEMA_CHECK_HPP
