#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ngf/attribute.hpp"

namespace ngf {

enum class AxisRole : std::uint8_t {
  spatial_x,
  spatial_y,
  spatial_z,
  temporal,
  spectral,
  observer,
  anonymous,
};

const char* to_string(AxisRole role) noexcept;
AxisRole parse_axis_role(const std::string& token);

enum class Side : std::uint8_t { vertex, edge };
const char* to_string(Side side) noexcept;
Side parse_side(const std::string& token);

/// The set of values admissible under one key of a type schema.
struct ValueDictionary {
  ValueKind kind = ValueKind::scalar;
  std::optional<std::string> units;

  // scalar: closed range, optional quantization step (0 means continuous)
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();
  double quantum = 0.0;

  // enumeration
  std::set<std::string> tokens;

  // histogram
  std::size_t bins = 0;

  // tensor
  std::vector<std::size_t> shape;
  std::vector<AxisRole> axes;

  // composite
  std::map<std::string, ValueDictionary> fields;

  static ValueDictionary scalar(double min = -std::numeric_limits<double>::infinity(),
                                double max = std::numeric_limits<double>::infinity(), double quantum = 0.0);
  static ValueDictionary enumeration(std::set<std::string> tokens);
  static ValueDictionary string();
  static ValueDictionary histogram(std::size_t bins);
  /// Axes default to anonymous when `axes` is empty.
  static ValueDictionary tensor(std::vector<std::size_t> shape, std::vector<AxisRole> axes = {});
  static ValueDictionary composite(std::map<std::string, ValueDictionary> fields);
  static ValueDictionary vector_clock();

  bool operator==(const ValueDictionary&) const;

  /// Structural checks (shape entries >= 1, bins >= 1, axis count). Throws.
  void check_well_formed(const std::string& path) const;

  /// Throws Errc::schema_violation (or shape_mismatch) when `value` is not
  /// in this dictionary.
  void validate(const AttributeValue& value, const std::string& path) const;
};

struct TypeSchema {
  std::string type_name;
  std::map<std::string, ValueDictionary> keys;

  bool operator==(const TypeSchema&) const = default;

  /// Every key must be declared and every value must satisfy its dictionary.
  void validate(const Attributes& attributes) const;
  void validate(const std::string& key, const AttributeValue& value) const;
  const ValueDictionary* find(const std::string& key) const;
};

/// True when at least one registered metric admits the dictionary. A
/// composite qualifies when any of its leaves does.
bool admits_metric(const ValueDictionary& dict);

}  // namespace ngf
