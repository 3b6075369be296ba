#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ngf {

enum class ValueKind : std::uint8_t {
  scalar,
  enumeration,
  string,
  histogram,
  tensor,
  composite,
  vector_clock,
};

const char* to_string(ValueKind kind) noexcept;
ValueKind parse_value_kind(const std::string& token);

struct EnumToken {
  std::string token;
  bool operator==(const EnumToken&) const = default;
};

/// Nonnegative bin counts. When `normalized` is set the counts are a
/// probability distribution and must sum to one.
struct Histogram {
  std::vector<double> counts;
  bool normalized = false;

  double mass() const;
  /// Copy scaled to unit mass; throws on zero mass.
  Histogram normalized_copy() const;
  bool operator==(const Histogram&) const = default;
};

/// Dense row-major tensor of doubles.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<std::size_t> s, std::vector<double> d) : shape(std::move(s)), data(std::move(d)) {}
  static Tensor vector(std::vector<double> values);
  static Tensor zeros(std::vector<std::size_t> shape);

  std::size_t element_count() const;
  bool consistent() const { return element_count() == data.size(); }
  bool operator==(const Tensor&) const = default;
};

std::size_t shape_product(const std::vector<std::size_t>& shape);

struct VectorClock {
  std::map<std::string, std::uint64_t> entries;

  std::uint64_t at(const std::string& process) const;
  /// Componentwise order over the union of processes; missing entries are 0.
  /// Returns unordered for concurrent clocks.
  std::partial_ordering compare(const VectorClock& other) const;
  bool happens_before(const VectorClock& other) const { return compare(other) == std::partial_ordering::less; }
  bool operator==(const VectorClock&) const = default;
};

class AttributeValue;

struct Composite {
  std::map<std::string, AttributeValue> fields;
  bool operator==(const Composite&) const;
};

/// Tagged union over every value kind an attribute can hold.
class AttributeValue {
 public:
  using Storage = std::variant<double, EnumToken, std::string, Histogram, Tensor, Composite, VectorClock>;

  AttributeValue() : value_(0.0) {}
  AttributeValue(double v) : value_(v) {}
  AttributeValue(EnumToken v) : value_(std::move(v)) {}
  AttributeValue(std::string v) : value_(std::move(v)) {}
  AttributeValue(const char* v) : value_(std::string(v)) {}
  AttributeValue(Histogram v) : value_(std::move(v)) {}
  AttributeValue(Tensor v) : value_(std::move(v)) {}
  AttributeValue(Composite v) : value_(std::move(v)) {}
  AttributeValue(VectorClock v) : value_(std::move(v)) {}

  ValueKind kind() const noexcept { return static_cast<ValueKind>(value_.index()); }

  template <typename T>
  bool holds() const noexcept { return std::holds_alternative<T>(value_); }
  template <typename T>
  const T& as() const;
  template <typename T>
  T& as();

  const Storage& storage() const noexcept { return value_; }

  bool operator==(const AttributeValue& o) const { return value_ == o.value_; }

 private:
  Storage value_;
};

using Attributes = std::map<std::string, AttributeValue>;

[[noreturn]] void throw_kind_mismatch(ValueKind expected, ValueKind actual);

template <typename T>
const T& AttributeValue::as() const {
  if (auto* p = std::get_if<T>(&value_)) return *p;
  throw_kind_mismatch(static_cast<ValueKind>(Storage(T{}).index()), kind());
}

template <typename T>
T& AttributeValue::as() {
  if (auto* p = std::get_if<T>(&value_)) return *p;
  throw_kind_mismatch(static_cast<ValueKind>(Storage(T{}).index()), kind());
}

}  // namespace ngf
