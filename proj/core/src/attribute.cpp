#include "ngf/attribute.hpp"

#include <numeric>
#include <set>

#include "ngf/error.hpp"

namespace ngf {

const char* to_string(ValueKind kind) noexcept {
  switch (kind) {
    case ValueKind::scalar: return "scalar";
    case ValueKind::enumeration: return "enum";
    case ValueKind::string: return "string";
    case ValueKind::histogram: return "histogram";
    case ValueKind::tensor: return "tensor";
    case ValueKind::composite: return "composite";
    case ValueKind::vector_clock: return "vector_clock";
  }
  return "unknown";
}

ValueKind parse_value_kind(const std::string& token) {
  static const std::map<std::string, ValueKind> kinds = {
      {"scalar", ValueKind::scalar},       {"enum", ValueKind::enumeration},
      {"string", ValueKind::string},       {"histogram", ValueKind::histogram},
      {"tensor", ValueKind::tensor},       {"composite", ValueKind::composite},
      {"vector_clock", ValueKind::vector_clock},
  };
  auto it = kinds.find(token);
  if (it == kinds.end()) throw Error(Errc::invalid_argument, "unknown value kind '" + token + "'");
  return it->second;
}

void throw_kind_mismatch(ValueKind expected, ValueKind actual) {
  throw Error(Errc::kind_mismatch,
              std::string("expected ") + to_string(expected) + " value, got " + to_string(actual));
}

double Histogram::mass() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

Histogram Histogram::normalized_copy() const {
  const double total = mass();
  if (!(total > 0.0)) throw Error(Errc::invalid_argument, "histogram has zero mass");
  Histogram out{counts, true};
  for (double& c : out.counts) c /= total;
  return out;
}

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

Tensor Tensor::vector(std::vector<double> values) {
  std::vector<std::size_t> shape{values.size()};
  return Tensor(std::move(shape), std::move(values));
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  const auto n = shape_product(shape);
  return Tensor(std::move(shape), std::vector<double>(n, 0.0));
}

std::size_t Tensor::element_count() const { return shape_product(shape); }

std::uint64_t VectorClock::at(const std::string& process) const {
  auto it = entries.find(process);
  return it == entries.end() ? 0 : it->second;
}

std::partial_ordering VectorClock::compare(const VectorClock& other) const {
  std::set<std::string> processes;
  for (const auto& [p, _] : entries) processes.insert(p);
  for (const auto& [p, _] : other.entries) processes.insert(p);

  bool less = false;
  bool greater = false;
  for (const auto& p : processes) {
    const auto a = at(p);
    const auto b = other.at(p);
    if (a < b) less = true;
    if (a > b) greater = true;
  }
  if (less && greater) return std::partial_ordering::unordered;
  if (less) return std::partial_ordering::less;
  if (greater) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool Composite::operator==(const Composite& o) const { return fields == o.fields; }

}  // namespace ngf
