#include "ngf/schema.hpp"

#include <cmath>

#include "ngf/error.hpp"
#include "ngf/metrics.hpp"

namespace ngf {

const char* to_string(AxisRole role) noexcept {
  switch (role) {
    case AxisRole::spatial_x: return "spatial-x";
    case AxisRole::spatial_y: return "spatial-y";
    case AxisRole::spatial_z: return "spatial-z";
    case AxisRole::temporal: return "temporal";
    case AxisRole::spectral: return "spectral";
    case AxisRole::observer: return "observer";
    case AxisRole::anonymous: return "anonymous";
  }
  return "anonymous";
}

AxisRole parse_axis_role(const std::string& token) {
  static const std::map<std::string, AxisRole> roles = {
      {"spatial-x", AxisRole::spatial_x}, {"spatial-y", AxisRole::spatial_y},
      {"spatial-z", AxisRole::spatial_z}, {"temporal", AxisRole::temporal},
      {"spectral", AxisRole::spectral},   {"observer", AxisRole::observer},
      {"anonymous", AxisRole::anonymous},
  };
  auto it = roles.find(token);
  if (it == roles.end()) throw Error(Errc::invalid_argument, "unknown axis role '" + token + "'");
  return it->second;
}

const char* to_string(Side side) noexcept { return side == Side::vertex ? "vertex" : "edge"; }

Side parse_side(const std::string& token) {
  if (token == "vertex") return Side::vertex;
  if (token == "edge") return Side::edge;
  throw Error(Errc::invalid_argument, "side must be 'vertex' or 'edge', got '" + token + "'");
}

ValueDictionary ValueDictionary::scalar(double min, double max, double quantum) {
  ValueDictionary d;
  d.kind = ValueKind::scalar;
  d.min = min;
  d.max = max;
  d.quantum = quantum;
  return d;
}

ValueDictionary ValueDictionary::enumeration(std::set<std::string> tokens) {
  ValueDictionary d;
  d.kind = ValueKind::enumeration;
  d.tokens = std::move(tokens);
  return d;
}

ValueDictionary ValueDictionary::string() {
  ValueDictionary d;
  d.kind = ValueKind::string;
  return d;
}

ValueDictionary ValueDictionary::histogram(std::size_t bins) {
  ValueDictionary d;
  d.kind = ValueKind::histogram;
  d.bins = bins;
  return d;
}

ValueDictionary ValueDictionary::tensor(std::vector<std::size_t> shape, std::vector<AxisRole> axes) {
  ValueDictionary d;
  d.kind = ValueKind::tensor;
  if (axes.empty()) axes.assign(shape.size(), AxisRole::anonymous);
  d.shape = std::move(shape);
  d.axes = std::move(axes);
  return d;
}

ValueDictionary ValueDictionary::composite(std::map<std::string, ValueDictionary> fields) {
  ValueDictionary d;
  d.kind = ValueKind::composite;
  d.fields = std::move(fields);
  return d;
}

ValueDictionary ValueDictionary::vector_clock() {
  ValueDictionary d;
  d.kind = ValueKind::vector_clock;
  return d;
}

bool ValueDictionary::operator==(const ValueDictionary& o) const {
  return kind == o.kind && units == o.units && min == o.min && max == o.max && quantum == o.quantum &&
         tokens == o.tokens && bins == o.bins && shape == o.shape && axes == o.axes && fields == o.fields;
}

void ValueDictionary::check_well_formed(const std::string& path) const {
  auto bad = [&](const std::string& why) { throw Error(Errc::invalid_argument, path + ": " + why); };
  switch (kind) {
    case ValueKind::scalar:
      if (std::isnan(min) || std::isnan(max) || min > max) bad("scalar range is empty");
      if (!std::isfinite(quantum) || quantum < 0.0) bad("quantization step must be finite and >= 0");
      break;
    case ValueKind::enumeration:
      if (tokens.empty()) bad("enum dictionary needs at least one token");
      break;
    case ValueKind::histogram:
      if (bins < 1) bad("histogram bin count must be >= 1");
      break;
    case ValueKind::tensor:
      if (shape.empty()) bad("tensor shape must have at least one axis");
      for (auto s : shape)
        if (s < 1) bad("tensor shape entries must be >= 1");
      if (axes.size() != shape.size()) bad("axis role count must equal tensor rank");
      break;
    case ValueKind::composite:
      for (const auto& [k, sub] : fields) sub.check_well_formed(path + "." + k);
      break;
    case ValueKind::string:
    case ValueKind::vector_clock:
      break;
  }
}

namespace {

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace

void ValueDictionary::validate(const AttributeValue& value, const std::string& path) const {
  auto violation = [&](const std::string& why) { throw Error(Errc::schema_violation, path + ": " + why); };
  if (value.kind() != kind)
    violation(std::string("expected ") + ngf::to_string(kind) + ", got " + ngf::to_string(value.kind()));

  switch (kind) {
    case ValueKind::scalar: {
      const double v = value.as<double>();
      if (!std::isfinite(v)) violation("scalar must be finite");
      if (v < min || v > max) violation("scalar " + std::to_string(v) + " outside declared range");
      if (quantum > 0.0) {
        const double base = std::isfinite(min) ? min : 0.0;
        const double steps = (v - base) / quantum;
        if (std::abs(steps - std::round(steps)) > 1e-9) violation("scalar not on the quantization lattice");
      }
      break;
    }
    case ValueKind::enumeration:
      if (!tokens.contains(value.as<EnumToken>().token))
        violation("token '" + value.as<EnumToken>().token + "' not in dictionary");
      break;
    case ValueKind::string:
      break;
    case ValueKind::histogram: {
      const auto& h = value.as<Histogram>();
      if (h.counts.size() != bins)
        throw Error(Errc::shape_mismatch, path + ": histogram has " + std::to_string(h.counts.size()) +
                                              " bins, dictionary declares " + std::to_string(bins));
      for (double c : h.counts)
        if (!std::isfinite(c) || c < 0.0) violation("histogram counts must be finite and nonnegative");
      if (h.normalized && std::abs(h.mass() - 1.0) > 1e-9) violation("normalized histogram does not sum to 1");
      break;
    }
    case ValueKind::tensor: {
      const auto& t = value.as<Tensor>();
      if (t.shape != shape)
        throw Error(Errc::shape_mismatch,
                    path + ": tensor shape " + shape_string(t.shape) + " != declared " + shape_string(shape));
      if (!t.consistent()) throw Error(Errc::shape_mismatch, path + ": tensor payload length != shape product");
      for (double x : t.data)
        if (!std::isfinite(x)) violation("tensor entries must be finite");
      break;
    }
    case ValueKind::composite:
      for (const auto& [k, sub] : value.as<Composite>().fields) {
        auto it = fields.find(k);
        if (it == fields.end()) violation("undeclared composite field '" + k + "'");
        it->second.validate(sub, path + "." + k);
      }
      break;
    case ValueKind::vector_clock:
      for (const auto& [process, _] : value.as<VectorClock>().entries)
        if (process.empty()) violation("vector clock process token is empty");
      break;
  }
}

const ValueDictionary* TypeSchema::find(const std::string& key) const {
  auto it = keys.find(key);
  return it == keys.end() ? nullptr : &it->second;
}

void TypeSchema::validate(const std::string& key, const AttributeValue& value) const {
  const auto* dict = find(key);
  if (!dict) throw Error(Errc::schema_violation, type_name + ": undeclared key '" + key + "'");
  dict->validate(value, type_name + "." + key);
}

void TypeSchema::validate(const Attributes& attributes) const {
  for (const auto& [k, v] : attributes) validate(k, v);
}

bool admits_metric(const ValueDictionary& dict) {
  if (dict.kind == ValueKind::composite) {
    for (const auto& [_, sub] : dict.fields)
      if (admits_metric(sub)) return true;
    return false;
  }
  for (auto m : {MetricId::bhattacharyya, MetricId::euclidean, MetricId::cosine_distance, MetricId::levenshtein,
                 MetricId::dtw})
    if (admissible(m, dict)) return true;
  return false;
}

}  // namespace ngf
