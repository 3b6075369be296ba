#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ngf/calibration.hpp"
#include "ngf/equality.hpp"
#include "ngf/metrics.hpp"
#include "ngf/schema.hpp"
#include "ngf/store.hpp"
#include "ngf/superposition.hpp"

namespace ngf::codec {

using json = nlohmann::json;

/// Receives a tensor payload and returns its index in the binary section, or
/// nothing to have the payload inlined.
using TensorSink = std::function<std::optional<std::size_t>(const std::vector<double>&)>;
/// Resolves a payload index back to its values.
using TensorSource = std::function<std::vector<double>(std::size_t)>;

json number(double v);
double number(const json& j);

json encode(const AttributeValue& value, const TensorSink& sink = {});
AttributeValue decode_value(const json& j, const TensorSource& source = {});
json encode(const Attributes& attributes, const TensorSink& sink = {});
Attributes decode_attributes(const json& j, const TensorSource& source = {});

json encode(const ValueDictionary& dict);
ValueDictionary decode_dictionary(const json& j);
json encode(const TypeSchema& schema);
TypeSchema decode_schema(const json& j);

json encode(const MetricDescriptor& metric);
MetricDescriptor decode_metric(const json& j);
json encode(const KernelDescriptor& kernel);
KernelDescriptor decode_kernel(const json& j);
json encode(const CalibrationResult& result);
CalibrationResult decode_calibration(const json& j);

json encode(const DirectionAmplitudes& amplitudes);
DirectionAmplitudes decode_amplitudes(const json& j);
json encode(const ProvenanceMap& provenance);
ProvenanceMap decode_provenance(const json& j);

json encode(const Vertex& vertex, const TensorSink& sink = {});
Vertex decode_vertex(const json& j, const TensorSource& source = {});
json encode(const Edge& edge, const TensorSink& sink = {});
Edge decode_edge(const json& j, const TensorSource& source = {});
json encode(const VirtualNode& node);
VirtualNode decode_virtual_node(const json& j);

json encode(const Hypergram& hypergram);
Hypergram decode_hypergram(const json& j);

/// Reads a required member, reporting the path on failure.
const json& member(const json& j, const char* key);

}  // namespace ngf::codec
