#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ngf/calibration.hpp"
#include "ngf/flow.hpp"
#include "ngf/store.hpp"

namespace ngf {

inline constexpr std::uint32_t kFormatVersion = 1;
/// Tensors with at least this many elements leave JSON-lines for the sidecar.
inline constexpr std::size_t kInlineTensorLimit = 1024;

/// Castagnoli CRC-32 (reflected, init and xorout 0xFFFFFFFF).
std::uint32_t crc32c(std::span<const std::uint8_t> bytes);

/// The .ngf container:
///
///   "NGFSTORE" | u32 version | u64 n | manifest (n bytes of canonical JSON) |
///   u32 crc | u64 payloads | { u64 count | count x f64 | u32 crc }*
///
/// All integers and floats are little-endian. Entities appear in id order, so
/// equal stores serialize to equal bytes.
std::string serialize(const Store& store);
Store deserialize(std::string_view bytes);

void save(const Store& store, const std::filesystem::path& path);
Store load(const std::filesystem::path& path);

/// One JSON object per line: schemas first, then vertices, virtual nodes and
/// edges. Large tensors go to `<path>.bin`.
void export_jsonl(const Store& store, const std::filesystem::path& path);

/// Applies every line of a JSON-lines file. Vertex lines without an "id" get
/// a fresh one. Either every line is applied or none is.
std::size_t import_jsonl(Store& store, const std::filesystem::path& path);

/// CSV with header `distance,label`, label in {same, diff}.
std::vector<CalibrationPair> read_calibration_csv(std::istream& in);
std::string calibration_to_json(const CalibrationResult& result);
CalibrationResult calibration_from_json(std::string_view text);

TypeSchema schema_from_json(std::string_view text);
std::string schema_to_json(const TypeSchema& schema);
Attributes attributes_from_json(std::string_view text);
/// A single tagged value such as {"scalar": 1.5} or {"histogram": {"counts": [1, 0]}}.
AttributeValue value_from_json(std::string_view text);
std::string value_to_json(const AttributeValue& value);
std::string vertex_to_json(const Vertex& vertex);
std::string edge_to_json(const Edge& edge);
KernelDescriptor kernel_from_json(std::string_view text);

struct FlowScenario {
  FlowNetwork network;
  FlowAssignment assignment;
  std::set<std::string> sources;
  std::set<std::string> sinks;
};

/// {"cargo": {"id", "unit"}, "edges": [{"edge_id", "source", "target", "flux",
/// "capacity"}], "sources": [...], "sinks": [...]}. Edges without endpoints
/// are looked up in `store` by id.
FlowScenario flow_scenario_from_json(std::string_view text, const Store* store = nullptr);
std::string kirchhoff_report_to_json(const KirchhoffReport& report);
std::string max_flow_to_json(const MaxFlowResult& result);

}  // namespace ngf
