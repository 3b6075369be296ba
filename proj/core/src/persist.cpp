#include "ngf/persist.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <boost/crc.hpp>

#include "codec.hpp"
#include "ngf/error.hpp"

namespace ngf {

using codec::json;

std::uint32_t crc32c(std::span<const std::uint8_t> bytes) {
  boost::crc_optimal<32, 0x1EDC6F41, 0xFFFFFFFF, 0xFFFFFFFF, true, true> crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

namespace {

constexpr std::string_view kStoreMagic = "NGFSTORE";
constexpr std::string_view kBlobMagic = "NGFBLOBS";

class Writer {
 public:
  void raw(std::string_view bytes) { out_.append(bytes); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  std::size_t size() const { return out_.size(); }
  std::uint32_t crc_since(std::size_t offset) const {
    return crc32c({reinterpret_cast<const std::uint8_t*>(out_.data()) + offset, out_.size() - offset});
  }
  std::string take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : in_(bytes) {}

  std::string_view raw(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ == in_.size(); }
  std::uint32_t crc_of(std::size_t from, std::size_t to) const {
    return crc32c({reinterpret_cast<const std::uint8_t*>(in_.data()) + from, to - from});
  }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(Errc::format, "file is truncated");
  }
  std::uint64_t get(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{static_cast<unsigned char>(in_[pos_ + i])} << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

void write_payloads(Writer& w, const std::vector<std::vector<double>>& payloads) {
  w.u64(payloads.size());
  for (const auto& p : payloads) {
    w.u64(p.size());
    const std::size_t start = w.size();
    for (double x : p) w.f64(x);
    w.u32(w.crc_since(start));
  }
}

// Decodes the doubles of every payload once its checksum has been verified.
std::vector<std::vector<double>> decode_payloads(std::string_view bytes, std::size_t& offset) {
  Reader r(bytes.substr(offset));
  const std::uint64_t count = r.u64();
  std::vector<std::vector<double>> payloads;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t n = r.u64();
    if (n > (std::uint64_t{1} << 40) || (bytes.size() - offset - r.pos()) / 8 < n)
      throw Error(Errc::format, "file is truncated");
    const std::size_t start = r.pos();
    std::vector<double> values(static_cast<std::size_t>(n));
    for (auto& x : values) x = r.f64();
    const std::size_t end = r.pos();
    if (r.crc_of(start, end) != r.u32())
      throw Error(Errc::checksum, "checksum mismatch in tensor payload " + std::to_string(i));
    payloads.push_back(std::move(values));
  }
  offset += r.pos();
  return payloads;
}

json build_manifest(const Store& store, std::vector<std::vector<double>>& payloads, std::size_t inline_limit) {
  codec::TensorSink sink = [&](const std::vector<double>& data) -> std::optional<std::size_t> {
    if (data.size() < inline_limit) return std::nullopt;
    payloads.push_back(data);
    return payloads.size() - 1;
  };

  json schemas = {{"vertex", json::array()}, {"edge", json::array()}};
  for (const auto& [_, s] : store.schemas(Side::vertex)) schemas["vertex"].push_back(codec::encode(s));
  for (const auto& [_, s] : store.schemas(Side::edge)) schemas["edge"].push_back(codec::encode(s));

  json metrics = json::object(), kernels = json::object(), calibrations = json::object();
  for (const auto& [name, m] : store.metric_registry()) metrics[name] = codec::encode(m);
  for (const auto& [name, k] : store.kernel_registry()) kernels[name] = codec::encode(k);
  for (const auto& [name, c] : store.calibrations()) calibrations[name] = codec::encode(c);

  json vertices = json::array(), edges = json::array(), virtual_nodes = json::array(), hypergrams = json::array();
  for (const auto& [_, v] : store.vertices()) vertices.push_back(codec::encode(v, sink));
  for (const auto& [_, vn] : store.virtual_nodes()) virtual_nodes.push_back(codec::encode(vn));
  for (const auto& [_, e] : store.edges()) edges.push_back(codec::encode(e, sink));
  for (const auto& [_, hg] : store.hypergrams()) hypergrams.push_back(codec::encode(hg));

  return {{"format_version", kFormatVersion},
          {"schemas", std::move(schemas)},
          {"metrics", std::move(metrics)},
          {"kernels", std::move(kernels)},
          {"calibrations", std::move(calibrations)},
          {"replication_meta",
           {{"replica_count", store.replication().replica_count},
            {"durability_note", store.replication().durability_note}}},
          {"counts",
           {{"vertices", store.vertices().size()},
            {"edges", store.edges().size()},
            {"virtual_nodes", store.virtual_nodes().size()},
            {"hypergrams", store.hypergrams().size()},
            {"payloads", payloads.size()}}},
          {"vertices", std::move(vertices)},
          {"virtual_nodes", std::move(virtual_nodes)},
          {"edges", std::move(edges)},
          {"hypergrams", std::move(hypergrams)}};
}

void apply_manifest(Store& store, const json& m, const codec::TensorSource& source) {
  const auto& schemas = codec::member(m, "schemas");
  for (const auto& s : codec::member(schemas, "vertex")) store.register_schema(codec::decode_schema(s), Side::vertex);
  for (const auto& s : codec::member(schemas, "edge")) store.register_schema(codec::decode_schema(s), Side::edge);
  for (const auto& v : codec::member(m, "vertices")) store.insert_vertex(codec::decode_vertex(v, source));
  for (const auto& vn : codec::member(m, "virtual_nodes")) store.insert_virtual_node(codec::decode_virtual_node(vn));
  for (const auto& e : codec::member(m, "edges")) store.insert_edge(codec::decode_edge(e, source));
  for (const auto& [name, x] : codec::member(m, "metrics").items()) store.insert_metric(name, codec::decode_metric(x));
  for (const auto& [name, x] : codec::member(m, "kernels").items()) store.register_kernel(name, codec::decode_kernel(x));
  for (const auto& [name, x] : codec::member(m, "calibrations").items())
    store.store_calibration(name, codec::decode_calibration(x));
  const auto& rep = codec::member(m, "replication_meta");
  store.replication().replica_count = codec::member(rep, "replica_count").get<std::uint64_t>();
  store.replication().durability_note = codec::member(rep, "durability_note").get<std::string>();
  for (const auto& hg : codec::member(m, "hypergrams")) store.insert_hypergram(codec::decode_hypergram(hg));
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::format, what + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::io, "cannot read " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io, "cannot replace " + path.string() + ": " + ec.message());
}

codec::TensorSource source_for(const std::vector<std::vector<double>>& payloads) {
  return [&payloads](std::size_t index) {
    if (index >= payloads.size()) throw Error(Errc::format, "tensor refers to missing payload " + std::to_string(index));
    return payloads[index];
  };
}

}  // namespace

std::string serialize(const Store& store) {
  std::vector<std::vector<double>> payloads;
  const json manifest = build_manifest(store, payloads, 0);
  const std::string text = manifest.dump();

  Writer w;
  w.raw(kStoreMagic);
  w.u32(kFormatVersion);
  w.u64(text.size());
  const std::size_t start = w.size();
  w.raw(text);
  w.u32(w.crc_since(start));
  write_payloads(w, payloads);
  return w.take();
}

Store deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (r.raw(kStoreMagic.size()) != kStoreMagic) throw Error(Errc::format, "not an ngf store (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw Error(Errc::version, "unsupported format version " + std::to_string(version) + " (expected " +
                                   std::to_string(kFormatVersion) + ")");
  const std::uint64_t length = r.u64();
  if (length > bytes.size()) throw Error(Errc::format, "file is truncated");
  const std::size_t start = r.pos();
  const std::string_view text = r.raw(static_cast<std::size_t>(length));
  const std::size_t end = r.pos();
  if (r.crc_of(start, end) != r.u32()) throw Error(Errc::checksum, "checksum mismatch in manifest");

  std::size_t offset = r.pos();
  const auto payloads = decode_payloads(bytes, offset);
  if (offset != bytes.size()) throw Error(Errc::format, "trailing bytes after the payload section");

  const json manifest = parse_json(text, "manifest");
  if (codec::member(manifest, "format_version").get<std::uint32_t>() != kFormatVersion)
    throw Error(Errc::version, "manifest format_version mismatch");
  const auto& counts = codec::member(manifest, "counts");
  auto expect = [&](const char* key, std::size_t actual) {
    if (codec::member(counts, key).get<std::size_t>() != actual)
      throw Error(Errc::format, std::string("manifest count for ") + key + " does not match its section");
  };
  expect("vertices", codec::member(manifest, "vertices").size());
  expect("edges", codec::member(manifest, "edges").size());
  expect("virtual_nodes", codec::member(manifest, "virtual_nodes").size());
  expect("hypergrams", codec::member(manifest, "hypergrams").size());
  expect("payloads", payloads.size());

  Store store;
  try {
    apply_manifest(store, manifest, source_for(payloads));
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("malformed manifest: ") + e.what());
  }
  return store;
}

void save(const Store& store, const std::filesystem::path& path) { write_file(path, serialize(store)); }

Store load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

// ------------------------------------------------------------- JSON-lines

void export_jsonl(const Store& store, const std::filesystem::path& path) {
  std::vector<std::vector<double>> payloads;
  const json m = build_manifest(store, payloads, kInlineTensorLimit);

  std::string out;
  auto line = [&](json j) {
    out += j.dump();
    out += '\n';
  };
  for (const char* side : {"vertex", "edge"})
    for (const auto& s : m["schemas"][side]) line({{"entity", "schema"}, {"side", side}, {"schema", s}});
  for (const auto& v : m["vertices"]) line({{"entity", "vertex"}, {"vertex", v}});
  for (const auto& vn : m["virtual_nodes"]) line({{"entity", "virtual_node"}, {"virtual_node", vn}});
  for (const auto& e : m["edges"]) line({{"entity", "edge"}, {"edge", e}});

  const auto sidecar = std::filesystem::path(path.string() + ".bin");
  if (!payloads.empty()) {
    Writer w;
    w.raw(kBlobMagic);
    w.u32(kFormatVersion);
    write_payloads(w, payloads);
    write_file(sidecar, w.take());
  }
  write_file(path, out);
}

std::size_t import_jsonl(Store& store, const std::filesystem::path& path) {
  const std::string text = read_file(path);

  std::vector<std::vector<double>> payloads;
  const auto sidecar = std::filesystem::path(path.string() + ".bin");
  bool sidecar_loaded = false;
  auto load_sidecar = [&] {
    if (sidecar_loaded) return;
    sidecar_loaded = true;
    const std::string bytes = read_file(sidecar);
    Reader r(bytes);
    if (r.raw(kBlobMagic.size()) != kBlobMagic) throw Error(Errc::format, "sidecar has a bad magic");
    if (r.u32() != kFormatVersion) throw Error(Errc::version, "sidecar has an unsupported version");
    std::size_t offset = r.pos();
    payloads = decode_payloads(bytes, offset);
    if (offset != bytes.size()) throw Error(Errc::format, "trailing bytes in sidecar");
  };
  codec::TensorSource source = [&](std::size_t index) {
    load_sidecar();
    return source_for(payloads)(index);
  };

  Store staged = store;
  std::size_t applied = 0;
  std::istringstream lines(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(lines, raw)) {
    ++number;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(number);
    const json j = parse_json(raw, where);
    try {
      const std::string kind = codec::member(j, "entity").get<std::string>();
      if (kind == "schema") {
        const Side side = parse_side(codec::member(j, "side").get<std::string>());
        auto schema = codec::decode_schema(codec::member(j, "schema"));
        // Re-importing an identical schema is a no-op.
        const auto* existing = staged.find_schema(schema.type_name, side);
        if (!existing || !(*existing == schema)) staged.register_schema(std::move(schema), side);
      } else if (kind == "vertex") {
        const auto& body = codec::member(j, "vertex");
        if (body.contains("id")) {
          staged.insert_vertex(codec::decode_vertex(body, source));
        } else {
          Attributes attrs;
          if (body.contains("attributes")) attrs = codec::decode_attributes(body["attributes"], source);
          ProvenanceMap prov;
          if (body.contains("provenance")) prov = codec::decode_provenance(body["provenance"]);
          staged.add_vertex(codec::member(body, "type").get<std::string>(), std::move(attrs), std::move(prov));
        }
      } else if (kind == "virtual_node") {
        staged.insert_virtual_node(codec::decode_virtual_node(codec::member(j, "virtual_node")));
      } else if (kind == "edge") {
        staged.insert_edge(codec::decode_edge(codec::member(j, "edge"), source));
      } else {
        throw Error(Errc::format, "unknown entity kind '" + kind + "'");
      }
    } catch (const Error& e) {
      throw Error(e.code(), where + ": " + e.what());
    } catch (const json::exception& e) {
      throw Error(Errc::format, where + ": " + e.what());
    }
    ++applied;
  }
  store = std::move(staged);
  return applied;
}

// ------------------------------------------------------------ calibration

std::vector<CalibrationPair> read_calibration_csv(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  if (!std::getline(in, line)) throw Error(Errc::format, "calibration CSV is empty");
  ++number;
  if (trim(line) != "distance,label") throw Error(Errc::format, "calibration CSV must start with 'distance,label'");

  std::vector<CalibrationPair> pairs;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(Errc::format, "line " + std::to_string(number) + ": expected two columns");
    const std::string d = trim(line.substr(0, comma));
    const std::string label = trim(line.substr(comma + 1));
    CalibrationPair p;
    auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), p.distance);
    if (ec != std::errc() || ptr != d.data() + d.size())
      throw Error(Errc::format, "line " + std::to_string(number) + ": bad distance '" + d + "'");
    if (label == "same")
      p.same = true;
    else if (label != "diff")
      throw Error(Errc::format, "line " + std::to_string(number) + ": label must be same or diff");
    pairs.push_back(p);
  }
  return pairs;
}

std::string calibration_to_json(const CalibrationResult& result) { return codec::encode(result).dump(2); }

CalibrationResult calibration_from_json(std::string_view text) {
  try {
    return codec::decode_calibration(parse_json(text, "calibration"));
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("calibration: ") + e.what());
  }
}

// ------------------------------------------------------------------ misc

TypeSchema schema_from_json(std::string_view text) {
  try {
    return codec::decode_schema(parse_json(text, "schema"));
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("schema: ") + e.what());
  }
}

std::string schema_to_json(const TypeSchema& schema) { return codec::encode(schema).dump(); }

Attributes attributes_from_json(std::string_view text) {
  try {
    return codec::decode_attributes(parse_json(text, "attributes"));
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("attributes: ") + e.what());
  }
}

AttributeValue value_from_json(std::string_view text) {
  try {
    return codec::decode_value(parse_json(text, "value"), {});
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("value: ") + e.what());
  }
}

std::string value_to_json(const AttributeValue& value) { return codec::encode(value, {}).dump(); }

std::string vertex_to_json(const Vertex& vertex) { return codec::encode(vertex).dump(); }
std::string edge_to_json(const Edge& edge) { return codec::encode(edge).dump(); }

KernelDescriptor kernel_from_json(std::string_view text) {
  try {
    return codec::decode_kernel(parse_json(text, "kernel"));
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("kernel: ") + e.what());
  }
}

FlowScenario flow_scenario_from_json(std::string_view text, const Store* store) {
  const json j = parse_json(text, "flow scenario");
  FlowScenario s;
  try {
    if (auto it = j.find("cargo"); it != j.end()) {
      s.assignment.cargo.cargo_id = it->value("id", "");
      s.assignment.cargo.unit = it->value("unit", "");
    }
    if (auto it = j.find("nodes"); it != j.end())
      for (const auto& n : *it) s.network.add_node(n.get<std::string>());
    for (const auto& e : codec::member(j, "edges")) {
      Arc arc;
      arc.id = codec::member(e, "edge_id").get<std::string>();
      if (e.contains("source") || e.contains("target")) {
        arc.source = codec::member(e, "source").get<std::string>();
        arc.target = codec::member(e, "target").get<std::string>();
      } else {
        if (!store) throw Error(Errc::invalid_argument, "edge '" + arc.id + "' has no endpoints and no store was given");
        const auto& edge = store->edge(EntityId::parse(arc.id));
        arc.source = edge.source.to_string();
        arc.target = edge.target.to_string();
      }
      if (auto f = e.find("flux"); f != e.end()) s.assignment.flux[arc.id] = codec::number(*f);
      if (auto c = e.find("capacity"); c != e.end()) s.assignment.capacities[arc.id] = codec::number(*c);
      s.network.add_arc(std::move(arc));
    }
    if (auto it = j.find("sources"); it != j.end())
      for (const auto& n : *it) s.sources.insert(n.get<std::string>());
    if (auto it = j.find("sinks"); it != j.end())
      for (const auto& n : *it) s.sinks.insert(n.get<std::string>());
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("flow scenario: ") + e.what());
  }
  return s;
}

std::string kirchhoff_report_to_json(const KirchhoffReport& report) {
  json cv = json::array(), cap = json::array();
  for (const auto& v : report.conservation_violations) cv.push_back({{"node", v.node}, {"residual", codec::number(v.residual)}});
  for (const auto& v : report.capacity_violations)
    cap.push_back({{"arc", v.arc}, {"flux", codec::number(v.flux)}, {"capacity", codec::number(v.capacity)}});
  return json{{"pass", report.pass}, {"conservation_violations", cv}, {"capacity_violations", cap}}.dump(2);
}

std::string max_flow_to_json(const MaxFlowResult& result) {
  json flux = json::object();
  for (const auto& [arc, f] : result.witness.flux) flux[arc] = codec::number(f);
  return json{{"value", codec::number(result.value)},
              {"cargo", {{"id", result.witness.cargo.cargo_id}, {"unit", result.witness.cargo.unit}}},
              {"flux", flux}}
      .dump(2);
}

}  // namespace ngf
