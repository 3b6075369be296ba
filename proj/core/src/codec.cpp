#include "codec.hpp"

#include <cmath>
#include <limits>

#include "ngf/error.hpp"

namespace ngf::codec {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::format, what); }

std::vector<double> numbers(const json& j) {
  if (!j.is_array()) bad("expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number(x));
  return out;
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

std::vector<std::size_t> sizes(const json& j) {
  if (!j.is_array()) bad("expected an array of sizes");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) bad("expected a size");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

EntityId id_of(const json& j) {
  if (!j.is_string()) bad("expected an entity id string");
  return EntityId::parse(j.get<std::string>());
}

std::string text(const json& j) {
  if (!j.is_string()) bad("expected a string");
  return j.get<std::string>();
}

}  // namespace

const json& member(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing member '") + key + "'");
  return *it;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  bad("expected a number");
}

// ------------------------------------------------------------------ values

json encode(const AttributeValue& value, const TensorSink& sink) {
  json out = json::object();
  switch (value.kind()) {
    case ValueKind::scalar: out["scalar"] = number(value.as<double>()); break;
    case ValueKind::enumeration: out["enum"] = value.as<EnumToken>().token; break;
    case ValueKind::string: out["string"] = value.as<std::string>(); break;
    case ValueKind::histogram: {
      const auto& h = value.as<Histogram>();
      out["histogram"] = {{"counts", numbers(h.counts)}, {"normalized", h.normalized}};
      break;
    }
    case ValueKind::tensor: {
      const auto& t = value.as<Tensor>();
      json body = {{"shape", t.shape}};
      std::optional<std::size_t> index;
      if (sink) index = sink(t.data);
      if (index)
        body["payload"] = *index;
      else
        body["data"] = numbers(t.data);
      out["tensor"] = std::move(body);
      break;
    }
    case ValueKind::composite: {
      json fields = json::object();
      for (const auto& [k, v] : value.as<Composite>().fields) fields[k] = encode(v, sink);
      out["composite"] = std::move(fields);
      break;
    }
    case ValueKind::vector_clock: {
      json entries = json::object();
      for (const auto& [p, n] : value.as<VectorClock>().entries) entries[p] = n;
      out["vector_clock"] = std::move(entries);
      break;
    }
  }
  return out;
}

AttributeValue decode_value(const json& j, const TensorSource& source) {
  if (!j.is_object() || j.size() != 1) bad("attribute value must be an object with one kind tag");
  const auto first = j.begin();
  const std::string& tag = first.key();
  const json& body = first.value();
  if (tag == "scalar") return number(body);
  if (tag == "enum") return EnumToken{text(body)};
  if (tag == "string") return text(body);
  if (tag == "histogram") {
    Histogram h;
    h.counts = numbers(member(body, "counts"));
    if (auto it = body.find("normalized"); it != body.end()) h.normalized = it->get<bool>();
    return h;
  }
  if (tag == "tensor") {
    Tensor t;
    t.shape = sizes(member(body, "shape"));
    if (auto it = body.find("payload"); it != body.end()) {
      if (!source) bad("tensor refers to a payload but no binary section is available");
      t.data = source(it->get<std::size_t>());
    } else {
      t.data = numbers(member(body, "data"));
    }
    if (!t.consistent()) throw Error(Errc::shape_mismatch, "tensor payload length does not match its shape");
    return t;
  }
  if (tag == "composite") {
    Composite c;
    if (!body.is_object()) bad("composite body must be an object");
    for (const auto& [k, v] : body.items()) c.fields.emplace(k, decode_value(v, source));
    return c;
  }
  if (tag == "vector_clock") {
    VectorClock vc;
    if (!body.is_object()) bad("vector clock body must be an object");
    for (const auto& [p, n] : body.items()) {
      if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<std::int64_t>() >= 0))
        bad("vector clock entries must be nonnegative integers");
      vc.entries.emplace(p, n.get<std::uint64_t>());
    }
    return vc;
  }
  bad("unknown value tag '" + tag + "'");
}

json encode(const Attributes& attributes, const TensorSink& sink) {
  json out = json::object();
  for (const auto& [k, v] : attributes) out[k] = encode(v, sink);
  return out;
}

Attributes decode_attributes(const json& j, const TensorSource& source) {
  if (!j.is_object()) bad("attributes must be an object");
  Attributes out;
  for (const auto& [k, v] : j.items()) out.emplace(k, decode_value(v, source));
  return out;
}

// ----------------------------------------------------------------- schemas

json encode(const ValueDictionary& d) {
  json out = {{"kind", to_string(d.kind)},
              {"min", number(d.min)},
              {"max", number(d.max)},
              {"quantum", number(d.quantum)},
              {"tokens", d.tokens},
              {"bins", d.bins},
              {"shape", d.shape}};
  if (d.units) out["units"] = *d.units;
  json axes = json::array();
  for (auto a : d.axes) axes.push_back(to_string(a));
  out["axes"] = std::move(axes);
  json fields = json::object();
  for (const auto& [k, f] : d.fields) fields[k] = encode(f);
  out["fields"] = std::move(fields);
  return out;
}

ValueDictionary decode_dictionary(const json& j) {
  ValueDictionary d;
  d.kind = parse_value_kind(text(member(j, "kind")));
  if (auto it = j.find("units"); it != j.end()) d.units = text(*it);
  if (auto it = j.find("min"); it != j.end()) d.min = number(*it);
  if (auto it = j.find("max"); it != j.end()) d.max = number(*it);
  if (auto it = j.find("quantum"); it != j.end()) d.quantum = number(*it);
  if (auto it = j.find("tokens"); it != j.end())
    for (const auto& t : *it) d.tokens.insert(text(t));
  if (auto it = j.find("bins"); it != j.end()) d.bins = it->get<std::size_t>();
  if (auto it = j.find("shape"); it != j.end()) d.shape = sizes(*it);
  if (auto it = j.find("axes"); it != j.end())
    for (const auto& a : *it) d.axes.push_back(parse_axis_role(text(a)));
  else if (d.kind == ValueKind::tensor)
    d.axes.assign(d.shape.size(), AxisRole::anonymous);
  if (auto it = j.find("fields"); it != j.end())
    for (const auto& [k, f] : it->items()) d.fields.emplace(k, decode_dictionary(f));
  return d;
}

json encode(const TypeSchema& schema) {
  json keys = json::object();
  for (const auto& [k, d] : schema.keys) keys[k] = encode(d);
  return {{"type", schema.type_name}, {"keys", std::move(keys)}};
}

TypeSchema decode_schema(const json& j) {
  TypeSchema s;
  s.type_name = text(member(j, "type"));
  if (auto it = j.find("keys"); it != j.end())
    for (const auto& [k, d] : it->items()) s.keys.emplace(k, decode_dictionary(d));
  return s;
}

// -------------------------------------------------------------- registries

json encode(const MetricDescriptor& m) {
  json params = json::object();
  for (const auto& [k, v] : m.params) params[k] = number(v);
  return {{"metric", to_string(m.metric)}, {"field", m.field}, {"params", std::move(params)}};
}

MetricDescriptor decode_metric(const json& j) {
  MetricDescriptor m;
  m.metric = parse_metric_id(text(member(j, "metric")));
  m.field = text(member(j, "field"));
  if (auto it = j.find("params"); it != j.end())
    for (const auto& [k, v] : it->items()) m.params.emplace(k, number(v));
  return m;
}

json encode(const KernelDescriptor& k) {
  return {{"kind", to_string(k.kind)},
          {"sigma", numbers(k.sigma)},
          {"equality", to_string(k.equality)},
          {"observer",
           {{"id", k.observer.observer_id},
            {"fields", k.observer.field_mask},
            {"prerequisites", k.observer.prerequisites}}}};
}

KernelDescriptor decode_kernel(const json& j) {
  KernelDescriptor k;
  k.kind = parse_kernel_kind(text(member(j, "kind")));
  if (auto it = j.find("sigma"); it != j.end()) k.sigma = numbers(*it);
  if (auto it = j.find("equality"); it != j.end()) k.equality = parse_equality_type(text(*it));
  const auto& obs = member(j, "observer");
  k.observer.observer_id = text(member(obs, "id"));
  for (const auto& f : member(obs, "fields")) k.observer.field_mask.insert(text(f));
  if (auto it = obs.find("prerequisites"); it != obs.end()) k.observer.prerequisites = text(*it);
  return k;
}

json encode(const CalibrationResult& r) {
  json out = {{"threshold", number(r.threshold)}, {"alpha", number(r.alpha)},   {"beta", number(r.beta)},
              {"fnr_at_t", number(r.fnr_at_t)},   {"fpr_at_t", number(r.fpr_at_t)}, {"n_same", r.n_same},
              {"n_diff", r.n_diff}};
  if (r.metric) out["metric"] = to_string(*r.metric);
  if (r.field) out["field"] = *r.field;
  return out;
}

CalibrationResult decode_calibration(const json& j) {
  CalibrationResult r;
  r.threshold = number(member(j, "threshold"));
  r.alpha = number(member(j, "alpha"));
  r.beta = number(member(j, "beta"));
  r.fnr_at_t = number(member(j, "fnr_at_t"));
  r.fpr_at_t = number(member(j, "fpr_at_t"));
  r.n_same = member(j, "n_same").get<std::size_t>();
  r.n_diff = member(j, "n_diff").get<std::size_t>();
  if (auto it = j.find("metric"); it != j.end()) r.metric = parse_metric_id(text(*it));
  if (auto it = j.find("field"); it != j.end()) r.field = text(*it);
  return r;
}

// ---------------------------------------------------------------- entities

json encode(const DirectionAmplitudes& a) {
  return {{"forward", number(a.forward)}, {"backward", number(a.backward)}, {"bidirectional", number(a.bidirectional)}};
}

DirectionAmplitudes decode_amplitudes(const json& j) {
  return {number(member(j, "forward")), number(member(j, "backward")), number(member(j, "bidirectional"))};
}

json encode(const ProvenanceMap& provenance) {
  json out = json::object();
  for (const auto& [k, p] : provenance) out[k] = {{"map_id", p.map_id}, {"version", p.version}};
  return out;
}

ProvenanceMap decode_provenance(const json& j) {
  ProvenanceMap out;
  for (const auto& [k, p] : j.items()) out.emplace(k, EmbeddingProvenance{text(member(p, "map_id")), text(member(p, "version"))});
  return out;
}

json encode(const Vertex& v, const TensorSink& sink) {
  json out = {{"id", v.id.to_string()}, {"type", v.type}, {"attributes", encode(v.attributes, sink)}};
  if (!v.provenance.empty()) out["provenance"] = encode(v.provenance);
  return out;
}

Vertex decode_vertex(const json& j, const TensorSource& source) {
  Vertex v;
  v.id = id_of(member(j, "id"));
  v.type = text(member(j, "type"));
  if (auto it = j.find("attributes"); it != j.end()) v.attributes = decode_attributes(*it, source);
  if (auto it = j.find("provenance"); it != j.end()) v.provenance = decode_provenance(*it);
  return v;
}

json encode(const Edge& e, const TensorSink& sink) {
  json out = {{"id", e.id.to_string()},
              {"type", e.type},
              {"source", e.source.to_string()},
              {"target", e.target.to_string()},
              {"attributes", encode(e.attributes, sink)}};
  if (e.superposition) out["superposition"] = encode(e.superposition->direction);
  if (!e.provenance.empty()) out["provenance"] = encode(e.provenance);
  return out;
}

Edge decode_edge(const json& j, const TensorSource& source) {
  Edge e;
  e.id = id_of(member(j, "id"));
  e.type = text(member(j, "type"));
  e.source = id_of(member(j, "source"));
  e.target = id_of(member(j, "target"));
  if (auto it = j.find("attributes"); it != j.end()) e.attributes = decode_attributes(*it, source);
  if (auto it = j.find("superposition"); it != j.end()) e.superposition = SuperpositionDescriptor{decode_amplitudes(*it)};
  if (auto it = j.find("provenance"); it != j.end()) e.provenance = decode_provenance(*it);
  return e;
}

json encode(const VirtualNode& node) {
  json cs = json::array();
  for (const auto& c : node.constituents) cs.push_back({{"vertex", c.vertex.to_string()}, {"weight", number(c.weight)}});
  return {{"id", node.id.to_string()}, {"constituents", std::move(cs)}};
}

VirtualNode decode_virtual_node(const json& j) {
  VirtualNode node;
  node.id = id_of(member(j, "id"));
  for (const auto& c : member(j, "constituents"))
    node.constituents.push_back({id_of(member(c, "vertex")), number(member(c, "weight"))});
  return node;
}

// -------------------------------------------------------------- hypergrams

json encode(const Hypergram& hg) {
  json cells = json::array();
  for (const auto& [id, cell] : hg.cells) {
    json shards = json::array();
    for (const auto& s : cell.shard_states()) shards.push_back({{"sum", numbers(s.sum)}, {"pending", s.pending}});
    cells.push_back({{"id", id.to_string()},
                     {"shards", std::move(shards)},
                     {"reconciled", numbers(cell.reconciled_values())},
                     {"version", cell.version()},
                     {"encoding", cell.encoding()}});
  }
  const bool dense = hg.tessellation.kind == TopologyKind::Kind::dense;
  return {{"name", hg.name},
          {"tessellation", {{"kind", dense ? "dense" : "sparse"}, {"extents", hg.tessellation.extents}}},
          {"cell_kind", to_string(hg.cell_kind)},
          {"cell_shape", hg.cell_shape},
          {"shard_count", hg.shard_count},
          {"metric_dimensionality", hg.metric_dimensionality},
          {"notes", hg.notes},
          {"cells", std::move(cells)}};
}

Hypergram decode_hypergram(const json& j) {
  Hypergram hg;
  hg.name = text(member(j, "name"));
  const auto& tess = member(j, "tessellation");
  const auto kind = text(member(tess, "kind"));
  if (kind == "dense")
    hg.tessellation = TopologyKind{TopologyKind::Kind::dense, sizes(member(tess, "extents"))};
  else if (kind == "sparse")
    hg.tessellation = TopologyKind{TopologyKind::Kind::sparse, sizes(member(tess, "extents"))};
  else
    bad("unknown tessellation kind '" + kind + "'");
  hg.cell_kind = parse_cell_kind(text(member(j, "cell_kind")));
  hg.cell_shape = sizes(member(j, "cell_shape"));
  hg.shard_count = member(j, "shard_count").get<std::size_t>();
  hg.metric_dimensionality = member(j, "metric_dimensionality").get<std::uint64_t>();
  hg.notes = text(member(j, "notes"));
  for (const auto& c : member(j, "cells")) {
    std::vector<HypergramCell::ShardState> shards;
    for (const auto& s : member(c, "shards")) shards.push_back({numbers(member(s, "sum")), member(s, "pending").get<bool>()});
    if (shards.size() != hg.shard_count) bad("cell shard count differs from its hypergram");
    const EntityId id = id_of(member(c, "id"));
    hg.cells.emplace(id, HypergramCell::restore(id, hg.cell_kind, hg.cell_shape, std::move(shards),
                                                numbers(member(c, "reconciled")),
                                                member(c, "version").get<std::uint64_t>(),
                                                text(member(c, "encoding"))));
  }
  return hg;
}

}  // namespace ngf::codec
