#include "ngf/store.hpp"

#include <charconv>
#include <memory>
#include <random>

#include "ngf/edge_templates.hpp"
#include "ngf/error.hpp"

namespace ngf {

const AttributeValue* Vertex::find(const std::string& key) const {
  auto it = attributes.find(key);
  return it == attributes.end() ? nullptr : &it->second;
}

const AttributeValue* Edge::find(const std::string& key) const {
  auto it = attributes.find(key);
  return it == attributes.end() ? nullptr : &it->second;
}

DirectionAmplitudes Edge::direction() const {
  return superposition ? superposition->direction : DirectionAmplitudes::concrete();
}

namespace {

RandomSource default_rng() {
  auto engine = std::make_shared<std::mt19937_64>(std::random_device{}());
  return [engine] { return (*engine)(); };
}

void check_provenance(const ProvenanceMap& provenance, const Attributes& attributes) {
  for (const auto& [key, p] : provenance) {
    if (p.map_id.empty()) throw Error(Errc::invalid_argument, "provenance for '" + key + "' has an empty map_id");
    if (!attributes.contains(key))
      throw Error(Errc::invalid_argument, "provenance given for missing attribute '" + key + "'");
  }
}

}  // namespace

Store::Store() : Store(system_clock_ns, default_rng()) {}

Store::Store(ClockSource clock, RandomSource rng) : clock_(std::move(clock)), rng_(std::move(rng)) {}

// ---------------------------------------------------------------- schemas

void Store::register_schema(TypeSchema schema, Side side) {
  if (schema.type_name.empty()) throw Error(Errc::invalid_argument, "type name is empty");
  auto& table = side == Side::vertex ? vertex_schemas_ : edge_schemas_;
  if (table.contains(schema.type_name))
    throw Error(Errc::duplicate, std::string(to_string(side)) + " type '" + schema.type_name + "' already registered");
  for (const auto& [key, dict] : schema.keys) {
    if (key.empty()) throw Error(Errc::invalid_argument, schema.type_name + ": empty key");
    dict.check_well_formed(schema.type_name + "." + key);
    if (!admits_metric(dict))
      throw Error(Errc::no_admissible_metric,
                  schema.type_name + "." + key + ": no registered metric admits this dictionary");
  }
  table.emplace(schema.type_name, std::move(schema));
}

const TypeSchema* Store::find_schema(const std::string& type_name, Side side) const {
  const auto& table = side == Side::vertex ? vertex_schemas_ : edge_schemas_;
  auto it = table.find(type_name);
  return it == table.end() ? nullptr : &it->second;
}

const std::map<std::string, TypeSchema>& Store::schemas(Side side) const {
  return side == Side::vertex ? vertex_schemas_ : edge_schemas_;
}

const TypeSchema& Store::schema_for(const std::string& type, Side side) {
  if (const auto* s = find_schema(type, side)) return *s;
  auto builtin = side == Side::vertex ? builtin_vertex_schema(type) : builtin_edge_schema(type);
  if (!builtin) throw Error(Errc::unknown_type, std::string(to_string(side)) + " type '" + type + "' is not registered");
  register_schema(std::move(*builtin), side);
  return *find_schema(type, side);
}

// ------------------------------------------------------------- identifiers

bool Store::id_in_use(EntityId id) const {
  const EntityId as_vertex(EntityKind::vertex, id.timestamp_ns(), id.random());
  const EntityId as_edge(EntityKind::edge, id.timestamp_ns(), id.random());
  return vertices_.contains(as_vertex) || virtual_nodes_.contains(as_vertex) || edges_.contains(as_edge);
}

void Store::set_id_sources(ClockSource clock, RandomSource rng) {
  if (!clock || !rng) throw Error(Errc::invalid_argument, "id sources must be callable");
  clock_ = std::move(clock);
  rng_ = std::move(rng);
}

EntityId Store::new_id(EntityKind kind) {
  constexpr int kRedraws = 8;
  EntityId id;
  for (int attempt = 0; attempt < kRedraws; ++attempt) {
    id = draw_id(kind, clock_, rng_);
    if (!id_in_use(id)) return id;
  }
  // The sources keep colliding (e.g. a stuck clock and a constant rng);
  // probe the random payload upward from the last draw.
  std::uint64_t ts = id.timestamp_ns();
  std::uint64_t rnd = id.random();
  do {
    rnd = (rnd + 1) & EntityId::kRandomMask;
    if (rnd == 0) ++ts;
    id = EntityId(kind, ts, rnd);
  } while (id_in_use(id));
  return id;
}

// ------------------------------------------------------- vertices and edges

EntityId Store::add_vertex(const std::string& type, Attributes attributes, ProvenanceMap provenance) {
  schema_for(type, Side::vertex).validate(attributes);
  check_provenance(provenance, attributes);
  const EntityId id = new_id(EntityKind::vertex);
  vertices_.emplace(id, Vertex{id, type, std::move(attributes), std::move(provenance)});
  return id;
}

void Store::check_endpoint(EntityId id, const char* role) const {
  if (!is_endpoint(id))
    throw Error(Errc::dangling_endpoint, std::string(role) + " " + id.to_string() + " is not a vertex of this store");
}

EntityId Store::add_edge(const std::string& type, EntityId source, EntityId target, Attributes attributes,
                         std::optional<SuperpositionDescriptor> superposition, ProvenanceMap provenance) {
  check_endpoint(source, "source");
  check_endpoint(target, "target");
  schema_for(type, Side::edge).validate(attributes);
  check_provenance(provenance, attributes);
  if (superposition) superposition->direction.check();
  const EntityId id = new_id(EntityKind::edge);
  edges_.emplace(id, Edge{id, type, source, target, std::move(attributes), superposition, std::move(provenance)});
  incidence_[source].insert(id);
  incidence_[target].insert(id);
  return id;
}

void Store::insert_vertex(Vertex vertex) {
  if (!vertex.id.is_vertex()) throw Error(Errc::invalid_argument, "vertex id lacks the vertex prefix");
  if (id_in_use(vertex.id)) throw Error(Errc::duplicate, "id " + vertex.id.to_string() + " already in use");
  schema_for(vertex.type, Side::vertex).validate(vertex.attributes);
  check_provenance(vertex.provenance, vertex.attributes);
  const EntityId id = vertex.id;
  vertices_.emplace(id, std::move(vertex));
}

void Store::insert_edge(Edge edge) {
  if (!edge.id.is_edge()) throw Error(Errc::invalid_argument, "edge id lacks the edge prefix");
  if (id_in_use(edge.id)) throw Error(Errc::duplicate, "id " + edge.id.to_string() + " already in use");
  check_endpoint(edge.source, "source");
  check_endpoint(edge.target, "target");
  schema_for(edge.type, Side::edge).validate(edge.attributes);
  check_provenance(edge.provenance, edge.attributes);
  if (edge.superposition) edge.superposition->direction.check();
  const EntityId id = edge.id;
  incidence_[edge.source].insert(id);
  incidence_[edge.target].insert(id);
  edges_.emplace(id, std::move(edge));
}

const Vertex* Store::find_vertex(EntityId id) const {
  auto it = vertices_.find(id);
  return it == vertices_.end() ? nullptr : &it->second;
}

const Edge* Store::find_edge(EntityId id) const {
  auto it = edges_.find(id);
  return it == edges_.end() ? nullptr : &it->second;
}

const Vertex& Store::vertex(EntityId id) const {
  if (const auto* v = find_vertex(id)) return *v;
  throw Error(Errc::not_found, "no vertex " + id.to_string());
}

const Edge& Store::edge(EntityId id) const {
  if (const auto* e = find_edge(id)) return *e;
  throw Error(Errc::not_found, "no edge " + id.to_string());
}

Vertex& Store::mutable_vertex(EntityId id) {
  auto it = vertices_.find(id);
  if (it == vertices_.end()) throw Error(Errc::not_found, "no vertex " + id.to_string());
  return it->second;
}

Edge& Store::mutable_edge(EntityId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw Error(Errc::not_found, "no edge " + id.to_string());
  return it->second;
}

void Store::set_vertex_attribute(EntityId id, const std::string& key, AttributeValue value) {
  auto& v = mutable_vertex(id);
  schema_for(v.type, Side::vertex).validate(key, value);
  v.attributes[key] = std::move(value);
}

void Store::erase_vertex_attribute(EntityId id, const std::string& key) {
  auto& v = mutable_vertex(id);
  v.attributes.erase(key);
  v.provenance.erase(key);
}

void Store::set_edge_attribute(EntityId id, const std::string& key, AttributeValue value) {
  auto& e = mutable_edge(id);
  schema_for(e.type, Side::edge).validate(key, value);
  e.attributes[key] = std::move(value);
}

void Store::set_edge_superposition(EntityId id, std::optional<SuperpositionDescriptor> superposition) {
  auto& e = mutable_edge(id);
  if (superposition) superposition->direction.check();
  e.superposition = superposition;
}

void Store::delete_edge(EntityId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw Error(Errc::not_found, "no edge " + id.to_string());
  for (EntityId end : {it->second.source, it->second.target}) {
    auto inc = incidence_.find(end);
    if (inc == incidence_.end()) continue;
    inc->second.erase(id);
    if (inc->second.empty()) incidence_.erase(inc);
  }
  edges_.erase(it);
}

void Store::delete_vertex(EntityId id) {
  if (!vertices_.contains(id)) throw Error(Errc::not_found, "no vertex " + id.to_string());
  for (const auto& [vid, node] : virtual_nodes_)
    for (const auto& c : node.constituents)
      if (c.vertex == id)
        throw Error(Errc::precondition,
                    "vertex " + id.to_string() + " is a constituent of virtual node " + vid.to_string());
  for (EntityId e : incident_edges(id)) delete_edge(e);
  for (auto& [_, hg] : hypergrams_) hg.cells.erase(id);
  vertices_.erase(id);
}

std::vector<EntityId> Store::incident_edges(EntityId vertex) const {
  auto it = incidence_.find(vertex);
  if (it == incidence_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<EntityId> Store::out_edges(EntityId vertex) const {
  std::vector<EntityId> out;
  for (EntityId e : incident_edges(vertex))
    if (edges_.at(e).source == vertex) out.push_back(e);
  return out;
}

std::vector<EntityId> Store::vertices_of_type(const std::string& type) const {
  std::vector<EntityId> out;
  for (const auto& [id, v] : vertices_)
    if (v.type == type) out.push_back(id);
  return out;
}

// ------------------------------------------------------------ virtual nodes

EntityId Store::add_virtual_node(std::vector<Constituent> constituents) {
  VirtualNode node = make_virtual_node(std::move(constituents));
  node.id = new_id(EntityKind::vertex);
  const EntityId id = node.id;
  insert_virtual_node(std::move(node));
  return id;
}

void Store::insert_virtual_node(VirtualNode node) {
  if (!node.id.is_vertex()) throw Error(Errc::invalid_argument, "virtual node id lacks the vertex prefix");
  if (id_in_use(node.id)) throw Error(Errc::duplicate, "id " + node.id.to_string() + " already in use");
  node.check();
  for (const auto& c : node.constituents) {
    if (virtual_nodes_.contains(c.vertex))
      throw Error(Errc::invalid_argument, "virtual nodes cannot nest (" + c.vertex.to_string() + ")");
    if (!vertices_.contains(c.vertex))
      throw Error(Errc::dangling_endpoint, "constituent " + c.vertex.to_string() + " is not a vertex");
  }
  const EntityId id = node.id;
  virtual_nodes_.emplace(id, std::move(node));
}

const VirtualNode* Store::find_virtual_node(EntityId id) const {
  auto it = virtual_nodes_.find(id);
  return it == virtual_nodes_.end() ? nullptr : &it->second;
}

bool Store::is_endpoint(EntityId id) const { return vertices_.contains(id) || virtual_nodes_.contains(id); }

// --------------------------------------------------------------- registries

void Store::register_metric(const std::string& name, const std::string& type_name, MetricDescriptor metric) {
  const auto* schema = find_schema(type_name, Side::vertex);
  if (!schema) schema = find_schema(type_name, Side::edge);
  if (!schema) throw Error(Errc::unknown_type, "type '" + type_name + "' is not registered");
  const auto* dict = schema->find(metric.field);
  if (!dict) throw Error(Errc::schema_violation, type_name + " has no key '" + metric.field + "'");
  insert_metric(name, bind_metric(std::move(metric), *dict));
}

void Store::insert_metric(const std::string& name, MetricDescriptor metric) {
  if (name.empty()) throw Error(Errc::invalid_argument, "metric name is empty");
  metrics_[name] = std::move(metric);
}

const MetricDescriptor& Store::metric(const std::string& name) const {
  auto it = metrics_.find(name);
  if (it == metrics_.end()) throw Error(Errc::not_found, "no metric named '" + name + "'");
  return it->second;
}

void Store::register_kernel(const std::string& name, KernelDescriptor kernel) {
  if (name.empty()) throw Error(Errc::invalid_argument, "kernel name is empty");
  kernel.check();
  kernels_[name] = std::move(kernel);
}

const KernelDescriptor& Store::kernel(const std::string& name) const {
  auto it = kernels_.find(name);
  if (it == kernels_.end()) throw Error(Errc::not_found, "no kernel named '" + name + "'");
  return it->second;
}

void Store::store_calibration(const std::string& name, CalibrationResult result) {
  if (name.empty()) throw Error(Errc::invalid_argument, "calibration name is empty");
  calibrations_[name] = std::move(result);
}

const CalibrationResult& Store::calibration(const std::string& name) const {
  auto it = calibrations_.find(name);
  if (it == calibrations_.end()) throw Error(Errc::not_found, "no calibration named '" + name + "'");
  return it->second;
}

// ------------------------------------------------------------- hypergrams

Hypergram& Store::insert_hypergram(Hypergram hypergram) {
  if (hypergram.name.empty()) throw Error(Errc::invalid_argument, "hypergram name is empty");
  if (hypergrams_.contains(hypergram.name))
    throw Error(Errc::duplicate, "hypergram '" + hypergram.name + "' already exists");
  for (const auto& [id, _] : hypergram.cells)
    if (!vertices_.contains(id)) throw Error(Errc::dangling_endpoint, "cell " + id.to_string() + " is not a vertex");
  auto name = hypergram.name;
  return hypergrams_.emplace(name, std::move(hypergram)).first->second;
}

Hypergram& Store::hypergram(const std::string& name) {
  auto it = hypergrams_.find(name);
  if (it == hypergrams_.end()) throw Error(Errc::not_found, "no hypergram named '" + name + "'");
  return it->second;
}

const Hypergram& Store::hypergram(const std::string& name) const {
  if (const auto* h = find_hypergram(name)) return *h;
  throw Error(Errc::not_found, "no hypergram named '" + name + "'");
}

const Hypergram* Store::find_hypergram(const std::string& name) const {
  auto it = hypergrams_.find(name);
  return it == hypergrams_.end() ? nullptr : &it->second;
}

// ------------------------------------------------------------------ checks

void Store::check_schema_soundness() const {
  for (const auto& [id, v] : vertices_) {
    const auto* s = find_schema(v.type, Side::vertex);
    if (!s) throw Error(Errc::unknown_type, "vertex " + id.to_string() + " has unregistered type " + v.type);
    s->validate(v.attributes);
  }
  for (const auto& [id, e] : edges_) {
    const auto* s = find_schema(e.type, Side::edge);
    if (!s) throw Error(Errc::unknown_type, "edge " + id.to_string() + " has unregistered type " + e.type);
    s->validate(e.attributes);
  }
}

bool Store::same_content(const Store& o) const {
  return vertex_schemas_ == o.vertex_schemas_ && edge_schemas_ == o.edge_schemas_ && vertices_ == o.vertices_ &&
         edges_ == o.edges_ && virtual_nodes_ == o.virtual_nodes_ && metrics_ == o.metrics_ &&
         kernels_ == o.kernels_ && calibrations_ == o.calibrations_ && replication_ == o.replication_ &&
         hypergrams_ == o.hypergrams_;
}

// ------------------------------------------------------------------- query

namespace {

AttributeValue parse_literal(const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return AttributeValue(v);
  return AttributeValue(text);
}

const std::string* text_of(const AttributeValue& v) {
  if (v.holds<std::string>()) return &v.as<std::string>();
  if (v.holds<EnumToken>()) return &v.as<EnumToken>().token;
  return nullptr;
}

template <typename T>
bool compare(AttributePredicate::Op op, const T& a, const T& b) {
  switch (op) {
    case AttributePredicate::Op::eq: return a == b;
    case AttributePredicate::Op::ne: return a != b;
    case AttributePredicate::Op::lt: return a < b;
    case AttributePredicate::Op::le: return a <= b;
    case AttributePredicate::Op::gt: return a > b;
    case AttributePredicate::Op::ge: return a >= b;
    case AttributePredicate::Op::has: return true;
  }
  return false;
}

}  // namespace

AttributePredicate AttributePredicate::parse(const std::string& text) {
  static const std::pair<const char*, Op> ops[] = {{"<=", Op::le}, {">=", Op::ge}, {"!=", Op::ne},
                                                   {"=", Op::eq},  {"<", Op::lt},  {">", Op::gt}};
  std::size_t best = std::string::npos;
  std::size_t len = 0;
  Op op = Op::has;
  for (const auto& [tok, o] : ops) {
    auto pos = text.find(tok);
    if (pos != std::string::npos && (pos < best || (pos == best && std::string(tok).size() > len))) {
      best = pos;
      len = std::string(tok).size();
      op = o;
    }
  }
  AttributePredicate p;
  if (best == std::string::npos) {
    p.key = text;
  } else {
    p.key = text.substr(0, best);
    p.op = op;
    p.value = parse_literal(text.substr(best + len));
  }
  if (p.key.empty()) throw Error(Errc::invalid_argument, "predicate '" + text + "' has no key");
  return p;
}

bool AttributePredicate::matches(const Vertex& vertex) const {
  const auto* v = vertex.find(key);
  if (!v) return false;
  if (op == Op::has) return true;
  if (v->holds<double>() && value.holds<double>()) return compare(op, v->as<double>(), value.as<double>());
  const auto* lhs = text_of(*v);
  if (!lhs) return false;
  const std::string rhs = value.holds<std::string>() ? value.as<std::string>() : [&] {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value.as<double>());
    (void)ec;
    return std::string(buf, end);
  }();
  return compare(op, *lhs, rhs);
}

std::vector<EntityId> query_vertices(const Store& store, const std::string& type,
                                     const std::vector<AttributePredicate>& predicates) {
  std::vector<EntityId> out;
  for (const auto& [id, v] : store.vertices()) {
    if (!type.empty() && v.type != type) continue;
    bool ok = true;
    for (const auto& p : predicates)
      if (!p.matches(v)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(id);
  }
  return out;
}

}  // namespace ngf
