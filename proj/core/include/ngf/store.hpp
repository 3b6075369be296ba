#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ngf/attribute.hpp"
#include "ngf/calibration.hpp"
#include "ngf/entity_id.hpp"
#include "ngf/equality.hpp"
#include "ngf/hypergram.hpp"
#include "ngf/metrics.hpp"
#include "ngf/schema.hpp"
#include "ngf/superposition.hpp"

namespace ngf {

/// Names the dimensional-reduction map that produced an embedding.
struct EmbeddingProvenance {
  std::string map_id;
  std::string version;
  bool operator==(const EmbeddingProvenance&) const = default;
};

using ProvenanceMap = std::map<std::string, EmbeddingProvenance>;

struct Vertex {
  EntityId id;
  std::string type;
  Attributes attributes;
  ProvenanceMap provenance;

  const AttributeValue* find(const std::string& key) const;
  bool operator==(const Vertex&) const = default;
};

struct Edge {
  EntityId id;
  std::string type;
  EntityId source;
  EntityId target;
  Attributes attributes;
  std::optional<SuperpositionDescriptor> superposition;
  ProvenanceMap provenance;

  const AttributeValue* find(const std::string& key) const;
  /// Concrete edges carry no descriptor or the forward amplitude (1, 0, 0).
  DirectionAmplitudes direction() const;
  bool operator==(const Edge&) const = default;
};

/// Declared, non-enforced durability metadata.
struct ReplicationMeta {
  std::uint64_t replica_count = 1;
  std::string durability_note;
  bool operator==(const ReplicationMeta&) const = default;
};

/// The typed directed multigraph with its registries.
///
/// Single writer, many readers: const member functions may run concurrently
/// with each other but not with mutations.
class Store {
 public:
  Store();
  Store(ClockSource clock, RandomSource rng);

  // Schemas ---------------------------------------------------------------
  void register_schema(TypeSchema schema, Side side);
  const TypeSchema* find_schema(const std::string& type_name, Side side) const;
  const std::map<std::string, TypeSchema>& schemas(Side side) const;

  // Identifiers -----------------------------------------------------------
  /// Draws ids until one is unused in this store. After a few redraws the
  /// random payload is probed upward, so constant sources still terminate.
  EntityId new_id(EntityKind kind);
  /// Replaces the clock and random sources used by new_id.
  void set_id_sources(ClockSource clock, RandomSource rng);
  bool id_in_use(EntityId id) const;

  // Vertices and edges ----------------------------------------------------
  EntityId add_vertex(const std::string& type, Attributes attributes = {}, ProvenanceMap provenance = {});
  EntityId add_edge(const std::string& type, EntityId source, EntityId target, Attributes attributes = {},
                    std::optional<SuperpositionDescriptor> superposition = std::nullopt,
                    ProvenanceMap provenance = {});

  /// Inserts an entity with a preassigned id (import, load).
  void insert_vertex(Vertex vertex);
  void insert_edge(Edge edge);

  const Vertex& vertex(EntityId id) const;
  const Edge& edge(EntityId id) const;
  const Vertex* find_vertex(EntityId id) const;
  const Edge* find_edge(EntityId id) const;

  void set_vertex_attribute(EntityId id, const std::string& key, AttributeValue value);
  void erase_vertex_attribute(EntityId id, const std::string& key);
  void set_edge_attribute(EntityId id, const std::string& key, AttributeValue value);
  void set_edge_superposition(EntityId id, std::optional<SuperpositionDescriptor> superposition);

  /// Removes the vertex and exactly the edges incident to it. Refuses when
  /// the vertex is a constituent of a virtual node.
  void delete_vertex(EntityId id);
  void delete_edge(EntityId id);

  std::vector<EntityId> incident_edges(EntityId vertex) const;
  std::vector<EntityId> out_edges(EntityId vertex) const;

  const std::map<EntityId, Vertex>& vertices() const { return vertices_; }
  const std::map<EntityId, Edge>& edges() const { return edges_; }
  std::vector<EntityId> vertices_of_type(const std::string& type) const;

  // Virtual nodes ---------------------------------------------------------
  EntityId add_virtual_node(std::vector<Constituent> constituents);
  void insert_virtual_node(VirtualNode node);
  const VirtualNode* find_virtual_node(EntityId id) const;
  const std::map<EntityId, VirtualNode>& virtual_nodes() const { return virtual_nodes_; }
  /// A concrete vertex or a registered virtual node.
  bool is_endpoint(EntityId id) const;

  // Registries ------------------------------------------------------------
  /// Binds a named metric to a key of a registered type; checks admissibility.
  void register_metric(const std::string& name, const std::string& type_name, MetricDescriptor metric);
  void insert_metric(const std::string& name, MetricDescriptor metric);
  const MetricDescriptor& metric(const std::string& name) const;
  const std::map<std::string, MetricDescriptor>& metric_registry() const { return metrics_; }

  void register_kernel(const std::string& name, KernelDescriptor kernel);
  const KernelDescriptor& kernel(const std::string& name) const;
  const std::map<std::string, KernelDescriptor>& kernel_registry() const { return kernels_; }

  void store_calibration(const std::string& name, CalibrationResult result);
  const CalibrationResult& calibration(const std::string& name) const;
  const std::map<std::string, CalibrationResult>& calibrations() const { return calibrations_; }

  ReplicationMeta& replication() { return replication_; }
  const ReplicationMeta& replication() const { return replication_; }

  // Hyper-histograms ------------------------------------------------------
  Hypergram& insert_hypergram(Hypergram hypergram);
  Hypergram& hypergram(const std::string& name);
  const Hypergram& hypergram(const std::string& name) const;
  const Hypergram* find_hypergram(const std::string& name) const;
  const std::map<std::string, Hypergram>& hypergrams() const { return hypergrams_; }

  /// Full scan: every attribute of every entity satisfies its schema.
  void check_schema_soundness() const;

  /// Structural equality of the stored content (id sources excluded).
  bool same_content(const Store& other) const;

 private:
  const TypeSchema& schema_for(const std::string& type, Side side);
  void check_endpoint(EntityId id, const char* role) const;
  Vertex& mutable_vertex(EntityId id);
  Edge& mutable_edge(EntityId id);

  ClockSource clock_;
  RandomSource rng_;

  std::map<std::string, TypeSchema> vertex_schemas_;
  std::map<std::string, TypeSchema> edge_schemas_;
  std::map<EntityId, Vertex> vertices_;
  std::map<EntityId, Edge> edges_;
  std::map<EntityId, std::set<EntityId>> incidence_;  // endpoint -> incident edge ids
  std::map<EntityId, VirtualNode> virtual_nodes_;

  std::map<std::string, MetricDescriptor> metrics_;
  std::map<std::string, KernelDescriptor> kernels_;
  std::map<std::string, CalibrationResult> calibrations_;
  ReplicationMeta replication_;
  std::map<std::string, Hypergram> hypergrams_;
};

/// One comparison in a query: key op literal.
struct AttributePredicate {
  enum class Op : std::uint8_t { eq, ne, lt, le, gt, ge, has };
  std::string key;
  Op op = Op::has;
  AttributeValue value;

  /// Parses "key=value", "key<3", "key>=2.5", "key!=x" or a bare "key".
  static AttributePredicate parse(const std::string& text);
  bool matches(const Vertex& vertex) const;
};

/// Vertices of `type` (any type when empty) satisfying every predicate.
std::vector<EntityId> query_vertices(const Store& store, const std::string& type,
                                     const std::vector<AttributePredicate>& predicates);

}  // namespace ngf
