#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ngf {

class Store;

struct CargoType {
  std::string cargo_id;
  std::string unit;
  bool operator==(const CargoType&) const = default;
};

/// A directed arc of a flow network. Node and arc labels are plain tokens;
/// views built from a store use the hex form of the entity ids.
struct Arc {
  std::string id;
  std::string source;
  std::string target;
};

/// Read-only graph view the flow layer operates on. Parallel arcs are
/// allowed.
class FlowNetwork {
 public:
  void add_node(const std::string& node);
  void add_arc(Arc arc);

  const std::set<std::string>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc* find_arc(const std::string& id) const;
  bool has_node(const std::string& node) const { return nodes_.contains(node); }

  /// Concrete edges of the store: deterministic forward direction between
  /// concrete vertices. Superposed edges must go through
  /// expected_adjacency first and are left out.
  static FlowNetwork from_store(const Store& store);

 private:
  std::set<std::string> nodes_;
  std::vector<Arc> arcs_;
  std::map<std::string, std::size_t> arc_index_;
};

/// Signed flux per arc for one cargo type. Negative flux runs against the
/// arc direction.
struct FlowAssignment {
  CargoType cargo;
  std::map<std::string, double> flux;
  std::map<std::string, double> capacities;
};

inline constexpr double kConservationTolerance = 1e-9;

/// Inbound minus outbound flux at `node`.
double divergence(const FlowNetwork& network, const FlowAssignment& assignment, const std::string& node);

struct VertexResidual {
  std::string node;
  double residual = 0.0;
};

struct CapacityViolation {
  std::string arc;
  double flux = 0.0;
  double capacity = 0.0;
};

struct KirchhoffReport {
  bool pass = true;
  std::vector<VertexResidual> conservation_violations;
  std::vector<CapacityViolation> capacity_violations;
};

/// Every node outside sources and sinks must have zero divergence within
/// kConservationTolerance, and |flux| must not exceed capacity where one is
/// given.
KirchhoffReport check_kirchhoff(const FlowNetwork& network, const FlowAssignment& assignment,
                                const std::set<std::string>& sources, const std::set<std::string>& sinks);

struct MaxFlowResult {
  double value = 0.0;
  FlowAssignment witness;
};

/// Maximum source-to-sink throughput (Dinic). Arcs without a capacity entry
/// carry nothing. The witness passes check_kirchhoff({source}, {sink}).
MaxFlowResult max_flow(const FlowNetwork& network, const CargoType& cargo, const std::string& source,
                       const std::string& sink, const std::map<std::string, double>& capacities);

/// Dense lattices place one node per lattice point and connect axis
/// neighbours in both directions. Sparse topologies start empty.
struct TopologyKind {
  enum class Kind : std::uint8_t { dense, sparse };
  Kind kind = Kind::sparse;
  std::vector<std::size_t> extents;

  static TopologyKind dense(std::vector<std::size_t> extents);
  static TopologyKind sparse() { return {}; }

  void check() const;
  std::size_t point_count() const;
  /// Directed arcs of the complete lattice.
  std::size_t arc_count() const;
  bool operator==(const TopologyKind&) const = default;
};

/// Node label for lattice coordinates, e.g. "(1,2)".
std::string lattice_label(const std::vector<std::size_t>& coords);
/// Row-major coordinates of every lattice point.
std::vector<std::vector<std::size_t>> lattice_points(const std::vector<std::size_t>& extents);

FlowNetwork generate_topology(const TopologyKind& kind);

}  // namespace ngf
