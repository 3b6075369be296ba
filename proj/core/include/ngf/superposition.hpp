#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ngf/entity_id.hpp"

namespace ngf {

class Store;

/// Real, nonnegative amplitudes over the three possible edge directions.
/// Squared amplitudes are the direction probabilities, so the amplitudes have
/// unit L2 norm.
struct DirectionAmplitudes {
  double forward = 1.0;
  double backward = 0.0;
  double bidirectional = 0.0;

  static DirectionAmplitudes make(double forward, double backward, double bidirectional);
  static constexpr DirectionAmplitudes concrete() { return {1.0, 0.0, 0.0}; }

  /// Throws unless all amplitudes are >= 0 and their squares sum to 1 within 1e-9.
  void check() const;
  bool is_concrete() const { return forward == 1.0 && backward == 0.0 && bidirectional == 0.0; }
  bool operator==(const DirectionAmplitudes&) const = default;
};

struct DirectionProbabilities {
  double forward = 0.0;
  double backward = 0.0;
  double bidirectional = 0.0;
};

/// Squared amplitudes. The largest component is taken as the complement of
/// the other two, so the result is an exact distribution whenever the
/// complement is representable.
DirectionProbabilities direction_probabilities(const DirectionAmplitudes& amplitudes);

struct SuperpositionDescriptor {
  DirectionAmplitudes direction;
  bool operator==(const SuperpositionDescriptor&) const = default;
};

struct Constituent {
  EntityId vertex;
  double weight = 0.0;
  bool operator==(const Constituent&) const = default;
};

/// A vertex whose identity is a weighted mixture of concrete vertices.
struct VirtualNode {
  EntityId id;
  std::vector<Constituent> constituents;

  /// A single constituent with weight 1 is just another name for it.
  bool is_alias() const { return constituents.size() == 1; }
  /// Nonempty, distinct constituents, weights in [0, 1] summing to 1 within 1e-9.
  void check() const;
  bool operator==(const VirtualNode&) const = default;
};

/// Validates and renormalizes constituent weights. Totals in (0, 1] are
/// scaled to 1; totals above 1 + 1e-9 are rejected. The id is left for the
/// store to assign.
VirtualNode make_virtual_node(std::vector<Constituent> constituents);

/// Picks the constituent whose cumulative weight interval contains `u`, with
/// `u` uniform in [0, 1).
EntityId select_constituent(const VirtualNode& node, double u);

/// Samples a constituent with probability equal to its weight.
template <typename Urbg>
EntityId collapse(const VirtualNode& node, Urbg& rng) {
  static_assert(sizeof(typename Urbg::result_type) == 8, "collapse expects a 64-bit generator");
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return select_constituent(node, u);
}

using AdjacencyTable = std::map<std::pair<EntityId, EntityId>, double>;

/// Deterministic projection of every edge onto concrete vertex pairs: each
/// edge adds p_fwd to (s, t), p_bwd to (t, s) and p_bidir to both, spread over
/// virtual-node constituents by weight.
AdjacencyTable expected_adjacency(const Store& store);

}  // namespace ngf
