#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ngf/attribute.hpp"
#include "ngf/entity_id.hpp"
#include "ngf/flow.hpp"

namespace ngf {

class Store;

enum class CellKind : std::uint8_t { scalar, histogram, tensor };
const char* to_string(CellKind kind) noexcept;
CellKind parse_cell_kind(const std::string& token);

inline constexpr std::size_t kDefaultShardCount = 8;
inline constexpr const char* kCellEncoding = "ngf-cell-v1";

/// One hyper-histogram cell. Writers add deltas into independent shards;
/// the observable value only changes when reconcile() folds the shards.
///
/// accumulate() may be called from many threads at once. reconcile() takes
/// the cell exclusively for the duration of the fold.
class HypergramCell {
 public:
  /// `shape` is ignored for scalars, holds {bins} for histograms and the
  /// tensor shape otherwise.
  HypergramCell(EntityId id, CellKind kind, std::vector<std::size_t> shape = {},
                std::size_t shards = kDefaultShardCount);

  HypergramCell(const HypergramCell& other);
  HypergramCell& operator=(const HypergramCell& other);

  EntityId id() const { return id_; }
  CellKind kind() const { return kind_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t shard_count() const { return shards_.size(); }
  const std::string& encoding() const { return encoding_; }

  /// Adds `delta` to one shard: the hinted one (mod shard count) or the next
  /// in round-robin order. The reconciled value is not touched.
  void accumulate(const AttributeValue& delta, std::optional<std::size_t> shard_hint = std::nullopt);

  /// Folds every shard into the reconciled value. The version advances only
  /// when deltas arrived since the previous reconcile.
  AttributeValue reconcile();

  /// Last reconciled value; stable between reconcile() calls.
  AttributeValue reconciled() const;
  std::uint64_t version() const;

  struct ShardState {
    std::vector<double> sum;
    bool pending = false;
    bool operator==(const ShardState&) const = default;
  };

  /// Snapshot of the shard residues, for persistence.
  std::vector<ShardState> shard_states() const;
  std::vector<double> reconciled_values() const;

  /// Rebuilds a cell from persisted state. Throws on inconsistent sizes.
  static HypergramCell restore(EntityId id, CellKind kind, std::vector<std::size_t> shape,
                               std::vector<ShardState> shards, std::vector<double> reconciled,
                               std::uint64_t version, std::string encoding);

  bool operator==(const HypergramCell& other) const;

 private:
  struct Shard {
    mutable std::mutex mutex;
    std::vector<double> sum;
    bool pending = false;
  };

  std::size_t width() const;
  AttributeValue wrap(const std::vector<double>& values) const;
  void copy_from(const HypergramCell& other);

  EntityId id_;
  CellKind kind_;
  std::vector<std::size_t> shape_;
  std::string encoding_ = kCellEncoding;
  std::vector<std::unique_ptr<Shard>> shards_;
  std::atomic<std::size_t> next_shard_{0};
  mutable std::shared_mutex phase_;
  std::vector<double> reconciled_;
  std::uint64_t version_ = 0;
};

/// Attributes of a lattice's topology. Only connectional dimensionality and
/// density are computed; the rest is declared metadata.
struct TopologyDescriptor {
  std::uint64_t metric_dimensionality = 0;
  std::uint64_t connectional_dimensionality = 0;
  double density = 0.0;
  std::string notes;
  bool operator==(const TopologyDescriptor&) const = default;
};

/// A named lattice of cells. Each cell is also a vertex of the store and
/// neighbour links are IS_NEIGHBOR_OF edges between those vertices.
struct Hypergram {
  std::string name;
  TopologyKind tessellation;
  CellKind cell_kind = CellKind::scalar;
  std::vector<std::size_t> cell_shape;
  std::size_t shard_count = kDefaultShardCount;
  std::uint64_t metric_dimensionality = 0;
  std::string notes;
  std::map<EntityId, HypergramCell> cells;

  HypergramCell& cell(EntityId id);
  const HypergramCell& cell(EntityId id) const;
  bool operator==(const Hypergram&) const = default;
};

inline constexpr const char* kCellVertexType = "HYPERGRAM_CELL";
inline constexpr const char* kNeighborEdgeType = "IS_NEIGHBOR_OF";

/// Registers a hypergram in the store. Dense tessellations create one cell
/// per lattice point and link axis neighbours both ways; sparse ones start
/// empty.
Hypergram& create_hypergram(Store& store, const std::string& name, const TopologyKind& tessellation,
                            CellKind cell_kind, std::vector<std::size_t> cell_shape = {},
                            std::size_t shards = kDefaultShardCount, std::string notes = {});

EntityId add_cell(Store& store, const std::string& hypergram, const std::string& label);
EntityId link_cells(Store& store, const std::string& hypergram, EntityId from, EntityId to);

TopologyDescriptor describe_topology(const Store& store, const std::string& hypergram);

}  // namespace ngf
