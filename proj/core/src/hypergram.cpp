#include "ngf/hypergram.hpp"

#include <algorithm>
#include <cmath>

#include "ngf/error.hpp"
#include "ngf/store.hpp"

namespace ngf {

const char* to_string(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::scalar: return "scalar";
    case CellKind::histogram: return "histogram";
    case CellKind::tensor: return "tensor";
  }
  return "scalar";
}

CellKind parse_cell_kind(const std::string& token) {
  if (token == "scalar") return CellKind::scalar;
  if (token == "histogram") return CellKind::histogram;
  if (token == "tensor") return CellKind::tensor;
  throw Error(Errc::invalid_argument, "unknown cell kind '" + token + "'");
}

HypergramCell::HypergramCell(EntityId id, CellKind kind, std::vector<std::size_t> shape, std::size_t shards)
    : id_(id), kind_(kind), shape_(std::move(shape)) {
  if (shards < 1) throw Error(Errc::invalid_argument, "a cell needs at least one shard");
  if (kind_ == CellKind::scalar) shape_.clear();
  if (kind_ == CellKind::histogram && (shape_.size() != 1 || shape_[0] < 1))
    throw Error(Errc::invalid_argument, "histogram cells take a shape of {bins} with bins >= 1");
  if (kind_ == CellKind::tensor) {
    if (shape_.empty()) throw Error(Errc::invalid_argument, "tensor cells need a shape");
    for (auto s : shape_)
      if (s < 1) throw Error(Errc::invalid_argument, "tensor cell shape entries must be >= 1");
  }
  shards_.reserve(shards);
  for (std::size_t i = 0; i < shards; ++i) {
    shards_.push_back(std::make_unique<Shard>());
    shards_.back()->sum.assign(width(), 0.0);
  }
  reconciled_.assign(width(), 0.0);
}

void HypergramCell::copy_from(const HypergramCell& other) {
  std::unique_lock lock(other.phase_);
  id_ = other.id_;
  kind_ = other.kind_;
  shape_ = other.shape_;
  encoding_ = other.encoding_;
  shards_.clear();
  for (const auto& s : other.shards_) {
    auto copy = std::make_unique<Shard>();
    copy->sum = s->sum;
    copy->pending = s->pending;
    shards_.push_back(std::move(copy));
  }
  next_shard_.store(other.next_shard_.load());
  reconciled_ = other.reconciled_;
  version_ = other.version_;
}

HypergramCell::HypergramCell(const HypergramCell& other) : kind_(CellKind::scalar) { copy_from(other); }

HypergramCell& HypergramCell::operator=(const HypergramCell& other) {
  if (this != &other) {
    HypergramCell tmp(other);
    std::unique_lock lock(phase_);
    id_ = tmp.id_;
    kind_ = tmp.kind_;
    shape_ = std::move(tmp.shape_);
    encoding_ = std::move(tmp.encoding_);
    shards_ = std::move(tmp.shards_);
    next_shard_.store(tmp.next_shard_.load());
    reconciled_ = std::move(tmp.reconciled_);
    version_ = tmp.version_;
  }
  return *this;
}

std::size_t HypergramCell::width() const { return kind_ == CellKind::scalar ? 1 : shape_product(shape_); }

AttributeValue HypergramCell::wrap(const std::vector<double>& values) const {
  switch (kind_) {
    case CellKind::scalar: return AttributeValue(values.at(0));
    case CellKind::histogram: return AttributeValue(Histogram{values, false});
    case CellKind::tensor: return AttributeValue(Tensor(shape_, values));
  }
  return AttributeValue(0.0);
}

void HypergramCell::accumulate(const AttributeValue& delta, std::optional<std::size_t> shard_hint) {
  const std::vector<double>* values = nullptr;
  double scalar = 0.0;
  switch (kind_) {
    case CellKind::scalar:
      if (!delta.holds<double>()) throw_kind_mismatch(ValueKind::scalar, delta.kind());
      scalar = delta.as<double>();
      break;
    case CellKind::histogram: {
      if (!delta.holds<Histogram>()) throw_kind_mismatch(ValueKind::histogram, delta.kind());
      const auto& h = delta.as<Histogram>();
      if (h.counts.size() != shape_[0])
        throw Error(Errc::shape_mismatch, "histogram delta has " + std::to_string(h.counts.size()) + " bins, cell has " +
                                              std::to_string(shape_[0]));
      for (double c : h.counts)
        if (c < 0.0) throw Error(Errc::invalid_argument, "histogram deltas must be nonnegative");
      values = &h.counts;
      break;
    }
    case CellKind::tensor: {
      if (!delta.holds<Tensor>()) throw_kind_mismatch(ValueKind::tensor, delta.kind());
      const auto& t = delta.as<Tensor>();
      if (t.shape != shape_ || !t.consistent()) throw Error(Errc::shape_mismatch, "tensor delta shape differs from cell");
      values = &t.data;
      break;
    }
  }
  if (values) {
    for (double x : *values)
      if (!std::isfinite(x)) throw Error(Errc::invalid_argument, "deltas must be finite");
  } else if (!std::isfinite(scalar)) {
    throw Error(Errc::invalid_argument, "deltas must be finite");
  }

  std::shared_lock phase(phase_);
  const std::size_t index = shard_hint ? *shard_hint % shards_.size()
                                       : next_shard_.fetch_add(1, std::memory_order_relaxed) % shards_.size();
  Shard& shard = *shards_[index];
  std::lock_guard lock(shard.mutex);
  if (values)
    for (std::size_t i = 0; i < values->size(); ++i) shard.sum[i] += (*values)[i];
  else
    shard.sum[0] += scalar;
  shard.pending = true;
}

AttributeValue HypergramCell::reconcile() {
  std::unique_lock phase(phase_);
  bool fresh = false;
  std::vector<double> total(width(), 0.0);
  for (const auto& shard : shards_) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += shard->sum[i];
    fresh = fresh || shard->pending;
    shard->pending = false;
  }
  if (fresh) {
    reconciled_ = std::move(total);
    ++version_;
  }
  return wrap(reconciled_);
}

AttributeValue HypergramCell::reconciled() const {
  std::shared_lock phase(phase_);
  return wrap(reconciled_);
}

std::uint64_t HypergramCell::version() const {
  std::shared_lock phase(phase_);
  return version_;
}

std::vector<HypergramCell::ShardState> HypergramCell::shard_states() const {
  std::unique_lock phase(phase_);
  std::vector<ShardState> out;
  out.reserve(shards_.size());
  for (const auto& s : shards_) out.push_back({s->sum, s->pending});
  return out;
}

std::vector<double> HypergramCell::reconciled_values() const {
  std::shared_lock phase(phase_);
  return reconciled_;
}

HypergramCell HypergramCell::restore(EntityId id, CellKind kind, std::vector<std::size_t> shape,
                                     std::vector<ShardState> shards, std::vector<double> reconciled,
                                     std::uint64_t version, std::string encoding) {
  if (encoding != kCellEncoding) throw Error(Errc::version, "unsupported cell encoding '" + encoding + "'");
  HypergramCell cell(id, kind, std::move(shape), shards.size());
  if (reconciled.size() != cell.width()) throw Error(Errc::format, "reconciled value has the wrong width");
  for (std::size_t i = 0; i < shards.size(); ++i) {
    if (shards[i].sum.size() != cell.width()) throw Error(Errc::format, "shard residue has the wrong width");
    cell.shards_[i]->sum = std::move(shards[i].sum);
    cell.shards_[i]->pending = shards[i].pending;
  }
  cell.reconciled_ = std::move(reconciled);
  cell.version_ = version;
  return cell;
}

bool HypergramCell::operator==(const HypergramCell& other) const {
  return id_ == other.id_ && kind_ == other.kind_ && shape_ == other.shape_ && encoding_ == other.encoding_ &&
         shard_states() == other.shard_states() && reconciled_values() == other.reconciled_values() &&
         version() == other.version();
}

HypergramCell& Hypergram::cell(EntityId id) {
  auto it = cells.find(id);
  if (it == cells.end()) throw Error(Errc::not_found, "hypergram '" + name + "' has no cell " + id.to_string());
  return it->second;
}

const HypergramCell& Hypergram::cell(EntityId id) const {
  auto it = cells.find(id);
  if (it == cells.end()) throw Error(Errc::not_found, "hypergram '" + name + "' has no cell " + id.to_string());
  return it->second;
}

Hypergram& create_hypergram(Store& store, const std::string& name, const TopologyKind& tessellation,
                            CellKind cell_kind, std::vector<std::size_t> cell_shape, std::size_t shards,
                            std::string notes) {
  tessellation.check();
  // Validate the cell layout before touching the store.
  HypergramCell probe(EntityId{}, cell_kind, cell_shape, shards);

  Hypergram hg;
  hg.name = name;
  hg.tessellation = tessellation;
  hg.cell_kind = cell_kind;
  hg.cell_shape = probe.shape();
  hg.shard_count = shards;
  hg.metric_dimensionality = tessellation.extents.size();
  hg.notes = std::move(notes);
  Hypergram& registered = store.insert_hypergram(std::move(hg));

  if (tessellation.kind == TopologyKind::Kind::dense) {
    std::map<std::string, EntityId> by_label;
    for (const auto& p : lattice_points(tessellation.extents)) by_label[lattice_label(p)] = add_cell(store, name, lattice_label(p));
    const auto net = generate_topology(tessellation);
    for (const auto& arc : net.arcs()) link_cells(store, name, by_label.at(arc.source), by_label.at(arc.target));
  }
  return registered;
}

EntityId add_cell(Store& store, const std::string& hypergram, const std::string& label) {
  auto& hg = store.hypergram(hypergram);
  const EntityId id = store.add_vertex(kCellVertexType, {{"hypergram", hypergram}, {"label", label}});
  hg.cells.emplace(id, HypergramCell(id, hg.cell_kind, hg.cell_shape, hg.shard_count));
  return id;
}

EntityId link_cells(Store& store, const std::string& hypergram, EntityId from, EntityId to) {
  const auto& hg = store.hypergram(hypergram);
  if (!hg.cells.contains(from) || !hg.cells.contains(to))
    throw Error(Errc::not_found, "both endpoints must be cells of hypergram '" + hypergram + "'");
  return store.add_edge(kNeighborEdgeType, from, to);
}

TopologyDescriptor describe_topology(const Store& store, const std::string& hypergram) {
  const auto* hg = store.find_hypergram(hypergram);
  if (!hg) throw Error(Errc::not_found, "hypergram '" + hypergram + "' is not registered");

  TopologyDescriptor d;
  d.metric_dimensionality = hg->metric_dimensionality;
  d.notes = hg->notes;

  std::size_t links = 0;
  for (const auto& [id, _] : hg->cells) {
    std::uint64_t degree = 0;
    for (EntityId e : store.out_edges(id)) {
      const auto& edge = store.edge(e);
      if (edge.type == kNeighborEdgeType && hg->cells.contains(edge.target)) ++degree;
    }
    links += degree;
    d.connectional_dimensionality = std::max(d.connectional_dimensionality, degree);
  }

  const std::size_t n = hg->cells.size();
  const std::size_t possible =
      hg->tessellation.kind == TopologyKind::Kind::dense ? hg->tessellation.arc_count() : (n < 2 ? 0 : n * (n - 1));
  d.density = possible == 0 ? 0.0 : static_cast<double>(links) / static_cast<double>(possible);
  return d;
}

}  // namespace ngf
