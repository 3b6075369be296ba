#include "ngf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "ngf/error.hpp"
#include "ngf/store.hpp"

namespace ngf {

void FlowNetwork::add_node(const std::string& node) {
  if (node.empty()) throw Error(Errc::invalid_argument, "flow node label is empty");
  nodes_.insert(node);
}

void FlowNetwork::add_arc(Arc arc) {
  if (arc.id.empty()) throw Error(Errc::invalid_argument, "arc id is empty");
  if (arc_index_.contains(arc.id)) throw Error(Errc::duplicate, "arc '" + arc.id + "' already present");
  add_node(arc.source);
  add_node(arc.target);
  arc_index_.emplace(arc.id, arcs_.size());
  arcs_.push_back(std::move(arc));
}

const Arc* FlowNetwork::find_arc(const std::string& id) const {
  auto it = arc_index_.find(id);
  return it == arc_index_.end() ? nullptr : &arcs_[it->second];
}

FlowNetwork FlowNetwork::from_store(const Store& store) {
  FlowNetwork net;
  for (const auto& [id, _] : store.vertices()) net.add_node(id.to_string());
  for (const auto& [id, e] : store.edges()) {
    if (!e.direction().is_concrete()) continue;
    if (!store.find_vertex(e.source) || !store.find_vertex(e.target)) continue;
    net.add_arc({id.to_string(), e.source.to_string(), e.target.to_string()});
  }
  return net;
}

namespace {

std::map<std::string, double> all_divergences(const FlowNetwork& network, const FlowAssignment& assignment) {
  std::map<std::string, double> div;
  for (const auto& n : network.nodes()) div[n] = 0.0;
  for (const auto& [arc_id, flux] : assignment.flux) {
    const Arc* arc = network.find_arc(arc_id);
    if (!arc) throw Error(Errc::dangling_endpoint, "flux refers to unknown arc '" + arc_id + "'");
    if (!std::isfinite(flux)) throw Error(Errc::invalid_argument, "flux on '" + arc_id + "' is not finite");
    div[arc->target] += flux;
    div[arc->source] -= flux;
  }
  return div;
}

}  // namespace

double divergence(const FlowNetwork& network, const FlowAssignment& assignment, const std::string& node) {
  if (!network.has_node(node)) throw Error(Errc::not_found, "flow network has no node '" + node + "'");
  double inbound = 0.0, outbound = 0.0;
  for (const auto& [arc_id, flux] : assignment.flux) {
    const Arc* arc = network.find_arc(arc_id);
    if (!arc) throw Error(Errc::dangling_endpoint, "flux refers to unknown arc '" + arc_id + "'");
    if (arc->target == node) inbound += flux;
    if (arc->source == node) outbound += flux;
  }
  return inbound - outbound;
}

KirchhoffReport check_kirchhoff(const FlowNetwork& network, const FlowAssignment& assignment,
                                const std::set<std::string>& sources, const std::set<std::string>& sinks) {
  for (const auto& s : sources)
    if (sinks.contains(s)) throw Error(Errc::invalid_argument, "'" + s + "' is both a source and a sink");

  KirchhoffReport report;
  for (const auto& [node, div] : all_divergences(network, assignment)) {
    if (sources.contains(node) || sinks.contains(node)) continue;
    if (std::abs(div) > kConservationTolerance) report.conservation_violations.push_back({node, div});
  }
  for (const auto& [arc_id, cap] : assignment.capacities) {
    if (!network.find_arc(arc_id)) throw Error(Errc::dangling_endpoint, "capacity for unknown arc '" + arc_id + "'");
    auto it = assignment.flux.find(arc_id);
    const double flux = it == assignment.flux.end() ? 0.0 : it->second;
    if (cap < 0.0 || std::abs(flux) > cap + kConservationTolerance) report.capacity_violations.push_back({arc_id, flux, cap});
  }
  report.pass = report.conservation_violations.empty() && report.capacity_violations.empty();
  return report;
}

namespace {

// Dinic's algorithm over a residual graph with paired forward/backward
// entries.
class Dinic {
 public:
  explicit Dinic(std::size_t n) : adj_(n), level_(n), cursor_(n) {}

  std::size_t add(std::size_t from, std::size_t to, double cap) {
    adj_[from].push_back(edges_.size());
    edges_.push_back({to, cap});
    adj_[to].push_back(edges_.size());
    edges_.push_back({from, 0.0});
    return edges_.size() - 2;
  }

  double run(std::size_t s, std::size_t t) {
    double total = 0.0;
    while (bfs(s, t)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (true) {
        const double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kEps) break;
        total += pushed;
      }
    }
    return total;
  }

  double residual(std::size_t edge) const { return edges_[edge].cap; }

 private:
  static constexpr double kEps = 1e-12;
  struct E {
    std::size_t to;
    double cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto ei : adj_[u]) {
        const auto& e = edges_[ei];
        if (e.cap > kEps && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(std::size_t u, std::size_t t, double limit) {
    if (u == t) return limit;
    for (auto& i = cursor_[u]; i < adj_[u].size(); ++i) {
      const auto ei = adj_[u][i];
      auto& e = edges_[ei];
      if (e.cap <= kEps || level_[e.to] != level_[u] + 1) continue;
      const double got = dfs(e.to, t, std::min(limit, e.cap));
      if (got > kEps) {
        e.cap -= got;
        edges_[ei ^ 1].cap += got;
        return got;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<E> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& network, const CargoType& cargo, const std::string& source,
                       const std::string& sink, const std::map<std::string, double>& capacities) {
  if (source == sink) throw Error(Errc::invalid_argument, "source and sink must differ");
  if (!network.has_node(source)) throw Error(Errc::not_found, "flow network has no node '" + source + "'");
  if (!network.has_node(sink)) throw Error(Errc::not_found, "flow network has no node '" + sink + "'");

  std::map<std::string, std::size_t> index;
  for (const auto& n : network.nodes()) index.emplace(n, index.size());

  Dinic dinic(index.size());
  std::vector<std::pair<std::string, std::size_t>> handles;
  for (const auto& [arc_id, cap] : capacities) {
    const Arc* arc = network.find_arc(arc_id);
    if (!arc) throw Error(Errc::dangling_endpoint, "capacity for unknown arc '" + arc_id + "'");
    if (!std::isfinite(cap) || cap < 0.0) throw Error(Errc::invalid_argument, "capacities must be finite and >= 0");
    handles.emplace_back(arc_id, dinic.add(index.at(arc->source), index.at(arc->target), cap));
  }

  MaxFlowResult result;
  result.value = dinic.run(index.at(source), index.at(sink));
  result.witness.cargo = cargo;
  result.witness.capacities = capacities;
  for (const auto& [arc_id, handle] : handles) {
    const double cap = capacities.at(arc_id);
    result.witness.flux[arc_id] = std::clamp(cap - dinic.residual(handle), 0.0, cap);
  }
  return result;
}

TopologyKind TopologyKind::dense(std::vector<std::size_t> extents) {
  TopologyKind k{Kind::dense, std::move(extents)};
  k.check();
  return k;
}

void TopologyKind::check() const {
  if (kind == Kind::sparse) return;
  if (extents.empty()) throw Error(Errc::invalid_argument, "dense lattice needs at least one dimension");
  for (auto e : extents)
    if (e < 1) throw Error(Errc::invalid_argument, "lattice extents must be >= 1");
}

std::size_t TopologyKind::point_count() const {
  if (kind == Kind::sparse) return 0;
  return shape_product(extents);
}

std::size_t TopologyKind::arc_count() const {
  if (kind == Kind::sparse) return 0;
  std::size_t arcs = 0;
  for (std::size_t a = 0; a < extents.size(); ++a) arcs += 2 * (extents[a] - 1) * (point_count() / extents[a]);
  return arcs;
}

std::string lattice_label(const std::vector<std::size_t>& coords) {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  return s + ")";
}

std::vector<std::vector<std::size_t>> lattice_points(const std::vector<std::size_t>& extents) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t total = shape_product(extents);
  out.reserve(total);
  std::vector<std::size_t> c(extents.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    out.push_back(c);
    for (std::size_t d = extents.size(); d-- > 0;) {
      if (++c[d] < extents[d]) break;
      c[d] = 0;
    }
  }
  return out;
}

FlowNetwork generate_topology(const TopologyKind& kind) {
  kind.check();
  FlowNetwork net;
  if (kind.kind == TopologyKind::Kind::sparse) return net;
  for (const auto& p : lattice_points(kind.extents)) {
    const auto from = lattice_label(p);
    net.add_node(from);
    for (std::size_t axis = 0; axis < p.size(); ++axis) {
      if (p[axis] + 1 >= kind.extents[axis]) continue;
      auto q = p;
      ++q[axis];
      const auto to = lattice_label(q);
      net.add_arc({from + "->" + to, from, to});
      net.add_arc({to + "->" + from, to, from});
    }
  }
  return net;
}

}  // namespace ngf
