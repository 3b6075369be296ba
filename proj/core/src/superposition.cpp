#include "ngf/superposition.hpp"

#include <cmath>
#include <set>

#include "ngf/error.hpp"
#include "ngf/store.hpp"

namespace ngf {

namespace {
constexpr double kNormTolerance = 1e-9;
}

DirectionAmplitudes DirectionAmplitudes::make(double forward, double backward, double bidirectional) {
  DirectionAmplitudes d{forward, backward, bidirectional};
  d.check();
  return d;
}

void DirectionAmplitudes::check() const {
  for (double a : {forward, backward, bidirectional})
    if (!std::isfinite(a) || a < 0.0) throw Error(Errc::invalid_argument, "direction amplitudes must be finite and >= 0");
  const double norm = forward * forward + backward * backward + bidirectional * bidirectional;
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw Error(Errc::invalid_argument, "squared direction amplitudes sum to " + std::to_string(norm) + ", not 1");
}

DirectionProbabilities direction_probabilities(const DirectionAmplitudes& amplitudes) {
  amplitudes.check();
  double p[3] = {amplitudes.forward * amplitudes.forward, amplitudes.backward * amplitudes.backward,
                 amplitudes.bidirectional * amplitudes.bidirectional};
  int largest = 0;
  for (int i = 1; i < 3; ++i)
    if (p[i] > p[largest]) largest = i;
  double rest = 0.0;
  for (int i = 0; i < 3; ++i)
    if (i != largest) rest += p[i];
  p[largest] = 1.0 - rest;
  return {p[0], p[1], p[2]};
}

void VirtualNode::check() const {
  if (constituents.empty()) throw Error(Errc::invalid_argument, "virtual node has no constituents");
  std::set<EntityId> seen;
  double total = 0.0;
  for (const auto& c : constituents) {
    if (!seen.insert(c.vertex).second)
      throw Error(Errc::invalid_argument, "constituent " + c.vertex.to_string() + " listed twice");
    if (!std::isfinite(c.weight) || c.weight < 0.0 || c.weight > 1.0)
      throw Error(Errc::invalid_argument, "constituent weights must lie in [0, 1]");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw Error(Errc::invalid_argument, "constituent weights sum to " + std::to_string(total) + ", not 1");
}

VirtualNode make_virtual_node(std::vector<Constituent> constituents) {
  if (constituents.empty()) throw Error(Errc::invalid_argument, "virtual node has no constituents");
  std::set<EntityId> seen;
  double total = 0.0;
  for (const auto& c : constituents) {
    if (!seen.insert(c.vertex).second)
      throw Error(Errc::invalid_argument, "constituent " + c.vertex.to_string() + " listed twice");
    if (!std::isfinite(c.weight) || c.weight < 0.0)
      throw Error(Errc::invalid_argument, "constituent weights must be finite and >= 0");
    total += c.weight;
  }
  if (total == 0.0) throw Error(Errc::invalid_argument, "constituent weights sum to zero");
  if (total > 1.0 + kNormTolerance)
    throw Error(Errc::invalid_argument,
                "constituent weights sum to " + std::to_string(total) + ", exceeding the unit bound");
  if (total != 1.0)
    for (auto& c : constituents) c.weight /= total;
  return VirtualNode{EntityId{}, std::move(constituents)};
}

EntityId select_constituent(const VirtualNode& node, double u) {
  if (node.constituents.empty()) throw Error(Errc::invalid_argument, "virtual node has no constituents");
  double cumulative = 0.0;
  for (const auto& c : node.constituents) {
    cumulative += c.weight;
    if (u < cumulative) return c.vertex;
  }
  // Rounding can leave the cumulative sum a hair under 1; fall back to the
  // last constituent with positive weight.
  for (auto it = node.constituents.rbegin(); it != node.constituents.rend(); ++it)
    if (it->weight > 0.0) return it->vertex;
  return node.constituents.back().vertex;
}

AdjacencyTable expected_adjacency(const Store& store) {
  auto spread = [&](EntityId id) {
    std::vector<Constituent> out;
    if (const auto* vn = store.find_virtual_node(id))
      out = vn->constituents;
    else
      out.push_back({id, 1.0});
    return out;
  };

  AdjacencyTable table;
  for (const auto& [_, e] : store.edges()) {
    const auto p = direction_probabilities(e.direction());
    const auto sources = spread(e.source);
    const auto targets = spread(e.target);
    for (const auto& s : sources)
      for (const auto& t : targets) {
        const double w = s.weight * t.weight;
        if (w == 0.0) continue;
        if (p.forward + p.bidirectional > 0.0) table[{s.vertex, t.vertex}] += (p.forward + p.bidirectional) * w;
        if (p.backward + p.bidirectional > 0.0) table[{t.vertex, s.vertex}] += (p.backward + p.bidirectional) * w;
      }
  }
  return table;
}

}  // namespace ngf
