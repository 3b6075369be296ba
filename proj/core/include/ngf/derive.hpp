#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ngf/entity_id.hpp"

namespace ngf {

class Store;
struct Vertex;

/// Adds HAPPENS_BEFORE a->b when the clock of `a` strictly precedes the clock
/// of `b`. Equal and concurrent clocks yield no edge.
std::optional<EntityId> derive_happens_before(Store& store, EntityId a, EntityId b,
                                              const std::string& clock_key = "clock");

/// Pairwise derivation over a vertex set, in both orientations.
std::vector<EntityId> derive_happens_before_all(Store& store, std::span<const EntityId> vertices,
                                                const std::string& clock_key = "clock");

struct DeriveParams {
  /// Attribute read by the ordinators BYTE_ORDER and NUMERIC_ORDER.
  std::string attribute;
  /// Strict "comes before" relation for IS_SEQUENCED_AFTER_BY_<name> when
  /// <name> is not one of the built-in ordinators.
  std::function<bool(const Vertex&, const Vertex&)> comparator;
  /// Emit every comparable pair rather than the covering pairs only.
  bool transitive_closure = false;
  /// Keys matched by the membership templates: a member's `member_key`
  /// equals its group's `group_key`.
  std::string member_key = "member_of";
  std::string group_key = "name";
};

/// Materializes the edges of one template over a vertex set.
///
/// Order templates (IS_LARGER_THAN_BY_<attr>, IS_SEQUENCED_AFTER_BY_<name>)
/// emit covering pairs by default; larger points at smaller, earlier points
/// at later. Spatial templates read the "bbox" tensor.
std::vector<EntityId> derive_comparison_edges(Store& store, std::span<const EntityId> vertices,
                                              const std::string& edge_type, const DeriveParams& params = {});

}  // namespace ngf
