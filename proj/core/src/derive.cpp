#include "ngf/derive.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ngf/edge_templates.hpp"
#include "ngf/error.hpp"
#include "ngf/store.hpp"

namespace ngf {

namespace {

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

const VectorClock& clock_of(const Store& store, EntityId id, const std::string& key) {
  const auto* value = store.vertex(id).find(key);
  if (!value) throw Error(Errc::not_found, "vertex " + id.to_string() + " has no clock under '" + key + "'");
  if (!value->holds<VectorClock>()) throw_kind_mismatch(ValueKind::vector_clock, value->kind());
  return value->as<VectorClock>();
}

std::vector<EntityId> unique_sorted(std::span<const EntityId> ids) {
  std::vector<EntityId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Box {
  std::array<double, 3> lo, hi;
};

Box box_of(const Vertex& v) {
  const auto* value = v.find(kBoundingBoxKey);
  if (!value) throw Error(Errc::not_found, "vertex " + v.id.to_string() + " has no '" + kBoundingBoxKey + "'");
  if (!value->holds<Tensor>()) throw_kind_mismatch(ValueKind::tensor, value->kind());
  const auto& t = value->as<Tensor>();
  if (t.shape != std::vector<std::size_t>{2, 3} || !t.consistent())
    throw Error(Errc::shape_mismatch, "bbox of vertex " + v.id.to_string() + " must have shape [2,3]");
  Box b{};
  for (std::size_t i = 0; i < 3; ++i) {
    b.lo[i] = t.data[i];
    b.hi[i] = t.data[3 + i];
    if (!(b.lo[i] <= b.hi[i])) throw Error(Errc::invalid_argument, "bbox of vertex " + v.id.to_string() + " is inverted");
  }
  return b;
}

bool inside(const Box& inner, const Box& outer) {
  for (std::size_t i = 0; i < 3; ++i)
    if (inner.lo[i] < outer.lo[i] || inner.hi[i] > outer.hi[i]) return false;
  return true;
}

bool overlaps(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < 3; ++i)
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
  return true;
}

// `before[i][j]` is a strict order over the indices; returns the pairs to
// materialize.
std::vector<std::pair<std::size_t, std::size_t>> order_pairs(const std::vector<std::vector<bool>>& before,
                                                             bool closure) {
  const std::size_t n = before.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (before[i][i]) throw Error(Errc::invalid_argument, "comparator is not irreflexive");
    for (std::size_t j = i + 1; j < n; ++j)
      if (before[i][j] && before[j][i]) throw Error(Errc::invalid_argument, "comparator is not antisymmetric");
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!before[i][j]) continue;
      bool covered = true;
      if (!closure)
        for (std::size_t k = 0; k < n && covered; ++k)
          if (before[i][k] && before[k][j]) covered = false;
      if (covered) out.emplace_back(i, j);
    }
  return out;
}

std::function<bool(const Vertex&, const Vertex&)> ordinator(const std::string& name, const DeriveParams& params) {
  if (name == "BYTE_ORDER" || name == "NUMERIC_ORDER") {
    if (params.attribute.empty()) throw Error(Errc::invalid_argument, name + " needs params.attribute");
  }
  const std::string key = params.attribute;
  auto fetch = [key](const Vertex& v) -> const AttributeValue& {
    const auto* value = v.find(key);
    if (!value) throw Error(Errc::not_found, "vertex " + v.id.to_string() + " has no attribute '" + key + "'");
    return *value;
  };
  if (name == "BYTE_ORDER")
    return [fetch](const Vertex& a, const Vertex& b) {
      auto text = [](const AttributeValue& v) -> const std::string& {
        if (v.holds<std::string>()) return v.as<std::string>();
        if (v.holds<EnumToken>()) return v.as<EnumToken>().token;
        throw_kind_mismatch(ValueKind::string, v.kind());
      };
      return text(fetch(a)) < text(fetch(b));
    };
  if (name == "NUMERIC_ORDER")
    return [fetch](const Vertex& a, const Vertex& b) {
      const auto& va = fetch(a);
      const auto& vb = fetch(b);
      if (!va.holds<double>()) throw_kind_mismatch(ValueKind::scalar, va.kind());
      if (!vb.holds<double>()) throw_kind_mismatch(ValueKind::scalar, vb.kind());
      if (std::isnan(va.as<double>()) || std::isnan(vb.as<double>()))
        throw Error(Errc::invalid_argument, "NaN values are not comparable");
      return va.as<double>() < vb.as<double>();
    };
  if (!params.comparator) throw Error(Errc::invalid_argument, "no comparator supplied for '" + name + "'");
  return params.comparator;
}

const std::string& membership_token(const Vertex& v, const std::string& key) {
  const auto* value = v.find(key);
  if (!value) throw Error(Errc::not_found, "vertex " + v.id.to_string() + " has no attribute '" + key + "'");
  if (value->holds<std::string>()) return value->as<std::string>();
  if (value->holds<EnumToken>()) return value->as<EnumToken>().token;
  throw_kind_mismatch(ValueKind::string, value->kind());
}

struct PartOf {
  std::size_t axis;
  bool positive;
};

std::optional<PartOf> part_of(const std::string& type) {
  static const std::array<const char*, 3> axes = {"X", "Y", "Z"};
  for (std::size_t a = 0; a < 3; ++a) {
    if (type == std::string("IS_NEG_") + axes[a] + "_PART_OF") return PartOf{a, false};
    if (type == std::string("IS_POS_") + axes[a] + "_PART_OF") return PartOf{a, true};
  }
  return std::nullopt;
}

}  // namespace

std::optional<EntityId> derive_happens_before(Store& store, EntityId a, EntityId b, const std::string& clock_key) {
  const auto& ca = clock_of(store, a, clock_key);
  const auto& cb = clock_of(store, b, clock_key);
  if (a == b || !ca.happens_before(cb)) return std::nullopt;
  return store.add_edge(kHappensBefore, a, b, {{"clock_key", clock_key}});
}

std::vector<EntityId> derive_happens_before_all(Store& store, std::span<const EntityId> vertices,
                                                const std::string& clock_key) {
  const auto ids = unique_sorted(vertices);
  for (EntityId id : ids) clock_of(store, id, clock_key);
  std::vector<EntityId> out;
  for (EntityId a : ids)
    for (EntityId b : ids)
      if (auto e = derive_happens_before(store, a, b, clock_key)) out.push_back(*e);
  return out;
}

std::vector<EntityId> derive_comparison_edges(Store& store, std::span<const EntityId> vertices,
                                              const std::string& edge_type, const DeriveParams& params) {
  const auto ids = unique_sorted(vertices);
  std::vector<const Vertex*> vs;
  for (EntityId id : ids) vs.push_back(&store.vertex(id));
  const std::size_t n = vs.size();

  // Everything is computed before the first write so a failing template
  // leaves the store untouched.
  std::vector<std::pair<EntityId, EntityId>> pending;

  const bool larger = starts_with(edge_type, kLargerThanPrefix) && edge_type.size() > std::string(kLargerThanPrefix).size();
  const bool sequenced =
      starts_with(edge_type, kSequencedAfterPrefix) && edge_type.size() > std::string(kSequencedAfterPrefix).size();

  if (larger || sequenced) {
    std::function<bool(const Vertex&, const Vertex&)> first;
    if (larger) {
      DeriveParams numeric = params;
      numeric.attribute = edge_type.substr(std::string(kLargerThanPrefix).size());
      const auto less = ordinator("NUMERIC_ORDER", numeric);
      first = [less](const Vertex& a, const Vertex& b) { return less(b, a); };
    } else {
      first = ordinator(edge_type.substr(std::string(kSequencedAfterPrefix).size()), params);
    }
    std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) before[i][j] = i != j && first(*vs[i], *vs[j]);
    for (auto [i, j] : order_pairs(before, params.transitive_closure)) pending.emplace_back(ids[i], ids[j]);
  } else if (edge_type == kSpatiallyContains || edge_type == kSpatiallyOverlaps || part_of(edge_type)) {
    std::vector<Box> boxes;
    for (const auto* v : vs) boxes.push_back(box_of(*v));
    const auto part = part_of(edge_type);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Box& a = boxes[i];
        const Box& b = boxes[j];
        if (edge_type == kSpatiallyContains) {
          if (inside(b, a) && !inside(a, b)) pending.emplace_back(ids[i], ids[j]);
        } else if (edge_type == kSpatiallyOverlaps) {
          if (overlaps(a, b)) pending.emplace_back(ids[i], ids[j]);
        } else {
          // b is a part of a lying in the named half of a: edge b -> a.
          if (!inside(b, a) || inside(a, b)) continue;
          const double mid = a.lo[part->axis] + (a.hi[part->axis] - a.lo[part->axis]) / 2.0;
          const bool in_half = part->positive ? b.lo[part->axis] >= mid : b.hi[part->axis] <= mid;
          if (in_half) pending.emplace_back(ids[j], ids[i]);
        }
      }
  } else if (edge_type == kBelongsTo || edge_type == kIn || edge_type == kOwns ||
             edge_type == kCategoricallyContains) {
    const bool member_to_group = edge_type == kBelongsTo || edge_type == kIn;
    for (std::size_t i = 0; i < n; ++i) {
      const auto* member = vs[i]->find(params.member_key);
      if (!member) continue;
      const auto& wanted = membership_token(*vs[i], params.member_key);
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !vs[j]->find(params.group_key)) continue;
        if (membership_token(*vs[j], params.group_key) != wanted) continue;
        if (member_to_group)
          pending.emplace_back(ids[i], ids[j]);
        else
          pending.emplace_back(ids[j], ids[i]);
      }
    }
  } else {
    throw Error(Errc::unknown_type, "'" + edge_type + "' is not a derivable edge template");
  }

  std::vector<EntityId> out;
  out.reserve(pending.size());
  for (auto [s, t] : pending) out.push_back(store.add_edge(edge_type, s, t));
  return out;
}

}  // namespace ngf
