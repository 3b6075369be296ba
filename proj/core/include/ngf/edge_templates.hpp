#pragma once

#include <optional>
#include <string>

#include "ngf/schema.hpp"

namespace ngf {

// Built-in relationship vocabulary. Types matching one of these names are
// registered on first use when the caller has not registered them already.
inline constexpr const char* kHappensBefore = "HAPPENS_BEFORE";
inline constexpr const char* kSpatiallyContains = "SPATIALLY_CONTAINS";
inline constexpr const char* kSpatiallyOverlaps = "SPATIALLY_OVERLAPS";
inline constexpr const char* kCategoricallyContains = "CATEGORICALLY_CONTAINS";
inline constexpr const char* kBelongsTo = "BELONGS_TO";
inline constexpr const char* kIn = "IN";
inline constexpr const char* kOwns = "OWNS";
inline constexpr const char* kLargerThanPrefix = "IS_LARGER_THAN_BY_";
inline constexpr const char* kSequencedAfterPrefix = "IS_SEQUENCED_AFTER_BY_";
inline constexpr const char* kSimilarPrefix = "IS_SIMILAR_AS_";
inline constexpr const char* kEqualsPrefix = "EQUALS_";

/// Reserved attribute key for axis-aligned bounding boxes: tensor [2,3]
/// holding the min corner then the max corner.
inline constexpr const char* kBoundingBoxKey = "bbox";

std::optional<TypeSchema> builtin_edge_schema(const std::string& type_name);
std::optional<TypeSchema> builtin_vertex_schema(const std::string& type_name);

}  // namespace ngf
