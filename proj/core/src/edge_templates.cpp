#include "ngf/edge_templates.hpp"

#include <array>
#include <limits>

#include "ngf/hypergram.hpp"

namespace ngf {

namespace {

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

TypeSchema keyless(const std::string& name) { return TypeSchema{name, {}}; }

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::optional<TypeSchema> builtin_edge_schema(const std::string& name) {
  if (name == kHappensBefore) return TypeSchema{name, {{"clock_key", ValueDictionary::string()}}};

  static const std::array<const char*, 7> plain = {kSpatiallyContains, kSpatiallyOverlaps, kCategoricallyContains,
                                                   kBelongsTo,         kIn,                kOwns,
                                                   kNeighborEdgeType};
  for (const char* p : plain)
    if (name == p) return keyless(name);

  static const std::array<const char*, 6> directions = {"NEG_X", "POS_X", "NEG_Y", "POS_Y", "NEG_Z", "POS_Z"};
  for (const char* d : directions)
    if (name == std::string("IS_") + d + "_PART_OF") return keyless(name);

  if ((starts_with(name, kLargerThanPrefix) && name.size() > std::string(kLargerThanPrefix).size()) ||
      (starts_with(name, kSequencedAfterPrefix) && name.size() > std::string(kSequencedAfterPrefix).size()))
    return keyless(name);

  if (starts_with(name, kSimilarPrefix) && name.find("_ON_") != std::string::npos)
    return TypeSchema{name,
                      {{"distance", ValueDictionary::scalar(0.0, kInf)},
                       {"metric", ValueDictionary::enumeration(
                                      {"bhattacharyya", "euclidean", "cosine_distance", "levenshtein", "dtw"})},
                       {"field", ValueDictionary::string()}}};

  if (name == "EQUALS_embodiment" || name == "EQUALS_functional" || name == "EQUALS_representation")
    return TypeSchema{name,
                      {{"score", ValueDictionary::scalar(0.0, 1.0)},
                       {"epsilon", ValueDictionary::scalar(0.0, kInf)},
                       {"kernel", ValueDictionary::enumeration({"dirac", "gaussian"})},
                       {"sigma", ValueDictionary::string()},
                       {"observer", ValueDictionary::string()},
                       {"observer_y", ValueDictionary::string()}}};

  return std::nullopt;
}

std::optional<TypeSchema> builtin_vertex_schema(const std::string& name) {
  if (name == kCellVertexType)
    return TypeSchema{name, {{"hypergram", ValueDictionary::string()}, {"label", ValueDictionary::string()}}};
  return std::nullopt;
}

}  // namespace ngf
