#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ngf/attribute.hpp"
#include "ngf/entity_id.hpp"
#include "ngf/metrics.hpp"

namespace ngf {

class Store;

/// One labeled observation: a measured distance and whether the identity
/// oracle declared the two observables the same.
struct CalibrationPair {
  double distance = 0.0;
  bool same = false;
};

struct CalibrationResult {
  double threshold = 0.0;
  double alpha = 1.0;
  double beta = 0.0;
  double fnr_at_t = 0.0;
  double fpr_at_t = 0.0;
  std::size_t n_same = 0;
  std::size_t n_diff = 0;
  // Set when the result was produced for a specific metric binding.
  std::optional<MetricId> metric;
  std::optional<std::string> field;

  bool operator==(const CalibrationResult&) const = default;
};

/// Candidate thresholds for a labeled sample: one point below every distance,
/// the midpoints between consecutive distinct distances, and one point above
/// every distance (the extremes sit one unit outside the observed range).
std::vector<double> candidate_thresholds(std::span<const CalibrationPair> pairs);

/// Solves the cost-weighted error balance FPR(t) = beta + alpha * FNR(t) over
/// the candidate thresholds, where FPR(t) is the share of diff pairs with
/// distance <= t and FNR(t) the share of same pairs with distance > t.
/// Returns the smallest candidate minimizing |FPR - (beta + alpha * FNR)|;
/// alpha = 1, beta = 0 is the equal error rate.
CalibrationResult calibrate(std::span<const CalibrationPair> pairs, double alpha = 1.0, double beta = 0.0);

/// Acceptance rule: distance <= threshold. Infinite distances never pass.
bool is_equal(const AttributeValue& a, const AttributeValue& b, const MetricDescriptor& metric,
              const CalibrationResult& cal);

/// Edge type for inferred similarity, e.g. IS_SIMILAR_AS_EUCLIDEAN_ON_embedding.
std::string similarity_edge_type(const MetricDescriptor& metric);

struct SimilarityInference {
  std::vector<EntityId> edges;
  std::size_t skipped = 0;  // vertices lacking the metric's field
};

/// For every unordered pair of `vertices` accepted by is_equal, adds one
/// similarity edge in each direction carrying the measured distance. Pairs
/// are visited in id order.
SimilarityInference infer_similarity_edges(Store& store, std::span<const EntityId> vertices,
                                           const MetricDescriptor& metric, const CalibrationResult& cal);

}  // namespace ngf
