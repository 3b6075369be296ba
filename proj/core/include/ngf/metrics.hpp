#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ngf/attribute.hpp"
#include "ngf/schema.hpp"

namespace ngf {

enum class MetricId : std::uint8_t { bhattacharyya, euclidean, cosine_distance, levenshtein, dtw };

const char* to_string(MetricId id) noexcept;
MetricId parse_metric_id(const std::string& token);

/// Distance returned for histograms with disjoint support.
inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// A metric bound to one attribute key.
///
/// Recognised params: "window" (dtw Sakoe-Chiba band half-width, >= 0) and
/// "temporal_axis" (dtw time axis, filled in by bind_metric).
struct MetricDescriptor {
  MetricId metric = MetricId::euclidean;
  std::string field;
  std::map<std::string, double> params;

  bool operator==(const MetricDescriptor&) const = default;
};

bool admissible(MetricId metric, const ValueDictionary& dict);

/// Checks admissibility of `metric` for `dict` and records derived params.
MetricDescriptor bind_metric(MetricDescriptor metric, const ValueDictionary& dict);

double bhattacharyya_coefficient(const Histogram& p, const Histogram& q);
double bhattacharyya_distance(const Histogram& p, const Histogram& q);

double euclidean(std::span<const double> a, std::span<const double> b);
double cosine_distance(std::span<const double> a, std::span<const double> b);
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Dynamic time warping over slices of `a` and `b` taken along
/// `temporal_axis`; the local cost is the Euclidean distance between slices.
/// Steps are match/insert/delete with unit weights.
double dtw(const Tensor& a, const Tensor& b, std::size_t temporal_axis = 0,
           std::optional<std::size_t> window = std::nullopt);

/// Dispatches on the descriptor. Returns kInfiniteDistance only for
/// Bhattacharyya on disjoint supports.
double distance(const MetricDescriptor& metric, const AttributeValue& a, const AttributeValue& b);

}  // namespace ngf
