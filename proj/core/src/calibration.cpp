#include "ngf/calibration.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "ngf/edge_templates.hpp"
#include "ngf/error.hpp"
#include "ngf/store.hpp"

namespace ngf {

namespace {

void check_pairs(std::span<const CalibrationPair> pairs) {
  for (const auto& p : pairs)
    if (!std::isfinite(p.distance) || p.distance < 0.0)
      throw Error(Errc::invalid_argument, "calibration distances must be finite and >= 0");
}

}  // namespace

std::vector<double> candidate_thresholds(std::span<const CalibrationPair> pairs) {
  check_pairs(pairs);
  std::vector<double> d;
  d.reserve(pairs.size());
  for (const auto& p : pairs) d.push_back(p.distance);
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  if (d.empty()) return {};

  std::vector<double> out;
  out.reserve(d.size() + 1);
  out.push_back(d.front() - 1.0);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) out.push_back(d[i] + (d[i + 1] - d[i]) / 2.0);
  out.push_back(d.back() + 1.0);
  return out;
}

CalibrationResult calibrate(std::span<const CalibrationPair> pairs, double alpha, double beta) {
  if (!std::isfinite(alpha) || alpha < 0.0) throw Error(Errc::invalid_argument, "alpha must be finite and >= 0");
  if (!std::isfinite(beta)) throw Error(Errc::invalid_argument, "beta must be finite");

  std::vector<double> same, diff;
  for (const auto& p : pairs) (p.same ? same : diff).push_back(p.distance);
  if (same.empty()) throw Error(Errc::invalid_argument, "calibration needs at least one 'same' pair");
  if (diff.empty()) throw Error(Errc::invalid_argument, "calibration needs at least one 'diff' pair");
  std::sort(same.begin(), same.end());
  std::sort(diff.begin(), diff.end());

  const auto candidates = candidate_thresholds(pairs);
  const double n_same = static_cast<double>(same.size());
  const double n_diff = static_cast<double>(diff.size());

  CalibrationResult best;
  best.alpha = alpha;
  best.beta = beta;
  best.n_same = same.size();
  best.n_diff = diff.size();
  double best_objective = std::numeric_limits<double>::infinity();
  double prev_fpr = -1.0, prev_fnr = 2.0;

  for (double t : candidates) {
    const auto accepted_diff = std::upper_bound(diff.begin(), diff.end(), t) - diff.begin();
    const auto accepted_same = std::upper_bound(same.begin(), same.end(), t) - same.begin();
    const double fpr = static_cast<double>(accepted_diff) / n_diff;
    const double fnr = static_cast<double>(same.size() - static_cast<std::size_t>(accepted_same)) / n_same;
    if (fpr < prev_fpr || fnr > prev_fnr)
      throw std::logic_error("calibration sweep lost monotonicity of the error rates");
    prev_fpr = fpr;
    prev_fnr = fnr;

    const double objective = std::abs(fpr - (beta + alpha * fnr));
    if (objective < best_objective) {
      best_objective = objective;
      best.threshold = t;
      best.fpr_at_t = fpr;
      best.fnr_at_t = fnr;
    }
  }
  return best;
}

bool is_equal(const AttributeValue& a, const AttributeValue& b, const MetricDescriptor& metric,
              const CalibrationResult& cal) {
  if (cal.metric && *cal.metric != metric.metric)
    throw Error(Errc::invalid_argument, std::string("calibration was produced for metric ") + to_string(*cal.metric) +
                                            ", not " + to_string(metric.metric));
  if (cal.field && *cal.field != metric.field)
    throw Error(Errc::invalid_argument, "calibration was produced for field '" + *cal.field + "', not '" +
                                            metric.field + "'");
  const double d = distance(metric, a, b);
  return std::isfinite(d) && d <= cal.threshold;
}

std::string similarity_edge_type(const MetricDescriptor& metric) {
  std::string name = to_string(metric.metric);
  for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return std::string(kSimilarPrefix) + name + "_ON_" + metric.field;
}

SimilarityInference infer_similarity_edges(Store& store, std::span<const EntityId> vertices,
                                           const MetricDescriptor& metric, const CalibrationResult& cal) {
  std::vector<EntityId> ids(vertices.begin(), vertices.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  SimilarityInference out;
  std::vector<const Vertex*> usable;
  for (EntityId id : ids) {
    const auto& v = store.vertex(id);
    if (v.find(metric.field))
      usable.push_back(&v);
    else
      ++out.skipped;
  }

  struct Accepted {
    EntityId a, b;
    double distance;
  };
  std::vector<Accepted> accepted;
  for (std::size_t i = 0; i < usable.size(); ++i)
    for (std::size_t j = i + 1; j < usable.size(); ++j) {
      const auto& va = *usable[i]->find(metric.field);
      const auto& vb = *usable[j]->find(metric.field);
      if (is_equal(va, vb, metric, cal)) accepted.push_back({usable[i]->id, usable[j]->id, distance(metric, va, vb)});
    }

  const std::string type = similarity_edge_type(metric);
  for (const auto& acc : accepted) {
    Attributes attrs{{"distance", acc.distance},
                     {"metric", EnumToken{to_string(metric.metric)}},
                     {"field", metric.field}};
    out.edges.push_back(store.add_edge(type, acc.a, acc.b, attrs));
    out.edges.push_back(store.add_edge(type, acc.b, acc.a, attrs));
  }
  return out;
}

}  // namespace ngf
