#include "ngf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ngf/error.hpp"

namespace ngf {

const char* to_string(MetricId id) noexcept {
  switch (id) {
    case MetricId::bhattacharyya: return "bhattacharyya";
    case MetricId::euclidean: return "euclidean";
    case MetricId::cosine_distance: return "cosine_distance";
    case MetricId::levenshtein: return "levenshtein";
    case MetricId::dtw: return "dtw";
  }
  return "unknown";
}

MetricId parse_metric_id(const std::string& token) {
  static const std::map<std::string, MetricId> ids = {
      {"bhattacharyya", MetricId::bhattacharyya}, {"euclidean", MetricId::euclidean},
      {"cosine_distance", MetricId::cosine_distance}, {"levenshtein", MetricId::levenshtein},
      {"dtw", MetricId::dtw},
  };
  auto it = ids.find(token);
  if (it == ids.end()) throw Error(Errc::invalid_argument, "unknown metric '" + token + "'");
  return it->second;
}

namespace {

std::optional<std::size_t> temporal_axis_of(const ValueDictionary& dict) {
  std::optional<std::size_t> axis;
  for (std::size_t i = 0; i < dict.axes.size(); ++i) {
    if (dict.axes[i] != AxisRole::temporal) continue;
    if (axis) return std::nullopt;  // more than one temporal axis
    axis = i;
  }
  return axis;
}

}  // namespace

bool admissible(MetricId metric, const ValueDictionary& dict) {
  switch (metric) {
    case MetricId::bhattacharyya:
      return dict.kind == ValueKind::histogram;
    case MetricId::euclidean:
      return dict.kind == ValueKind::tensor || dict.kind == ValueKind::scalar ||
             dict.kind == ValueKind::vector_clock;
    case MetricId::cosine_distance:
      return dict.kind == ValueKind::tensor;
    case MetricId::levenshtein:
      return dict.kind == ValueKind::string || dict.kind == ValueKind::enumeration;
    case MetricId::dtw:
      return dict.kind == ValueKind::tensor && temporal_axis_of(dict).has_value();
  }
  return false;
}

MetricDescriptor bind_metric(MetricDescriptor metric, const ValueDictionary& dict) {
  if (!admissible(metric.metric, dict))
    throw Error(Errc::no_admissible_metric, std::string(to_string(metric.metric)) + " is not admissible for " +
                                                to_string(dict.kind) + " field '" + metric.field + "'");
  if (metric.metric == MetricId::dtw) {
    metric.params["temporal_axis"] = static_cast<double>(*temporal_axis_of(dict));
    if (auto it = metric.params.find("window"); it != metric.params.end() && !(it->second >= 0.0))
      throw Error(Errc::invalid_argument, "dtw window must be >= 0");
  }
  return metric;
}

double bhattacharyya_coefficient(const Histogram& p, const Histogram& q) {
  if (p.counts.size() != q.counts.size())
    throw Error(Errc::shape_mismatch, "histogram bin counts differ (" + std::to_string(p.counts.size()) + " vs " +
                                          std::to_string(q.counts.size()) + ")");
  if (p.counts.empty()) throw Error(Errc::invalid_argument, "histogram has no bins");
  const Histogram pn = p.normalized ? p : p.normalized_copy();
  const Histogram qn = q.normalized ? q : q.normalized_copy();
  if (!(pn.mass() > 0.0) || !(qn.mass() > 0.0)) throw Error(Errc::invalid_argument, "histogram has zero mass");

  double bc = 0.0;
  for (std::size_t i = 0; i < pn.counts.size(); ++i) bc += std::sqrt(pn.counts[i] * qn.counts[i]);
  return std::clamp(bc, 0.0, 1.0);
}

double bhattacharyya_distance(const Histogram& p, const Histogram& q) {
  const double bc = bhattacharyya_coefficient(p, q);
  if (bc == 0.0) return kInfiniteDistance;
  if (bc >= 1.0) return 0.0;
  return -std::log(bc);
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(Errc::shape_mismatch, "euclidean: operand lengths differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(Errc::shape_mismatch, "cosine: operand lengths differ");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(Errc::invalid_argument, "cosine distance of a zero vector");
  const double sim = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(1.0 - sim, 0.0, 2.0);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

// Slices of `t` along `axis`, each flattened in row-major order of the
// remaining axes.
std::vector<std::vector<double>> slices_along(const Tensor& t, std::size_t axis) {
  if (axis >= t.shape.size()) throw Error(Errc::invalid_argument, "dtw temporal axis out of range");
  if (!t.consistent()) throw Error(Errc::shape_mismatch, "tensor payload length != shape product");
  const std::size_t len = t.shape[axis];
  std::size_t inner = 1;
  for (std::size_t i = axis + 1; i < t.shape.size(); ++i) inner *= t.shape[i];
  std::size_t outer = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= t.shape[i];

  std::vector<std::vector<double>> out(len, std::vector<double>(outer * inner));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t s = 0; s < len; ++s)
      for (std::size_t in = 0; in < inner; ++in) out[s][o * inner + in] = t.data[(o * len + s) * inner + in];
  return out;
}

}  // namespace

double dtw(const Tensor& a, const Tensor& b, std::size_t temporal_axis, std::optional<std::size_t> window) {
  if (a.data.empty() || b.data.empty()) throw Error(Errc::invalid_argument, "dtw of an empty sequence");
  if (a.shape.size() != b.shape.size()) throw Error(Errc::shape_mismatch, "dtw operands differ in rank");
  for (std::size_t i = 0; i < a.shape.size(); ++i)
    if (i != temporal_axis && a.shape[i] != b.shape[i])
      throw Error(Errc::shape_mismatch, "dtw operands differ outside the temporal axis");

  const auto sa = slices_along(a, temporal_axis);
  const auto sb = slices_along(b, temporal_axis);
  const std::size_t n = sa.size(), m = sb.size();
  const std::size_t gap = n > m ? n - m : m - n;
  const std::size_t band = window ? std::max(*window, gap) : std::max(n, m);

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost((n + 1) * (m + 1), inf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return cost[i * (m + 1) + j]; };
  at(0, 0) = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > band ? i - band : 1;
    const std::size_t hi = std::min(m, i + band);
    for (std::size_t j = lo; j <= hi; ++j) {
      const double local = euclidean(sa[i - 1], sb[j - 1]);
      at(i, j) = local + std::min({at(i - 1, j), at(i, j - 1), at(i - 1, j - 1)});
    }
  }
  return at(n, m);
}

namespace {

void require_kind(const AttributeValue& v, std::initializer_list<ValueKind> kinds, MetricId metric) {
  for (auto k : kinds)
    if (v.kind() == k) return;
  throw Error(Errc::kind_mismatch, std::string(to_string(metric)) + " cannot compare " + to_string(v.kind()) + " values");
}

double clock_euclidean(const VectorClock& a, const VectorClock& b) {
  std::set<std::string> processes;
  for (const auto& [p, _] : a.entries) processes.insert(p);
  for (const auto& [p, _] : b.entries) processes.insert(p);
  double sum = 0.0;
  for (const auto& p : processes) {
    const double d = static_cast<double>(a.at(p)) - static_cast<double>(b.at(p));
    sum += d * d;
  }
  return std::sqrt(sum);
}

const std::string& text_of(const AttributeValue& v) {
  return v.holds<std::string>() ? v.as<std::string>() : v.as<EnumToken>().token;
}

}  // namespace

double distance(const MetricDescriptor& metric, const AttributeValue& a, const AttributeValue& b) {
  if (a.kind() != b.kind())
    throw Error(Errc::kind_mismatch, std::string("cannot compare ") + to_string(a.kind()) + " with " + to_string(b.kind()));

  switch (metric.metric) {
    case MetricId::bhattacharyya:
      require_kind(a, {ValueKind::histogram}, metric.metric);
      return bhattacharyya_distance(a.as<Histogram>(), b.as<Histogram>());

    case MetricId::euclidean:
      require_kind(a, {ValueKind::tensor, ValueKind::scalar, ValueKind::vector_clock}, metric.metric);
      if (a.holds<double>()) return std::abs(a.as<double>() - b.as<double>());
      if (a.holds<VectorClock>()) return clock_euclidean(a.as<VectorClock>(), b.as<VectorClock>());
      if (a.as<Tensor>().shape != b.as<Tensor>().shape) throw Error(Errc::shape_mismatch, "euclidean: tensor shapes differ");
      return euclidean(a.as<Tensor>().data, b.as<Tensor>().data);

    case MetricId::cosine_distance:
      require_kind(a, {ValueKind::tensor}, metric.metric);
      if (a.as<Tensor>().shape != b.as<Tensor>().shape) throw Error(Errc::shape_mismatch, "cosine: tensor shapes differ");
      return cosine_distance(a.as<Tensor>().data, b.as<Tensor>().data);

    case MetricId::levenshtein:
      require_kind(a, {ValueKind::string, ValueKind::enumeration}, metric.metric);
      return static_cast<double>(levenshtein(text_of(a), text_of(b)));

    case MetricId::dtw: {
      require_kind(a, {ValueKind::tensor}, metric.metric);
      std::size_t axis = 0;
      if (auto it = metric.params.find("temporal_axis"); it != metric.params.end())
        axis = static_cast<std::size_t>(it->second);
      std::optional<std::size_t> window;
      if (auto it = metric.params.find("window"); it != metric.params.end())
        window = static_cast<std::size_t>(it->second);
      return dtw(a.as<Tensor>(), b.as<Tensor>(), axis, window);
    }
  }
  throw Error(Errc::invalid_argument, "unknown metric");
}

}  // namespace ngf
