#include "ngf/equality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "ngf/error.hpp"
#include "ngf/store.hpp"

namespace ngf {

const char* to_string(KernelKind kind) noexcept { return kind == KernelKind::dirac ? "dirac" : "gaussian"; }

KernelKind parse_kernel_kind(const std::string& token) {
  if (token == "dirac") return KernelKind::dirac;
  if (token == "gaussian") return KernelKind::gaussian;
  throw Error(Errc::invalid_argument, "unknown kernel kind '" + token + "'");
}

const char* to_string(EqualityType type) noexcept {
  switch (type) {
    case EqualityType::embodiment: return "embodiment";
    case EqualityType::functional: return "functional";
    case EqualityType::representation: return "representation";
  }
  return "representation";
}

EqualityType parse_equality_type(const std::string& token) {
  if (token == "embodiment") return EqualityType::embodiment;
  if (token == "functional") return EqualityType::functional;
  if (token == "representation") return EqualityType::representation;
  throw Error(Errc::invalid_argument, "unknown equality type '" + token + "'");
}

void ObserverScope::check() const {
  if (field_mask.empty()) throw Error(Errc::invalid_argument, "observer '" + observer_id + "' has an empty field mask");
}

KernelDescriptor KernelDescriptor::dirac(ObserverScope observer, EqualityType equality) {
  return KernelDescriptor{KernelKind::dirac, {}, equality, std::move(observer)};
}

KernelDescriptor KernelDescriptor::gaussian(std::vector<double> sigma, ObserverScope observer,
                                            EqualityType equality) {
  return KernelDescriptor{KernelKind::gaussian, std::move(sigma), equality, std::move(observer)};
}

void KernelDescriptor::check() const {
  for (double s : sigma)
    if (!std::isfinite(s) || s < 0.0) throw Error(Errc::invalid_argument, "kernel sigma must be finite and >= 0");
  observer.check();
}

double KernelDescriptor::sigma_for(std::size_t axis, std::size_t rank) const {
  if (kind == KernelKind::dirac || sigma.empty()) return 0.0;
  if (sigma.size() == 1) return sigma.front();
  if (sigma.size() != rank)
    throw Error(Errc::shape_mismatch, "kernel gives " + std::to_string(sigma.size()) + " sigmas for a rank-" +
                                          std::to_string(rank) + " value");
  return sigma[axis];
}

std::vector<double> gaussian_weights(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) throw Error(Errc::invalid_argument, "sigma must be finite and >= 0");
  if (sigma == 0.0) return {1.0};
  const auto radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double k = static_cast<double>(i) - static_cast<double>(radius);
    w[i] = std::exp(-(k * k) / (2.0 * sigma * sigma));
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

namespace {

// Half-sample symmetric reflection: the signal is extended to period 2n as
// x[0..n-1], x[n-1..0].
std::size_t reflect(std::ptrdiff_t j, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = j % period;
  if (m < 0) m += period;
  return m < static_cast<std::ptrdiff_t>(n) ? static_cast<std::size_t>(m) : static_cast<std::size_t>(period - 1 - m);
}

void smooth_axis(std::vector<double>& data, const std::vector<std::size_t>& shape, std::size_t axis,
                 const std::vector<double>& weights) {
  if (weights.size() == 1) return;
  const std::size_t n = shape[axis];
  std::size_t inner = 1;
  for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t outer = data.size() / (n * inner);
  const auto radius = static_cast<std::ptrdiff_t>(weights.size() / 2);

  std::vector<double> line(n), out(n);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      for (std::size_t s = 0; s < n; ++s) line[s] = data[(o * n + s) * inner + in];
      for (std::size_t s = 0; s < n; ++s) {
        double acc = 0.0;
        for (std::ptrdiff_t k = -radius; k <= radius; ++k)
          acc += weights[static_cast<std::size_t>(k + radius)] * line[reflect(static_cast<std::ptrdiff_t>(s) + k, n)];
        out[s] = acc;
      }
      for (std::size_t s = 0; s < n; ++s) data[(o * n + s) * inner + in] = out[s];
    }
}

// L2 norm with scaling so that tiny nonzero differences never underflow to 0.
double scaled_norm(const std::vector<double>& v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : v) {
    const double r = x / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

std::vector<double> numeric_view(const AttributeValue& v, std::vector<std::size_t>& shape) {
  switch (v.kind()) {
    case ValueKind::scalar:
      shape = {1};
      return {v.as<double>()};
    case ValueKind::histogram:
      shape = {v.as<Histogram>().counts.size()};
      return v.as<Histogram>().counts;
    case ValueKind::tensor:
      shape = v.as<Tensor>().shape;
      return v.as<Tensor>().data;
    default:
      return {};
  }
}

double field_discrepancy(const AttributeValue& a, const AttributeValue& b, const KernelDescriptor& kernel,
                         const std::string& key) {
  if (a.kind() != b.kind())
    throw Error(Errc::kind_mismatch, "field '" + key + "' holds " + to_string(a.kind()) + " and " + to_string(b.kind()));
  std::vector<std::size_t> sa, sb;
  auto va = numeric_view(a, sa);
  auto vb = numeric_view(b, sb);
  if (sa.empty()) return a == b ? 0.0 : 1.0;  // non-numeric kinds compare exactly
  if (sa != sb) throw Error(Errc::shape_mismatch, "field '" + key + "' differs in shape");

  const Tensor ta = smooth(Tensor(sa, std::move(va)), kernel);
  const Tensor tb = smooth(Tensor(sb, std::move(vb)), kernel);
  std::vector<double> diff(ta.data.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ta.data[i] - tb.data[i];
  const double floor = std::numeric_limits<double>::min();
  return scaled_norm(diff) / (scaled_norm(ta.data) + scaled_norm(tb.data) + floor);
}

EqualityJudgement compare_masked(const Vertex& a, const Vertex& b, const KernelDescriptor& kernel,
                                 const std::set<std::string>& mask, double epsilon) {
  kernel.check();
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw Error(Errc::invalid_argument, "epsilon must be finite and >= 0");
  if (mask.empty()) throw Error(Errc::invalid_argument, "observer mask is empty");

  double worst = 0.0;
  for (const auto& key : mask) {
    const auto* fa = a.find(key);
    const auto* fb = b.find(key);
    if (!fa || !fb)
      throw Error(Errc::not_found, "masked field '" + key + "' absent on vertex " + (fa ? b.id : a.id).to_string());
    worst = std::max(worst, field_discrepancy(*fa, *fb, kernel, key));
  }
  EqualityJudgement j;
  j.score = std::clamp(1.0 - worst, 0.0, 1.0);
  j.verdict = worst <= epsilon;
  j.kernel = kernel;
  j.epsilon = epsilon;
  return j;
}

}  // namespace

Tensor smooth(const Tensor& value, const KernelDescriptor& kernel) {
  if (!value.consistent()) throw Error(Errc::shape_mismatch, "tensor payload length != shape product");
  Tensor out = value;
  if (out.data.empty()) return out;
  for (std::size_t axis = 0; axis < out.shape.size(); ++axis)
    smooth_axis(out.data, out.shape, axis, gaussian_weights(kernel.sigma_for(axis, out.shape.size())));
  return out;
}

EqualityJudgement kernel_compare(const Vertex& a, const Vertex& b, const KernelDescriptor& kernel, double epsilon) {
  auto j = compare_masked(a, b, kernel, kernel.observer.field_mask, epsilon);
  j.observers = {kernel.observer.observer_id};
  return j;
}

EqualityJudgement kernel_compare_cross_observer(const Vertex& a, const Vertex& b, const KernelDescriptor& kernel,
                                                const ObserverScope& observer_x, const ObserverScope& observer_y,
                                                double epsilon) {
  observer_x.check();
  observer_y.check();
  if (observer_x.field_mask != observer_y.field_mask)
    throw Error(Errc::precondition, "observers '" + observer_x.observer_id + "' and '" + observer_y.observer_id +
                                        "' do not share the same accessible fields (functional overlap unmet)");
  auto j = compare_masked(a, b, kernel, observer_x.field_mask, epsilon);
  j.observers = {observer_x.observer_id, observer_y.observer_id};
  return j;
}

std::string equality_edge_type(EqualityType type) { return std::string("EQUALS_") + to_string(type); }

EntityId annotate_equality_edge(Store& store, EntityId a, EntityId b, const EqualityJudgement& judgement) {
  if (!judgement.verdict) throw Error(Errc::precondition, "cannot annotate a negative equality judgement");
  std::string sigma;
  for (double s : judgement.kernel.sigma) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, s);
    (void)ec;
    if (!sigma.empty()) sigma += ",";
    sigma.append(buf, end);
  }
  Attributes attrs{{"score", judgement.score},
                   {"epsilon", judgement.epsilon},
                   {"kernel", EnumToken{to_string(judgement.kernel.kind)}},
                   {"sigma", sigma}};
  if (!judgement.observers.empty()) attrs.emplace("observer", judgement.observers[0]);
  if (judgement.observers.size() > 1) attrs.emplace("observer_y", judgement.observers[1]);
  return store.add_edge(equality_edge_type(judgement.kernel.equality), a, b, std::move(attrs));
}

}  // namespace ngf
