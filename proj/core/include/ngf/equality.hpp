#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ngf/attribute.hpp"
#include "ngf/entity_id.hpp"

namespace ngf {

class Store;
struct Vertex;

enum class KernelKind : std::uint8_t { dirac, gaussian };
const char* to_string(KernelKind kind) noexcept;
KernelKind parse_kernel_kind(const std::string& token);

/// Which notion of sameness a comparison asserts. Only affects edge typing.
enum class EqualityType : std::uint8_t { embodiment, functional, representation };
const char* to_string(EqualityType type) noexcept;
EqualityType parse_equality_type(const std::string& token);

/// The attribute keys one observer can see.
struct ObserverScope {
  std::string observer_id;
  std::set<std::string> field_mask;
  /// Conditions the observer must meet (lighting, calibration visits, ...).
  /// Free text; nothing checks it.
  std::string prerequisites;

  void check() const;
  bool operator==(const ObserverScope&) const = default;
};

/// Smoothing kernel applied before comparison. A Gaussian with sigma 0 is the
/// Dirac kernel. `sigma` holds one value broadcast over all axes, or one
/// value per tensor axis.
struct KernelDescriptor {
  KernelKind kind = KernelKind::dirac;
  std::vector<double> sigma;
  EqualityType equality = EqualityType::representation;
  ObserverScope observer;

  static KernelDescriptor dirac(ObserverScope observer, EqualityType equality = EqualityType::representation);
  static KernelDescriptor gaussian(std::vector<double> sigma, ObserverScope observer,
                                   EqualityType equality = EqualityType::representation);

  void check() const;
  /// Sigma to use along `axis` of a tensor of rank `rank`; 0 for dirac.
  double sigma_for(std::size_t axis, std::size_t rank) const;
  bool operator==(const KernelDescriptor&) const = default;
};

struct EqualityJudgement {
  bool verdict = false;
  double score = 0.0;
  KernelDescriptor kernel;
  double epsilon = 0.0;
  std::vector<std::string> observers;  // one id, or two for cross-observer judgements
};

/// Discretized Gaussian on integer offsets -r..r with r = ceil(3 sigma),
/// renormalized to unit mass. sigma = 0 gives the single weight {1}.
std::vector<double> gaussian_weights(double sigma);

/// Separable convolution along every axis with half-sample symmetric
/// reflection at the boundaries. Total mass is preserved.
Tensor smooth(const Tensor& value, const KernelDescriptor& kernel);

/// Compares the masked fields of `a` and `b` after smoothing. Each field
/// contributes delta = |a~ - b~| / (|a~| + |b~| + floor) (L2 norms); the
/// score is 1 - max delta and the verdict is max delta <= epsilon.
EqualityJudgement kernel_compare(const Vertex& a, const Vertex& b, const KernelDescriptor& kernel, double epsilon);

/// Reads `a` through `observer_x` and `b` through `observer_y` with a shared
/// kernel. The two masks must be the same set.
EqualityJudgement kernel_compare_cross_observer(const Vertex& a, const Vertex& b, const KernelDescriptor& kernel,
                                                const ObserverScope& observer_x, const ObserverScope& observer_y,
                                                double epsilon);

/// EQUALS_<type>, e.g. EQUALS_representation.
std::string equality_edge_type(EqualityType type);

/// Materializes a positive judgement as an EQUALS_<type> edge a -> b.
EntityId annotate_equality_edge(Store& store, EntityId a, EntityId b, const EqualityJudgement& judgement);

}  // namespace ngf
