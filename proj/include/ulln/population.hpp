#pragma once

#include <cstddef>
#include <cstdint>

#include "ulln/datagen.hpp"

namespace ulln {

enum class PopulationMethod { monte_carlo, quadrature };

/// Estimate of the population risk R(theta) = E[R_n(theta)].
struct PopulationRiskEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // zero for quadrature
  std::size_t samples = 0;
  PopulationMethod method = PopulationMethod::quadrature;
};

/// Population risk as a fixed weighted sample with soft labels
/// q_j = sigmoid(beta <x_j, theta*>).
///
/// For p <= 2 the sample is a tensor Gauss-Hermite grid over Z; otherwise it
/// is `budget` Monte Carlo draws of X. The sample is frozen at construction,
/// so value() and gradient() are smooth deterministic functions of theta
/// (common random numbers across evaluations).
class PopulationRiskModel {
 public:
  static constexpr std::size_t kQuadratureNodes = 128;
  static constexpr std::size_t kMaxQuadratureDimension = 2;

  /// Throws std::invalid_argument when budget is zero or the config is invalid.
  PopulationRiskModel(const GenerativeConfig& gen, std::size_t budget, std::uint64_t seed,
                      std::size_t quadrature_nodes = kQuadratureNodes);

  PopulationRiskEstimate estimate(const Vector& theta) const;
  double value(const Vector& theta) const { return estimate(theta).mean; }
  Vector gradient(const Vector& theta) const;

  PopulationMethod method() const noexcept { return method_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  std::size_t points() const noexcept { return static_cast<std::size_t>(points_.rows()); }

 private:
  Vector point_scores(const Vector& theta) const;

  PopulationMethod method_;
  DesignMatrix points_;
  Vector weights_;
  Vector soft_labels_;
};

/// One-shot population risk at theta.
PopulationRiskEstimate population_risk(const GenerativeConfig& gen, const Vector& theta, std::size_t budget,
                                       std::uint64_t seed);

}  // namespace ulln
