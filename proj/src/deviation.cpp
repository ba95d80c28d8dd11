#include "ulln/deviation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulln/errors.hpp"
#include "ulln/rng.hpp"

namespace ulln {

Vector uniform_in_ball(std::size_t p, double radius, std::uint64_t seed) {
  CounterRng rng(seed);
  Vector direction = rng.normal_vector(static_cast<Eigen::Index>(p));
  const double norm = direction.norm();
  if (norm == 0.0) return Vector::Zero(static_cast<Eigen::Index>(p));
  const double scale = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(p));
  return (scale / norm) * direction;
}

DeviationEstimate sup_deviation_search(const Dataset& data, const PopulationRiskModel& population, double radius,
                                       std::size_t starts, std::uint64_t seed, const Vector& theta_star,
                                       const AscentOptions& opts) {
  if (population.dimension() != data.dimension()) {
    throw std::invalid_argument("generative model dimension " + std::to_string(population.dimension()) +
                                " does not match data dimension " + std::to_string(data.dimension()));
  }
  if (radius < 0.0) throw std::invalid_argument("ball radius must be nonnegative");
  const std::size_t p = data.dimension();

  std::vector<Vector> start_points;
  start_points.push_back(Vector::Zero(static_cast<Eigen::Index>(p)));
  if (theta_star.size() == static_cast<Eigen::Index>(p)) {
    start_points.push_back(project_to_ball(theta_star, radius));
    start_points.push_back(project_to_ball(-theta_star, radius));
  }
  const std::uint64_t start_key = derive_seed(seed, "deviation_starts");
  for (std::size_t k = 0; k < starts; ++k) start_points.push_back(uniform_in_ball(p, radius, derive_seed(start_key, k)));

  auto signed_objective = [&](double sign) -> Objective {
    return [&data, &population, sign](const Vector& theta) {
      const Vector s = scores(data, theta);
      const double gap = risk_from_scores(data, s) - population.value(theta);
      Vector grad = gradient_from_scores(data, s) - population.gradient(theta);
      return ObjectiveSample{sign * gap, sign * grad};
    };
  };
  const Objective upper = signed_objective(1.0);
  const Objective lower = signed_objective(-1.0);

  DeviationEstimate best;
  best.method = DeviationMethod::multistart_ascent;
  best.starts = start_points.size();
  best.sup_value = -1.0;
  for (const Vector& start : start_points) {
    for (const Objective* objective : {&upper, &lower}) {
      AscentResult found = projected_ascent(*objective, start, radius, opts);
      if (found.best_value > best.sup_value) {
        best.sup_value = found.best_value;
        best.arg_theta = std::move(found.best_theta);
      }
    }
  }
  const PopulationRiskEstimate at_arg = population.estimate(best.arg_theta);
  best.sup_value = std::abs(empirical_risk(data, best.arg_theta) - at_arg.mean);
  best.pop_risk_stderr = at_arg.std_error;
  return best;
}

DeviationEstimate sup_deviation_search(const Dataset& data, const GenerativeConfig& gen, double radius,
                                       std::size_t starts, std::size_t budget, std::uint64_t seed,
                                       const AscentOptions& opts) {
  if (gen.p != data.dimension()) {
    throw std::invalid_argument("generative config dimension does not match data");
  }
  const PopulationRiskModel population(gen, budget, derive_seed(seed, "population_model"));
  return sup_deviation_search(data, population, radius, starts, seed, resolve_theta_star(gen), opts);
}

DeviationEstimate sup_deviation_grid(const Dataset& data, const GenerativeConfig& gen, double radius,
                                     std::size_t resolution) {
  if (gen.p > 2) throw UnsupportedDimension("grid oracle supports p <= 2, got p = " + std::to_string(gen.p));
  if (gen.p != data.dimension()) throw std::invalid_argument("generative config dimension does not match data");
  if (resolution == 0) throw std::invalid_argument("grid resolution must be positive");
  if (radius < 0.0) throw std::invalid_argument("ball radius must be nonnegative");

  const PopulationRiskModel population(gen, 1, gen.seed);
  std::vector<double> axis(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    axis[k] = resolution == 1 ? 0.0
                              : -radius + 2.0 * radius * static_cast<double>(k) / static_cast<double>(resolution - 1);
  }

  DeviationEstimate best;
  best.method = DeviationMethod::grid;
  best.sup_value = -1.0;
  const std::size_t total = gen.p == 1 ? resolution : resolution * resolution;
  Vector theta(static_cast<Eigen::Index>(gen.p));
  const double limit = radius * (1.0 + 1e-12);
  for (std::size_t k = 0; k < total; ++k) {
    theta[0] = axis[k % resolution];
    if (gen.p == 2) theta[1] = axis[k / resolution];
    if (theta.norm() > limit) continue;
    const double value = std::abs(empirical_risk(data, theta) - population.value(theta));
    if (value > best.sup_value) {
      best.sup_value = value;
      best.arg_theta = theta;
    }
  }
  best.starts = total;
  return best;
}

}  // namespace ulln
