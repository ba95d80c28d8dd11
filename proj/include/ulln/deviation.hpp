#pragma once

#include <cstddef>
#include <cstdint>

#include "ulln/population.hpp"
#include "ulln/solver.hpp"

namespace ulln {

enum class DeviationMethod { multistart_ascent, random_search, grid };

/// Lower estimate of sup_{|theta| <= R} |R_n(theta) - R(theta)|.
struct DeviationEstimate {
  double sup_value = 0.0;
  Vector arg_theta;
  DeviationMethod method = DeviationMethod::multistart_ascent;
  std::size_t starts = 0;
  double pop_risk_stderr = 0.0;
};

/// Multistart projected ascent on +(R_n - R) and -(R_n - R).
///
/// Starts are theta = 0, the projections of +theta* and -theta*, then
/// `starts` points uniform in the ball drawn from a counter stream, so the
/// start set for k starts is a prefix of the set for k' > k.
DeviationEstimate sup_deviation_search(const Dataset& data, const PopulationRiskModel& population, double radius,
                                       std::size_t starts, std::uint64_t seed, const Vector& theta_star,
                                       const AscentOptions& opts = {});

/// Convenience overload building the population model from (gen, budget, seed).
/// Throws std::invalid_argument on dimension mismatch.
DeviationEstimate sup_deviation_search(const Dataset& data, const GenerativeConfig& gen, double radius,
                                       std::size_t starts, std::size_t budget, std::uint64_t seed,
                                       const AscentOptions& opts = {});

/// Brute force over a uniform grid of `resolution` points per axis on
/// [-R, R]^p, keeping only feasible points; population risk by quadrature.
/// Throws UnsupportedDimension when p > 2.
DeviationEstimate sup_deviation_grid(const Dataset& data, const GenerativeConfig& gen, double radius,
                                     std::size_t resolution);

/// Uniform draw from the ball of the given radius.
Vector uniform_in_ball(std::size_t p, double radius, std::uint64_t seed);

}  // namespace ulln
