#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "ulln/model.hpp"

namespace ulln {

struct SolverOptions {
  std::size_t max_iters = 20000;
  double grad_map_tol = 1e-8;
  /// Empty means 4n / |X|_F^2, the inverse of a global Lipschitz bound of the gradient.
  std::optional<double> initial_step;
  double backtrack_factor = 0.5;
  double armijo_const = 1e-4;

  /// Throws std::invalid_argument when a field is outside its range.
  void validate() const;
};

struct FitResult {
  Vector theta_hat;
  double risk = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool on_boundary = false;  // |theta_hat| >= R - 1e-8
  double grad_map_norm = 0.0;
};

/// Euclidean projection onto the ball {|theta| <= radius}.
Vector project_to_ball(const Vector& v, double radius);

/// Minimizes the empirical risk over the ball of the given radius by projected
/// gradient descent with Armijo backtracking along the projection arc. A step
/// also passes when <grad(c) - grad(theta), c - theta> <= |c - theta|^2 / (2s),
/// which by convexity gives the same decrease without differencing risks.
///
/// Stops when |theta - P(theta - s0 grad)| / s0 <= grad_map_tol at the initial
/// step s0; otherwise reports converged = false after max_iters. Accepted
/// iterates never increase the objective beyond rounding.
FitResult fit_constrained(const Dataset& data, double radius, const SolverOptions& opts = {});

/// Value and gradient of an objective at one point.
struct ObjectiveSample {
  double value;
  Vector gradient;
};
using Objective = std::function<ObjectiveSample(const Vector&)>;

struct AscentOptions {
  std::size_t iterations = 150;
  /// Step k moves step_scale * radius / sqrt(k) along the normalized gradient.
  double step_scale = 0.1;
};

struct AscentResult {
  double best_value;
  Vector best_theta;
};

/// Projected gradient ascent on the ball with a decaying step, tracking the
/// best iterate seen. No convergence certificate: the result is a lower bound
/// on the maximum.
AscentResult projected_ascent(const Objective& objective, const Vector& start, double radius,
                              const AscentOptions& opts = {});

}  // namespace ulln
