#include "ulln/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ulln {

void SolverOptions::validate() const {
  if (max_iters == 0) throw std::invalid_argument("max_iters must be positive");
  if (!(grad_map_tol > 0.0)) throw std::invalid_argument("grad_map_tol must be positive");
  if (initial_step && !(*initial_step > 0.0)) throw std::invalid_argument("initial_step must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw std::invalid_argument("backtrack_factor must lie in (0, 1)");
  }
  if (!(armijo_const > 0.0 && armijo_const < 1.0)) throw std::invalid_argument("armijo_const must lie in (0, 1)");
}

Vector project_to_ball(const Vector& v, double radius) {
  if (radius < 0.0) throw std::invalid_argument("ball radius must be nonnegative");
  const double norm = v.norm();
  if (norm <= radius) return v;
  return (radius / norm) * v;
}

FitResult fit_constrained(const Dataset& data, double radius, const SolverOptions& opts) {
  opts.validate();
  if (radius < 0.0) throw std::invalid_argument("ball radius must be nonnegative");

  const auto p = static_cast<Eigen::Index>(data.dimension());
  FitResult result;
  result.theta_hat = Vector::Zero(p);

  if (radius == 0.0) {
    result.risk = empirical_risk(data, result.theta_hat);
    result.converged = true;
    result.on_boundary = true;
    return result;
  }

  double step = 1.0;
  if (opts.initial_step) {
    step = *opts.initial_step;
  } else {
    const double frob2 = data.inputs().squaredNorm();
    if (frob2 > 0.0) step = 4.0 * static_cast<double>(data.size()) / frob2;
  }
  const double base_step = step;
  const double max_step = step * 1e8;

  Vector theta = result.theta_hat;
  Vector current_scores = scores(data, theta);
  double risk = risk_from_scores(data, current_scores);
  Vector gradient = gradient_from_scores(data, current_scores);

  std::size_t iter = 0;
  double grad_map = std::numeric_limits<double>::infinity();
  for (; iter < opts.max_iters; ++iter) {
    grad_map = (theta - project_to_ball(theta - base_step * gradient, radius)).norm() / base_step;
    if (grad_map <= opts.grad_map_tol) {
      result.converged = true;
      break;
    }
    // Let the step grow back after earlier backtracking.
    step = std::min(step / opts.backtrack_factor, max_step);

    Vector candidate;
    Vector candidate_scores;
    Vector candidate_gradient;
    double candidate_risk = 0.0;
    bool accepted = false;
    while (step > 1e-20) {
      candidate = project_to_ball(theta - step * gradient, radius);
      const Vector move = candidate - theta;
      candidate_scores = scores(data, candidate);
      candidate_risk = risk_from_scores(data, candidate_scores);
      candidate_gradient = gradient_from_scores(data, candidate_scores);
      const double decrease = gradient.dot(move);
      // The second test certifies f(c) <= f(theta) - |move|^2 / (2 step) through the
      // gradient change, which stays accurate once risk differences reach rounding level.
      if (candidate_risk <= risk + opts.armijo_const * decrease ||
          (candidate_gradient - gradient).dot(move) <= move.squaredNorm() / (2.0 * step)) {
        accepted = true;
        break;
      }
      step *= opts.backtrack_factor;
    }

    if (!accepted) break;

    theta = std::move(candidate);
    current_scores = std::move(candidate_scores);
    risk = candidate_risk;
    gradient = std::move(candidate_gradient);
  }

  result.theta_hat = std::move(theta);
  result.risk = risk;
  result.iterations = iter;
  result.grad_map_norm = grad_map;
  result.on_boundary = result.theta_hat.norm() >= radius - 1e-8;
  return result;
}

AscentResult projected_ascent(const Objective& objective, const Vector& start, double radius,
                              const AscentOptions& opts) {
  Vector theta = project_to_ball(start, radius);
  ObjectiveSample sample = objective(theta);
  AscentResult best{sample.value, theta};
  for (std::size_t k = 1; k <= opts.iterations; ++k) {
    const double norm = sample.gradient.norm();
    if (!(norm > 0.0) || radius == 0.0) break;
    const double step = opts.step_scale * radius / std::sqrt(static_cast<double>(k));
    theta = project_to_ball(theta + (step / norm) * sample.gradient, radius);
    sample = objective(theta);
    if (sample.value > best.best_value) {
      best.best_value = sample.value;
      best.best_theta = theta;
    }
  }
  return best;
}

}  // namespace ulln
