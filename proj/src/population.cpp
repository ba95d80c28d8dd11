#include "ulln/population.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ulln/quadrature.hpp"
#include "ulln/rng.hpp"

namespace ulln {

PopulationRiskModel::PopulationRiskModel(const GenerativeConfig& gen, std::size_t budget, std::uint64_t seed,
                                         std::size_t quadrature_nodes) {
  gen.validate();
  if (budget == 0) throw std::invalid_argument("population risk budget must be positive");
  const Vector theta_star = resolve_theta_star(gen);
  const auto p = static_cast<Eigen::Index>(gen.p);

  if (gen.p <= kMaxQuadratureDimension) {
    method_ = PopulationMethod::quadrature;
    const quad::GaussRule& rule = quad::gauss_hermite(quadrature_nodes);
    const auto m = static_cast<Eigen::Index>(rule.size());
    const Eigen::Index total = gen.p == 1 ? m : m * m;
    points_.resize(total, p);
    weights_.resize(total);
    Vector z(p);
    for (Eigen::Index k = 0; k < total; ++k) {
      const Eigen::Index a = k % m;
      z[0] = rule.nodes[static_cast<std::size_t>(a)];
      double w = rule.weights[static_cast<std::size_t>(a)];
      if (gen.p == 2) {
        const Eigen::Index b = k / m;
        z[1] = rule.nodes[static_cast<std::size_t>(b)];
        w *= rule.weights[static_cast<std::size_t>(b)];
      }
      points_.row(k) = gen.cov.transform(z).transpose();
      weights_[k] = w;
    }
  } else {
    method_ = PopulationMethod::monte_carlo;
    const auto total = static_cast<Eigen::Index>(budget);
    points_.resize(total, p);
    weights_ = Vector::Constant(total, 1.0 / static_cast<double>(budget));
    const std::uint64_t key = derive_seed(seed, "population");
    for (Eigen::Index k = 0; k < total; ++k) {
      CounterRng rng(derive_seed(key, static_cast<std::uint64_t>(k)));
      points_.row(k) = gen.cov.transform(rng.normal_vector(p)).transpose();
    }
  }

  soft_labels_.resize(points_.rows());
  const std::span<const double> truth(theta_star.data(), gen.p);
  for (Eigen::Index k = 0; k < points_.rows(); ++k) {
    const double score = pairwise_dot({points_.data() + k * p, gen.p}, truth);
    soft_labels_[k] = sigmoid(gen.beta * score);
  }
}

Vector PopulationRiskModel::point_scores(const Vector& theta) const {
  if (static_cast<std::size_t>(theta.size()) != dimension()) {
    throw std::invalid_argument("theta has dimension " + std::to_string(theta.size()) +
                                " but the generative model has dimension " + std::to_string(dimension()));
  }
  const std::span<const double> weights(theta.data(), dimension());
  Vector s(points_.rows());
  for (Eigen::Index k = 0; k < points_.rows(); ++k) {
    s[k] = pairwise_dot({points_.data() + k * points_.cols(), dimension()}, weights);
  }
  return s;
}

PopulationRiskEstimate PopulationRiskModel::estimate(const Vector& theta) const {
  const Vector s = point_scores(theta);
  PopulationRiskEstimate out;
  out.method = method_;
  out.samples = points();
  // Centered like empirical_risk so that both equal log 2 exactly at theta = 0.
  double centered = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    centered += weights_[k] * (soft_label_loss(soft_labels_[k], s[k]) - std::numbers::ln2);
  }
  const double mean = std::numbers::ln2 + centered;
  out.mean = mean;
  if (method_ == PopulationMethod::monte_carlo && s.size() > 1) {
    double sq = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      const double d = soft_label_loss(soft_labels_[k], s[k]) - mean;
      sq += d * d;
    }
    const auto count = static_cast<double>(s.size());
    out.std_error = std::sqrt(sq / (count - 1.0)) / std::sqrt(count);
  }
  return out;
}

Vector PopulationRiskModel::gradient(const Vector& theta) const {
  const Vector s = point_scores(theta);
  Vector residual(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) residual[k] = weights_[k] * (sigmoid(s[k]) - soft_labels_[k]);
  return points_.transpose() * residual;
}

PopulationRiskEstimate population_risk(const GenerativeConfig& gen, const Vector& theta, std::size_t budget,
                                       std::uint64_t seed) {
  return PopulationRiskModel(gen, budget, seed).estimate(theta);
}

}  // namespace ulln
