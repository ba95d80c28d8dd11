#include "ulln/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ulln {

namespace {

constexpr std::size_t kPairwiseLeaf = 128;

void require_dimension(const Dataset& data, const Vector& theta) {
  if (static_cast<std::size_t>(theta.size()) != data.dimension()) {
    throw std::invalid_argument("theta has dimension " + std::to_string(theta.size()) +
                                " but data has dimension " + std::to_string(data.dimension()));
  }
}

}  // namespace

Dataset::Dataset(DesignMatrix inputs, std::vector<std::uint8_t> labels)
    : inputs_(std::move(inputs)), labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("dataset needs at least one example");
  if (static_cast<std::size_t>(inputs_.rows()) != labels_.size()) {
    throw std::invalid_argument("inputs have " + std::to_string(inputs_.rows()) + " rows but " +
                                std::to_string(labels_.size()) + " labels were given");
  }
  for (const std::uint8_t y : labels_) {
    if (y > 1) throw std::invalid_argument("labels must be 0 or 1");
  }
  if (!inputs_.allFinite()) throw std::invalid_argument("inputs contain non-finite entries");
}

double sigmoid(double t) noexcept {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double s) noexcept { return std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s))); }

double per_example_loss(std::uint8_t y, double score) noexcept {
  return y == 1 ? softplus(-score) : softplus(score);
}

double soft_label_loss(double q, double score) noexcept { return softplus(score) - q * score; }

double pairwise_dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  if (n <= kPairwiseLeaf) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      s0 += a[i] * b[i];
      s1 += a[i + 1] * b[i + 1];
      s2 += a[i + 2] * b[i + 2];
      s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
  }
  const std::size_t half = n / 2;
  return pairwise_dot(a.first(half), b.first(half)) + pairwise_dot(a.subspan(half), b.subspan(half));
}

Vector scores(const Dataset& data, const Vector& theta) {
  require_dimension(data, theta);
  const std::span<const double> weights(theta.data(), static_cast<std::size_t>(theta.size()));
  Vector out(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = pairwise_dot(data.row(i), weights);
  }
  return out;
}

double risk_from_scores(const Dataset& data, const Vector& scores) {
  // Centered at log 2, the loss at score 0, so theta = 0 yields log 2 exactly.
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += per_example_loss(data.labels()[i], scores[static_cast<Eigen::Index>(i)]) - std::numbers::ln2;
  }
  return std::numbers::ln2 + total / static_cast<double>(data.size());
}

Vector gradient_from_scores(const Dataset& data, const Vector& scores) {
  Vector residual(scores.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    residual[k] = sigmoid(scores[k]) - static_cast<double>(data.labels()[i]);
  }
  return (data.inputs().transpose() * residual) / static_cast<double>(data.size());
}

double empirical_risk(const Dataset& data, const Vector& theta) {
  return risk_from_scores(data, scores(data, theta));
}

RiskAndGradient risk_and_gradient(const Dataset& data, const Vector& theta) {
  const Vector s = scores(data, theta);
  return {risk_from_scores(data, s), gradient_from_scores(data, s)};
}

Vector risk_gradient(const Dataset& data, const Vector& theta) {
  return risk_and_gradient(data, theta).gradient;
}

double risk_laplacian(const Dataset& data, const Vector& theta) {
  const Vector s = scores(data, theta);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double prob = sigmoid(s[static_cast<Eigen::Index>(i)]);
    total += prob * (1.0 - prob) * data.inputs().row(static_cast<Eigen::Index>(i)).squaredNorm();
  }
  return total / static_cast<double>(data.size());
}

}  // namespace ulln
