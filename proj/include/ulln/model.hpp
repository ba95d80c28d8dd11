#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ulln {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// Design matrices are row-major so each example X_i is contiguous.
using DesignMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n labelled examples (X_i, Y_i) with X_i in R^p and Y_i in {0, 1}.
class Dataset {
 public:
  /// Throws std::invalid_argument unless n >= 1, labels are 0/1, sizes agree
  /// and every input entry is finite.
  Dataset(DesignMatrix inputs, std::vector<std::uint8_t> labels);

  const DesignMatrix& inputs() const noexcept { return inputs_; }
  const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(inputs_.cols()); }

  std::span<const double> row(std::size_t i) const noexcept {
    return {inputs_.data() + i * dimension(), dimension()};
  }

 private:
  DesignMatrix inputs_;
  std::vector<std::uint8_t> labels_;
};

/// Logistic link 1/(1+exp(-t)), evaluated without overflow.
double sigmoid(double t) noexcept;

/// log(1 + exp(s)) as max(s, 0) + log1p(exp(-|s|)).
double softplus(double s) noexcept;

/// Cross-entropy of label y against probability sigmoid(score).
double per_example_loss(std::uint8_t y, double score) noexcept;

/// Expected loss when the label is Bernoulli(q): softplus(s) - q s.
double soft_label_loss(double q, double score) noexcept;

/// Dot product accumulated by pairwise (cascade) summation.
double pairwise_dot(std::span<const double> a, std::span<const double> b) noexcept;

/// Scores <X_i, theta> for every row.
Vector scores(const Dataset& data, const Vector& theta);

/// Empirical logistic risk R_n(theta) (nats).
double empirical_risk(const Dataset& data, const Vector& theta);

/// (1/n) sum_i (sigmoid(<X_i,theta>) - Y_i) X_i.
Vector risk_gradient(const Dataset& data, const Vector& theta);

/// (1/n) sum_i sigmoid'(<X_i,theta>) |X_i|^2, the trace of the Hessian.
double risk_laplacian(const Dataset& data, const Vector& theta);

/// Mean loss given precomputed scores.
double risk_from_scores(const Dataset& data, const Vector& scores);

/// Gradient given precomputed scores.
Vector gradient_from_scores(const Dataset& data, const Vector& scores);

/// Risk and gradient from a single pass over the scores.
struct RiskAndGradient {
  double risk;
  Vector gradient;
};
RiskAndGradient risk_and_gradient(const Dataset& data, const Vector& theta);

}  // namespace ulln
