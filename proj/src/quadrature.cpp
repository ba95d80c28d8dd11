#include "ulln/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ulln::quad {

namespace {

// Orthonormal probabilists' Hermite values h_0..h_{n} at x, returning
// h_n, h_{n-1} and sum_{k<n} h_k^2.
struct HermiteEval {
  double value;
  double previous;
  double christoffel_sum;
};

HermiteEval orthonormal_hermite(std::size_t n, double x) {
  double prev = 0.0;
  double curr = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += curr * curr;
    const double next =
        (x * curr - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(static_cast<double>(k + 1));
    prev = curr;
    curr = next;
  }
  return {curr, prev, sum};
}

GaussRule build_hermite(std::size_t n) {
  // Golub-Welsch start: eigenvalues of the Jacobi matrix of He_k.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) {
    const double off = std::sqrt(static_cast<double>(k));
    jacobi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = off;
    jacobi(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& guesses = solver.eigenvalues();

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double x = guesses[static_cast<Eigen::Index>(i)];
    for (int iter = 0; iter < 8; ++iter) {
      const HermiteEval h = orthonormal_hermite(n, x);
      const double step = h.value / (sqrt_n * h.previous);
      x -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / orthonormal_hermite(n, x).christoffel_sum;
  }
  // Symmetrize to remove rounding asymmetry.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule build_legendre(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double derivative = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      derivative = dn * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

template <GaussRule (*Build)(std::size_t)>
const GaussRule& cached(std::size_t nodes) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  if (nodes == 0) throw std::invalid_argument("quadrature rule needs at least one node");
  std::lock_guard lock(mutex);
  auto& slot = cache[nodes];
  if (!slot) slot = std::make_unique<GaussRule>(Build(nodes));
  return *slot;
}

}  // namespace

const GaussRule& gauss_hermite(std::size_t nodes) { return cached<build_hermite>(nodes); }

const GaussRule& gauss_legendre(std::size_t nodes) { return cached<build_legendre>(nodes); }

double normal_expectation(const std::function<double(double)>& f, std::size_t nodes) {
  const GaussRule& rule = gauss_hermite(nodes);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * f(rule.nodes[k]);
  return sum;
}

double legendre_integral(const std::function<double(double)>& f, double a, double b,
                         std::size_t nodes) {
  const GaussRule& rule = gauss_legendre(nodes);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
  return half * sum;
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

}  // namespace ulln::quad
