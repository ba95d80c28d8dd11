#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ulln::quad {

/// Nodes and weights of an interpolatory quadrature rule.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Hermite rule for the standard normal law: sum_k w_k f(x_k)
/// approximates E[f(zeta)], zeta ~ N(0,1). Weights sum to one.
/// Rules are cached; the returned reference stays valid for the program's lifetime.
const GaussRule& gauss_hermite(std::size_t nodes);

/// Gauss-Legendre rule on [-1, 1]. Cached like gauss_hermite.
const GaussRule& gauss_legendre(std::size_t nodes);

/// E[f(zeta)] for zeta ~ N(0,1) using an n-node Gauss-Hermite rule.
double normal_expectation(const std::function<double(double)>& f, std::size_t nodes = 128);

/// Integral of f over [a, b] with an n-node Gauss-Legendre rule.
double legendre_integral(const std::function<double(double)>& f, double a, double b,
                         std::size_t nodes = 64);

/// Adaptive Gauss-Kronrod integral of f over [a, b] to relative tolerance tol.
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12);

}  // namespace ulln::quad
