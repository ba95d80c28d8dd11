#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ulln/model.hpp"
#include "ulln/rng.hpp"

namespace ulln::testing {

inline Dataset random_dataset(std::size_t n, std::size_t p, std::uint64_t seed, double scale = 1.0) {
  CounterRng rng(seed);
  DesignMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  std::vector<std::uint8_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = scale * rng.normal();
    y[i] = rng.uniform() < 0.5 ? 1 : 0;
  }
  return Dataset(std::move(x), std::move(y));
}

inline Dataset make_dataset(std::initializer_list<std::initializer_list<double>> rows,
                            std::initializer_list<int> labels) {
  DesignMatrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) x(i, j++) = v;
    ++i;
  }
  std::vector<std::uint8_t> y;
  for (int label : labels) y.push_back(static_cast<std::uint8_t>(label));
  return Dataset(std::move(x), std::move(y));
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index j = 0;
  for (double x : values) v[j++] = x;
  return v;
}

/// Minimum of the empirical risk over the ball for p <= 2 by exhaustive
/// search in polar coordinates (p = 2) or on a segment (p = 1), refined by
/// repeated zooming around the incumbent.
inline double brute_force_min_risk(const Dataset& data, double radius) {
  const auto p = data.dimension();
  auto risk_at = [&](double a, double b) {
    Vector theta(static_cast<Eigen::Index>(p));
    theta[0] = a;
    if (p == 2) theta[1] = b;
    return empirical_risk(data, theta);
  };
  if (p == 1) {
    double lo = -radius;
    double hi = radius;
    double best = risk_at(0.0, 0.0);
    double arg = 0.0;
    for (int round = 0; round < 8; ++round) {
      for (int k = 0; k <= 400; ++k) {
        const double a = lo + (hi - lo) * k / 400.0;
        const double r = risk_at(a, 0.0);
        if (r < best) {
          best = r;
          arg = a;
        }
      }
      const double width = (hi - lo) / 100.0;
      lo = std::max(-radius, arg - width);
      hi = std::min(radius, arg + width);
    }
    return best;
  }
  // p == 2: radius rho in [0, R], angle phi in [0, 2 pi).
  double rho_lo = 0.0, rho_hi = radius, phi_lo = 0.0, phi_hi = 2.0 * M_PI;
  double best = risk_at(0.0, 0.0);
  double best_rho = 0.0, best_phi = 0.0;
  for (int round = 0; round < 8; ++round) {
    for (int i = 0; i <= 120; ++i) {
      const double rho = rho_lo + (rho_hi - rho_lo) * i / 120.0;
      for (int j = 0; j <= 120; ++j) {
        const double phi = phi_lo + (phi_hi - phi_lo) * j / 120.0;
        const double r = risk_at(rho * std::cos(phi), rho * std::sin(phi));
        if (r < best) {
          best = r;
          best_rho = rho;
          best_phi = phi;
        }
      }
    }
    const double drho = (rho_hi - rho_lo) / 30.0;
    const double dphi = (phi_hi - phi_lo) / 30.0;
    rho_lo = std::max(0.0, best_rho - drho);
    rho_hi = std::min(radius, best_rho + drho);
    phi_lo = best_phi - dphi;
    phi_hi = best_phi + dphi;
  }
  return best;
}

}  // namespace ulln::testing
