#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ulln/bounds.hpp"
#include "ulln/datagen.hpp"
#include "ulln/solver.hpp"

namespace ulln {

/// The law N(center, time * I), a Brownian motion at `time` started at `center`.
struct GaussianSmoothing {
  Vector center;
  double time = 1.0;

  /// Throws std::domain_error unless time > 0.
  void validate() const;
};

struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Fixed catalog of smooth test functions.
enum class CatalogFunction {
  constant,         // 1
  square,           // x^2
  cube,             // x^3
  quartic,          // x^4
  sigmoid,          // sigma(x)
  sigmoid_slope,    // sigma(x)(1 - sigma(x))
  shifted_sigmoid,  // sigma(0.3 + x)
  scaled_sigmoid,   // sigma(1.7 x)
};

const std::vector<CatalogFunction>& catalog_functions();
std::string_view to_string(CatalogFunction f);
/// Throws std::invalid_argument on an unknown name.
CatalogFunction parse_catalog_function(std::string_view name);
/// f^(k)(x) for k in {0, 1, 2}.
double catalog_value(CatalogFunction f, double x, int derivative = 0);

enum class HermiteOrder { first, second };

/// E[f^(k)(zeta) H_d(zeta)] against E[f(zeta) H_{d+k}(zeta)] with k = 1 or 2.
/// Throws std::invalid_argument unless d is in {0,1,2} (first) or {0,1} (second).
CheckReport hermite_identity_residual(CatalogFunction f, int d, HermiteOrder order, std::size_t nodes = 128);

/// int_0^t s^{-1} E[f(sqrt(s) zeta)(zeta^2 - 1)] ds against 2(E[f(sqrt(t) zeta)] - f(0)).
/// The left side is integrated in r after s = exp(-2r). Throws std::domain_error unless 0 < t <= 1.
CheckReport smoothing_identity_residual(CatalogFunction f, double t);

/// Function whose heat-flow expansion is checked.
enum class ItoPayload { logistic_loss, squared_norm };

/// E f(W_t) = f(theta) + (1/2) int_0^t E Laplacian f(W_s) ds for W_s ~ N(theta, s I).
/// mc_samples = 0 evaluates the left side by Gauss-Hermite quadrature (tolerance 1e-6);
/// otherwise by Monte Carlo with a 3-standard-error tolerance.
/// Throws UnsupportedDimension when p > 3 and std::invalid_argument unless the data has one row.
CheckReport ito_expansion_residual(const Dataset& data, const GaussianSmoothing& smoothing, std::size_t mc_samples,
                                   std::uint64_t seed, ItoPayload payload = ItoPayload::logistic_loss);

/// KL(N(theta, tI) || N(0, tI)) from the general Gaussian formula against |theta|^2 / (2t).
/// Throws std::domain_error unless t > 0.
CheckReport kl_gaussian_shift(const Vector& theta, double t);

/// Monte Carlo E[eta^2(W_t)] against (144/e)(1 + (1 + sqrt3 K)^2 (t tr Sigma + |Sigma| R^2)),
/// eta^2(w) = (72/e)(log 2 + (1 + sqrt3 K)|Lambda^{1/2} U^T w|)^2. Passes when the
/// estimate plus three standard errors stays below the bound.
/// Throws std::invalid_argument on a dimension mismatch or |theta| > R.
CheckReport eta_moment_check(const BoundParams& params, const GaussianSmoothing& smoothing, const CovarianceSpec& cov,
                             std::size_t mc_samples, std::uint64_t seed);

/// Monte Carlo E|Lambda^{1/2} U^T W_t|^2 against t tr Sigma + <Sigma theta, theta>, within 3 standard errors.
CheckReport eta_second_moment_check(const GaussianSmoothing& smoothing, const CovarianceSpec& cov,
                                    std::size_t mc_samples, std::uint64_t seed);

/// E|zeta^3 - 3 zeta| by piecewise Gauss-Legendre quadrature against (1 + 4 e^{-3/2}) sqrt(2/pi).
CheckReport hermite3_abs_moment(std::size_t nodes = 64);
/// E|zeta^3 - 3 zeta| against 2 sqrt(2/pi); passes with a margin above 0.08.
CheckReport hermite3_strict_bound(std::size_t nodes = 64);

/// G_t^theta(z) for the rows z_i of an n x p matrix: the s-integral by adaptive
/// quadrature over 1-D Gauss-Hermite expectations, the expectation over Z by
/// `ref_samples` standard Gaussian draws. Throws std::domain_error unless 0 < t <= 1.
double g_functional(const Matrix& z, const Vector& theta, double t, const CovarianceSpec& cov,
                    std::size_t ref_samples, std::uint64_t seed);

/// G_t^theta(z) as a smooth function of theta, using
/// lambda^2 int_0^t E sigma'(m + sqrt(s) lambda zeta) ds = 2(E softplus(m + sqrt(t) lambda zeta) - softplus(m))
/// and the same reference draws as g_functional for the same seed.
class LaplacianGap {
 public:
  LaplacianGap(const Matrix& z, double t, const CovarianceSpec& cov, std::size_t ref_samples, std::uint64_t seed,
               std::size_t nodes = 48);

  ObjectiveSample evaluate(const Vector& theta) const;

 private:
  double t_;
  std::size_t nodes_;
  Matrix sample_directions_;     // rows U Lambda^{1/2} z_i
  Vector sample_scales_;         // <Lambda z_i, z_i>
  Matrix reference_directions_;  // same for the reference draws
  Vector reference_scales_;
};

struct ExpsupOptions {
  std::size_t ref_samples = 1000;
  std::size_t starts = 2;
  AscentOptions ascent{60, 0.1};
};

/// Replicated estimate of E sup_{|theta| <= R} (+/-) G_t^theta(Z) against 2R sqrt(tr Sigma / n).
/// Reports the larger of the two signs; passes when it is at most the bound plus three standard errors.
CheckReport expsup_gap_check(std::size_t p, std::size_t n, double t, double R, const CovarianceSpec& cov,
                             std::size_t replicates, std::uint64_t seed, const ExpsupOptions& opts = {});

enum class CheckSuite { all, hermite, smoothing, ito, moments, g };

/// Throws std::invalid_argument on an unknown name.
CheckSuite parse_check_suite(std::string_view name);

/// Runs the default checks of a suite concurrently; results come back in a fixed order.
std::vector<CheckReport> run_check_suite(CheckSuite suite);

/// One line per check.
std::string format_check_report(const std::vector<CheckReport>& reports);
/// name,lhs,rhs,residual,tolerance,passed
std::string check_report_csv(const std::vector<CheckReport>& reports);

}  // namespace ulln
