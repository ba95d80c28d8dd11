#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support.hpp"
#include "ulln/errors.hpp"
#include "ulln/rng.hpp"
#include "ulln/theory_checks.hpp"

namespace ulln {
namespace {

using testing::make_dataset;
using testing::vec;

TEST(Catalog, NamesRoundTrip) {
  EXPECT_EQ(catalog_functions().size(), 8u);
  for (CatalogFunction f : catalog_functions()) EXPECT_EQ(parse_catalog_function(to_string(f)), f);
  EXPECT_THROW(parse_catalog_function("no_such_function"), std::invalid_argument);
}

TEST(Catalog, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (CatalogFunction f : catalog_functions()) {
    for (double x : {-1.3, 0.0, 0.4, 2.2}) {
      const double d1 = (catalog_value(f, x + h) - catalog_value(f, x - h)) / (2.0 * h);
      const double d2 = (catalog_value(f, x + h, 1) - catalog_value(f, x - h, 1)) / (2.0 * h);
      EXPECT_NEAR(catalog_value(f, x, 1), d1, 1e-8) << to_string(f) << " " << x;
      EXPECT_NEAR(catalog_value(f, x, 2), d2, 1e-8) << to_string(f) << " " << x;
    }
  }
}

TEST(HermiteIdentity, Examples) {
  const CheckReport square = hermite_identity_residual(CatalogFunction::square, 0, HermiteOrder::first);
  EXPECT_NEAR(square.lhs, 0.0, 1e-15);
  EXPECT_NEAR(square.rhs, 0.0, 1e-15);
  EXPECT_TRUE(square.passed);
  EXPECT_LE(hermite_identity_residual(CatalogFunction::sigmoid, 0, HermiteOrder::first).abs_residual, 1e-10);
  EXPECT_LE(hermite_identity_residual(CatalogFunction::sigmoid_slope, 1, HermiteOrder::second).abs_residual, 1e-10);
}

TEST(HermiteIdentity, AllCatalogFunctionsAndDoubledNodes) {
  for (CatalogFunction f : catalog_functions()) {
    for (int d = 0; d <= 2; ++d) {
      const CheckReport a = hermite_identity_residual(f, d, HermiteOrder::first);
      const CheckReport b = hermite_identity_residual(f, d, HermiteOrder::first, 256);
      EXPECT_TRUE(a.passed) << a.name;
      EXPECT_NEAR(a.lhs, b.lhs, 1e-10) << a.name;
      EXPECT_NEAR(a.rhs, b.rhs, 1e-10) << a.name;
    }
    for (int d = 0; d <= 1; ++d) EXPECT_TRUE(hermite_identity_residual(f, d, HermiteOrder::second).passed);
  }
}

TEST(HermiteIdentity, PolynomialClosedForms) {
  // f = x^4, d = 1: E[4 x^3 * x] = 12 = E[x^4 (x^2 - 1)] = 15 - 3.
  const CheckReport r = hermite_identity_residual(CatalogFunction::quartic, 1, HermiteOrder::first);
  EXPECT_NEAR(r.lhs, 12.0, 1e-12);
  EXPECT_NEAR(r.rhs, 12.0, 1e-12);
}

TEST(HermiteIdentity, RangeErrors) {
  EXPECT_THROW(hermite_identity_residual(CatalogFunction::square, 3, HermiteOrder::first), std::invalid_argument);
  EXPECT_THROW(hermite_identity_residual(CatalogFunction::square, 2, HermiteOrder::second), std::invalid_argument);
}

TEST(SmoothingIdentity, Examples) {
  const CheckReport constant = smoothing_identity_residual(CatalogFunction::constant, 0.5);
  EXPECT_NEAR(constant.lhs, 0.0, 1e-12);
  EXPECT_NEAR(constant.rhs, 0.0, 1e-15);
  const CheckReport square = smoothing_identity_residual(CatalogFunction::square, 0.7);
  EXPECT_NEAR(square.rhs, 1.4, 1e-15);
  EXPECT_LE(square.abs_residual, 1e-10);
  EXPECT_LE(smoothing_identity_residual(CatalogFunction::shifted_sigmoid, 1.0).abs_residual, 1e-8);
}

TEST(SmoothingIdentity, HoldsAcrossCatalogAndTimes) {
  for (CatalogFunction f : catalog_functions()) {
    for (double t : {0.1, 0.5, 1.0}) {
      const CheckReport r = smoothing_identity_residual(f, t);
      EXPECT_TRUE(r.passed) << r.name;
    }
  }
}

TEST(SmoothingIdentity, TimeOutsideUnitIntervalIsDomainError) {
  EXPECT_THROW(smoothing_identity_residual(CatalogFunction::square, 0.0), std::domain_error);
  EXPECT_THROW(smoothing_identity_residual(CatalogFunction::square, 1.5), std::domain_error);
}

TEST(ItoExpansion, SmallTimeLimit) {
  const Dataset row = make_dataset({{1.5, -0.4}}, {1});
  const CheckReport r = ito_expansion_residual(row, {vec({0.2, 0.3}), 1e-8}, 0, 1);
  EXPECT_LE(r.abs_residual, 1e-6);
  EXPECT_NEAR(r.lhs, empirical_risk(row, vec({0.2, 0.3})), 1e-7);
}

TEST(ItoExpansion, SquaredNormPayload) {
  const Dataset row = make_dataset({{0.5, 1.0, -2.0}}, {0});
  const Vector theta = vec({0.3, -0.1, 0.5});
  const CheckReport r = ito_expansion_residual(row, {theta, 0.4}, 0, 1, ItoPayload::squared_norm);
  EXPECT_NEAR(r.lhs, theta.squaredNorm() + 3 * 0.4, 1e-10);
  EXPECT_LE(r.abs_residual, 1e-10);
}

TEST(ItoExpansion, LogisticExampleAndMonteCarloCrossCheck) {
  const Dataset row = make_dataset({{1.5}}, {1});
  const GaussianSmoothing smoothing{vec({0.2}), 0.5};
  const CheckReport quadrature = ito_expansion_residual(row, smoothing, 0, 1);
  EXPECT_LE(quadrature.abs_residual, 1e-6);
  const CheckReport mc = ito_expansion_residual(row, smoothing, 2000000, 7);
  EXPECT_TRUE(mc.passed);
  EXPECT_GT(mc.tolerance, 0.0);
  EXPECT_NEAR(mc.lhs, quadrature.lhs, mc.tolerance);
}

TEST(ItoExpansion, Preconditions) {
  const Dataset wide = make_dataset({{1.0, 1.0, 1.0, 1.0}}, {1});
  EXPECT_THROW(ito_expansion_residual(wide, {Vector::Zero(4), 0.5}, 0, 1), UnsupportedDimension);
  const Dataset two_rows = make_dataset({{1.0}, {2.0}}, {1, 0});
  EXPECT_THROW(ito_expansion_residual(two_rows, {vec({0.0}), 0.5}, 0, 1), std::invalid_argument);
  EXPECT_THROW(ito_expansion_residual(make_dataset({{1.0}}, {1}), {vec({0.0}), 0.0}, 0, 1), std::domain_error);
}

TEST(KlGaussianShift, Examples) {
  EXPECT_EQ(kl_gaussian_shift(Vector::Zero(3), 0.5).rhs, 0.0);
  EXPECT_NEAR(kl_gaussian_shift(Vector::Zero(3), 0.5).lhs, 0.0, 1e-15);
  const CheckReport unit = kl_gaussian_shift(vec({0.6, 0.8}), 0.5);
  EXPECT_NEAR(unit.rhs, 1.0, 1e-15);
  EXPECT_TRUE(unit.passed);
  CounterRng rng(12);
  const Vector theta = rng.normal_vector(7);
  const CheckReport r = kl_gaussian_shift(theta, 0.3);
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < 7; ++i) norm2 += theta[i] * theta[i];
  EXPECT_NEAR(r.lhs, norm2 / 0.6, 1e-12);
  EXPECT_THROW(kl_gaussian_shift(theta, 0.0), std::domain_error);
}

TEST(EtaMoment, ZeroCovarianceCollapses) {
  const CovarianceSpec zero(Vector::Zero(3));
  BoundParams params;
  params.R = 1.0;
  const CheckReport r = eta_moment_check(params, {vec({0.6, 0.0, 0.8}), 0.3}, zero, 1000, 1);
  const double constant = 72.0 / std::numbers::e * std::numbers::ln2 * std::numbers::ln2;
  EXPECT_NEAR(r.lhs, constant, 1e-12);
  EXPECT_GE(r.rhs, 2.0 * r.lhs);
  EXPECT_TRUE(r.passed);
}

TEST(EtaMoment, ReciprocalOnSphere) {
  BoundParams params;
  params.R = 1.0;
  const Vector theta = vec({0.5, 0.5, 0.5, 0.5});
  const CheckReport r =
      eta_moment_check(params, {theta, 0.25}, make_covariance(CovarianceKind::reciprocal, 4), 20000, 3);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.lhs, r.rhs);
  EXPECT_THROW(eta_moment_check(params, {vec({2.0, 0, 0, 0}), 0.25}, make_covariance(CovarianceKind::reciprocal, 4),
                                100, 3),
               std::invalid_argument);
  EXPECT_THROW(eta_moment_check(params, {vec({0.0, 0.0}), 0.25}, make_covariance(CovarianceKind::reciprocal, 4), 100, 3),
               std::invalid_argument);
}

TEST(EtaSecondMoment, CenteredAndShifted) {
  const CovarianceSpec cov = make_covariance(CovarianceKind::reciprocal, 4);
  const CheckReport centered = eta_second_moment_check({Vector::Zero(4), 0.5}, cov, 50000, 4);
  EXPECT_NEAR(centered.rhs, 0.5 * cov.trace(), 1e-15);
  EXPECT_TRUE(centered.passed);
  EXPECT_TRUE(eta_second_moment_check({vec({0.1, -0.7, 0.2, 0.3}), 0.5}, cov, 50000, 5).passed);
}

TEST(Hermite3, AbsoluteMomentAndStrictBound) {
  const CheckReport r = hermite3_abs_moment();
  EXPECT_NEAR(r.rhs, (1.0 + 4.0 * std::exp(-1.5)) * std::sqrt(2.0 / std::numbers::pi), 1e-15);
  EXPECT_NEAR(r.rhs, 1.51005, 5e-5);
  EXPECT_LE(r.abs_residual, 1e-10);
  const CheckReport strict = hermite3_strict_bound();
  EXPECT_TRUE(strict.passed);
  EXPECT_GT(strict.rhs - strict.lhs, 0.08);
  EXPECT_NEAR(hermite3_abs_moment(64).lhs, hermite3_abs_moment(256).lhs, 1e-12);
}

TEST(GFunctional, ZeroCovarianceVanishes) {
  const CovarianceSpec zero(Vector::Zero(2));
  EXPECT_EQ(g_functional(Matrix::Ones(3, 2), vec({0.3, 0.4}), 0.5, zero, 10, 1), 0.0);
  EXPECT_THROW(g_functional(Matrix::Ones(3, 2), vec({0.3, 0.4}), 1.5, zero, 10, 1), std::domain_error);
}

TEST(GFunctional, CenteredUnderReferenceLaw) {
  const CovarianceSpec cov = make_covariance(CovarianceKind::reciprocal, 2);
  const Vector theta = vec({0.6, -0.3});
  const int draws = 200;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < draws; ++k) {
    CounterRng rng(derive_seed(99, static_cast<std::uint64_t>(k)));
    Matrix z(4, 2);
    for (Eigen::Index i = 0; i < 4; ++i) z.row(i) = rng.normal_vector(2).transpose();
    const double g = g_functional(z, theta, 1.0, cov, 40, 1000 + static_cast<std::uint64_t>(k));
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sum2 / draws - mean * mean) / (draws - 1));
  EXPECT_NEAR(mean, 0.0, 3.0 * se);
}

TEST(GFunctional, MatchesNestedMonteCarlo) {
  const double c = std::cos(0.5), s = std::sin(0.5);
  Matrix u(2, 2);
  u << c, -s, s, c;
  const CovarianceSpec cov(vec({1.0, 0.3}), u);
  Matrix z(3, 2);
  z << 0.4, -1.2, 1.5, 0.3, -0.7, 0.9;
  const Vector theta = vec({0.8, -0.5});
  const double t = 0.6;
  const Matrix root = u * vec({1.0, std::sqrt(0.3)}).asDiagonal();

  // lambda^2 t sigma'(m + sqrt(t U) lambda zeta) with U uniform: the s-average by Monte Carlo too.
  auto sample = [&](const Vector& zi, CounterRng& rng) {
    const Vector direction = root * zi;
    const double m = theta.dot(direction);
    const double lambda2 = direction.squaredNorm();
    const double v = 1.0 / (1.0 + std::exp(-(m + std::sqrt(t * rng.uniform() * lambda2) * rng.normal())));
    return lambda2 * t * v * (1.0 - v);
  };
  const int draws = 1000000;
  double first = 0.0, first_var = 0.0;
  for (Eigen::Index i = 0; i < 3; ++i) {
    CounterRng rng(derive_seed(7, static_cast<std::uint64_t>(i)));
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < draws; ++k) {
      const double h = sample(z.row(i).transpose(), rng);
      sum += h;
      sum2 += h * h;
    }
    const double mean = sum / draws;
    first += mean / 3.0;
    first_var += (sum2 / draws - mean * mean) / draws / 9.0;
  }
  CounterRng rng(derive_seed(7, "reference"));
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Vector zk = rng.normal_vector(2);
    const double h = sample(zk, rng);
    sum += h;
    sum2 += h * h;
  }
  const double second = sum / draws;
  const double joint_var = sum2 / draws - second * second;
  const double oracle = 0.5 * first - 0.5 * second;
  const double oracle_var = 0.25 * (first_var + joint_var / draws);

  const std::size_t refs = 5000;
  const double value = g_functional(z, theta, t, cov, refs, 3);
  // The reference term of g_functional has variance at most that of a joint draw.
  const double se = std::sqrt(oracle_var + 0.25 * joint_var / static_cast<double>(refs));
  EXPECT_NEAR(value, oracle, 3.0 * se);
}

TEST(LaplacianGap, AgreesWithDirectFormAndGradient) {
  const CovarianceSpec cov = make_covariance(CovarianceKind::reciprocal, 3);
  Matrix z(5, 3);
  CounterRng rng(8);
  for (Eigen::Index i = 0; i < 5; ++i) z.row(i) = rng.normal_vector(3).transpose();
  const Vector theta = vec({0.4, -0.2, 0.7});
  const LaplacianGap gap(z, 0.8, cov, 30, 11, 128);
  EXPECT_NEAR(gap.evaluate(theta).value, g_functional(z, theta, 0.8, cov, 30, 11), 1e-8);
  const Vector g = gap.evaluate(theta).gradient;
  const double h = 1e-6;
  for (Eigen::Index j = 0; j < 3; ++j) {
    Vector up = theta, down = theta;
    up[j] += h;
    down[j] -= h;
    EXPECT_NEAR(g[j], (gap.evaluate(up).value - gap.evaluate(down).value) / (2.0 * h), 1e-7);
  }
}

TEST(ExpsupGap, ZeroRadiusIsCenteredAtZero) {
  // Over B[0] the supremum is G_t^0(Z) itself, whose expectation is zero.
  const CheckReport r = expsup_gap_check(3, 50, 1.0, 0.0, make_covariance(CovarianceKind::reciprocal, 3), 20, 1);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.passed);
  EXPECT_GE(r.lhs, 0.0);
}

TEST(ExpsupGap, BoundSideScalesAndEstimateHolds) {
  const CovarianceSpec cov = make_covariance(CovarianceKind::reciprocal, 3);
  ExpsupOptions opts;
  opts.ref_samples = 300;
  const CheckReport small = expsup_gap_check(3, 50, 1.0, 1.0, cov, 8, 2, opts);
  const CheckReport large = expsup_gap_check(3, 200, 1.0, 1.0, cov, 8, 2, opts);
  EXPECT_NEAR(large.rhs / small.rhs, 0.5, 1e-12);
  EXPECT_NEAR(small.rhs, 2.0 * std::sqrt(cov.trace() / 50.0), 1e-12);
  EXPECT_TRUE(small.passed);
  EXPECT_THROW(expsup_gap_check(6, 50, 1.0, 1.0, make_covariance(CovarianceKind::reciprocal, 6), 4, 1),
               std::invalid_argument);
}

TEST(CheckSuite, ParsingAndFormatting) {
  EXPECT_EQ(parse_check_suite("all"), CheckSuite::all);
  EXPECT_EQ(parse_check_suite("moments"), CheckSuite::moments);
  EXPECT_THROW(parse_check_suite("everything"), std::invalid_argument);
  const std::vector<CheckReport> reports = run_check_suite(CheckSuite::moments);
  ASSERT_EQ(reports.size(), 9u);
  for (const CheckReport& r : reports) {
    EXPECT_TRUE(r.passed) << r.name;
    EXPECT_EQ(r.passed, r.abs_residual <= r.tolerance);
  }
  const std::string text = format_check_report(reports);
  EXPECT_NE(text.find("9/9 checks passed"), std::string::npos);
  const std::string csv = check_report_csv(reports);
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "name,lhs,rhs,residual,tolerance,passed");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
}

TEST(CheckSuite, SuitesAreDeterministic) {
  const std::vector<CheckReport> a = run_check_suite(CheckSuite::ito);
  const std::vector<CheckReport> b = run_check_suite(CheckSuite::ito);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].lhs, b[i].lhs);
  }
}

}  // namespace
}  // namespace ulln
