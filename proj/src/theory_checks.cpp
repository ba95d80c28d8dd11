#include "ulln/theory_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ulln/deviation.hpp"
#include "ulln/errors.hpp"
#include "ulln/parallel.hpp"
#include "ulln/quadrature.hpp"
#include "ulln/rng.hpp"

namespace ulln {

void GaussianSmoothing::validate() const {
  if (!(time > 0.0) || !std::isfinite(time)) throw std::domain_error("smoothing time must be positive");
}

namespace {

CheckReport make_report(std::string name, double lhs, double rhs, double residual, double tolerance) {
  return {std::move(name), lhs, rhs, residual, tolerance, residual <= tolerance};
}

struct MeanAndError {
  double mean;
  double std_error;
};

MeanAndError summarize(const std::vector<double>& values) {
  const auto count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double variance = values.size() > 1 ? sq / (count - 1.0) : 0.0;
  return {mean, std::sqrt(variance / count)};
}

double hermite(int k, double x) {
  switch (k) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return x * x - 1.0;
    case 3: return x * x * x - 3.0 * x;
  }
  throw std::invalid_argument("Hermite degree must be 0..3");
}

// sigma and its first three derivatives at x.
struct SigmoidJet {
  double s, d1, d2, d3;
};

SigmoidJet sigmoid_jet(double x) {
  const double s = sigmoid(x);
  const double d1 = s * (1.0 - s);
  const double d2 = d1 * (1.0 - 2.0 * s);
  const double d3 = d1 * (1.0 - 2.0 * s) * (1.0 - 2.0 * s) - 2.0 * d1 * d1;
  return {s, d1, d2, d3};
}

// E softplus(m + c zeta) and E sigmoid(m + c zeta) sharing one exponential per node.
void smoothed_softplus(double m, double c, const quad::GaussRule& rule, double& softplus_mean, double& sigmoid_mean) {
  softplus_mean = 0.0;
  sigmoid_mean = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double x = m + c * rule.nodes[k];
    const double e = std::exp(-std::abs(x));
    softplus_mean += rule.weights[k] * (std::max(x, 0.0) + std::log1p(e));
    sigmoid_mean += rule.weights[k] * (x >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e));
  }
}

}  // namespace

const std::vector<CatalogFunction>& catalog_functions() {
  static const std::vector<CatalogFunction> all = {
      CatalogFunction::constant,      CatalogFunction::square,          CatalogFunction::cube,
      CatalogFunction::quartic,       CatalogFunction::sigmoid,         CatalogFunction::sigmoid_slope,
      CatalogFunction::shifted_sigmoid, CatalogFunction::scaled_sigmoid};
  return all;
}

std::string_view to_string(CatalogFunction f) {
  switch (f) {
    case CatalogFunction::constant: return "constant";
    case CatalogFunction::square: return "square";
    case CatalogFunction::cube: return "cube";
    case CatalogFunction::quartic: return "quartic";
    case CatalogFunction::sigmoid: return "sigmoid";
    case CatalogFunction::sigmoid_slope: return "sigmoid_slope";
    case CatalogFunction::shifted_sigmoid: return "shifted_sigmoid";
    case CatalogFunction::scaled_sigmoid: return "scaled_sigmoid";
  }
  return "unknown";
}

CatalogFunction parse_catalog_function(std::string_view name) {
  for (CatalogFunction f : catalog_functions()) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown catalog function '" + std::string(name) + "'");
}

double catalog_value(CatalogFunction f, double x, int derivative) {
  if (derivative < 0 || derivative > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
  switch (f) {
    case CatalogFunction::constant: return derivative == 0 ? 1.0 : 0.0;
    case CatalogFunction::square: return derivative == 0 ? x * x : derivative == 1 ? 2.0 * x : 2.0;
    case CatalogFunction::cube: return derivative == 0 ? x * x * x : derivative == 1 ? 3.0 * x * x : 6.0 * x;
    case CatalogFunction::quartic:
      return derivative == 0 ? x * x * x * x : derivative == 1 ? 4.0 * x * x * x : 12.0 * x * x;
    case CatalogFunction::sigmoid: {
      const SigmoidJet j = sigmoid_jet(x);
      return derivative == 0 ? j.s : derivative == 1 ? j.d1 : j.d2;
    }
    case CatalogFunction::sigmoid_slope: {
      const SigmoidJet j = sigmoid_jet(x);
      return derivative == 0 ? j.d1 : derivative == 1 ? j.d2 : j.d3;
    }
    case CatalogFunction::shifted_sigmoid: {
      const SigmoidJet j = sigmoid_jet(0.3 + x);
      return derivative == 0 ? j.s : derivative == 1 ? j.d1 : j.d2;
    }
    case CatalogFunction::scaled_sigmoid: {
      const SigmoidJet j = sigmoid_jet(1.7 * x);
      return derivative == 0 ? j.s : derivative == 1 ? 1.7 * j.d1 : 1.7 * 1.7 * j.d2;
    }
  }
  throw std::invalid_argument("unknown catalog function");
}

CheckReport hermite_identity_residual(CatalogFunction f, int d, HermiteOrder order, std::size_t nodes) {
  const int k = order == HermiteOrder::first ? 1 : 2;
  const int max_d = order == HermiteOrder::first ? 2 : 1;
  if (d < 0 || d > max_d) throw std::invalid_argument("d out of range for this order");
  const double lhs = quad::normal_expectation([&](double x) { return catalog_value(f, x, k) * hermite(d, x); }, nodes);
  const double rhs = quad::normal_expectation([&](double x) { return catalog_value(f, x) * hermite(d + k, x); }, nodes);
  std::string name = "hermite/" + std::string(to_string(f)) + (k == 1 ? "/first" : "/second") + "/d=" +
                     std::to_string(d);
  return make_report(std::move(name), lhs, rhs, std::abs(lhs - rhs), 1e-10);
}

CheckReport smoothing_identity_residual(CatalogFunction f, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("smoothing time must lie in (0, 1]");
  const double r0 = std::log(1.0 / std::sqrt(t));
  // |E[f(e^{-r} zeta)(zeta^2 - 1)]| <= sup|f''| e^{-2r}, so 18 more units of r leave e^{-36} of the mass.
  const double r_max = r0 + 18.0;
  auto inner = [&](double r) {
    const double scale = std::exp(-r);
    return quad::normal_expectation([&](double z) { return catalog_value(f, scale * z) * (z * z - 1.0); });
  };
  const double lhs = 2.0 * quad::adaptive_integral(inner, r0, r_max, 1e-13);
  const double sqrt_t = std::sqrt(t);
  const double rhs =
      2.0 * (quad::normal_expectation([&](double z) { return catalog_value(f, sqrt_t * z); }) - catalog_value(f, 0.0));
  char tag[32];
  std::snprintf(tag, sizeof tag, "/t=%g", t);
  return make_report("smoothing/" + std::string(to_string(f)) + tag, lhs, rhs, std::abs(lhs - rhs), 1e-8);
}

CheckReport ito_expansion_residual(const Dataset& data, const GaussianSmoothing& smoothing, std::size_t mc_samples,
                                   std::uint64_t seed, ItoPayload payload) {
  smoothing.validate();
  const std::size_t p = data.dimension();
  if (p > 3) throw UnsupportedDimension("Ito expansion check supports p <= 3, got p = " + std::to_string(p));
  if (data.size() != 1) throw std::invalid_argument("Ito expansion check takes a single example");
  if (static_cast<std::size_t>(smoothing.center.size()) != p) {
    throw std::invalid_argument("smoothing center dimension does not match data");
  }
  const Vector& theta = smoothing.center;
  const double t = smoothing.time;

  std::function<double(const Vector&)> f;
  std::function<double(const Vector&)> laplacian;
  if (payload == ItoPayload::logistic_loss) {
    f = [&](const Vector& w) { return empirical_risk(data, w); };
    laplacian = [&](const Vector& w) { return risk_laplacian(data, w); };
  } else {
    f = [](const Vector& w) { return w.squaredNorm(); };
    laplacian = [p](const Vector&) { return 2.0 * static_cast<double>(p); };
  }

  // The logistic loss varies only along x, so a 1-D rule along x/|x| is exact in law.
  const Vector x = data.inputs().row(0).transpose();
  const double x_norm = x.norm();
  const Vector direction = x_norm > 0.0 ? Vector(x / x_norm) : Vector(Vector::Zero(static_cast<Eigen::Index>(p)));
  auto smoothed = [&](const std::function<double(const Vector&)>& g, double s) {
    if (payload == ItoPayload::logistic_loss) {
      const double c = std::sqrt(s);
      return quad::normal_expectation([&](double z) { return g(theta + (c * z) * direction); });
    }
    // Tensor rule over N(theta, s I), feasible for p <= 3.
    const quad::GaussRule& rule = quad::gauss_hermite(16);
    const double c = std::sqrt(s);
    std::size_t count = 1;
    for (std::size_t j = 0; j < p; ++j) count *= rule.size();
    double total = 0.0;
    Vector w(static_cast<Eigen::Index>(p));
    for (std::size_t k = 0; k < count; ++k) {
      double weight = 1.0;
      std::size_t code = k;
      for (std::size_t j = 0; j < p; ++j) {
        const std::size_t node = code % rule.size();
        code /= rule.size();
        w[static_cast<Eigen::Index>(j)] = theta[static_cast<Eigen::Index>(j)] + c * rule.nodes[node];
        weight *= rule.weights[node];
      }
      total += weight * g(w);
    }
    return total;
  };

  const double rhs =
      f(theta) + 0.5 * quad::adaptive_integral([&](double s) { return smoothed(laplacian, s); }, 0.0, t, 1e-13);
  const std::string payload_name = payload == ItoPayload::logistic_loss ? "logistic" : "squared_norm";

  if (mc_samples == 0) {
    const double lhs = smoothed(f, t);
    return make_report("ito/" + payload_name + "/quadrature", lhs, rhs, std::abs(lhs - rhs), 1e-6);
  }

  CounterRng rng(derive_seed(seed, "ito_expansion"));
  std::vector<double> values(mc_samples);
  const double c = std::sqrt(t);
  for (double& v : values) v = f(theta + c * rng.normal_vector(static_cast<Eigen::Index>(p)));
  const MeanAndError lhs = summarize(values);
  return make_report("ito/" + payload_name + "/monte_carlo", lhs.mean, rhs, std::abs(lhs.mean - rhs),
                     3.0 * lhs.std_error);
}

CheckReport kl_gaussian_shift(const Vector& theta, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("t must be positive");
  const Eigen::Index p = theta.size();
  const Matrix cov0 = t * Matrix::Identity(p, p);
  const Matrix cov1 = cov0;
  const Eigen::LLT<Matrix> chol1(cov1);
  const Eigen::LLT<Matrix> chol0(cov0);
  const Vector shift = Vector::Zero(p) - theta;
  const double trace_term = chol1.solve(cov0).trace();
  const double quadratic = shift.dot(chol1.solve(shift));
  const Matrix l1 = chol1.matrixL();
  const Matrix l0 = chol0.matrixL();
  const double log_det = 2.0 * (l1.diagonal().array().log().sum() - l0.diagonal().array().log().sum());
  const double lhs = 0.5 * (trace_term + quadratic - static_cast<double>(p) + log_det);
  const double rhs = theta.squaredNorm() / (2.0 * t);
  return make_report("kl/gaussian_shift", lhs, rhs, std::abs(lhs - rhs), 1e-12 * std::max(1.0, rhs));
}

namespace {

void check_smoothing_against(const GaussianSmoothing& smoothing, const CovarianceSpec& cov) {
  smoothing.validate();
  if (static_cast<std::size_t>(smoothing.center.size()) != cov.dimension()) {
    throw std::invalid_argument("covariance dimension does not match the smoothing center");
  }
}

std::vector<Vector> smoothed_draws(const GaussianSmoothing& smoothing, std::size_t count, std::uint64_t seed) {
  CounterRng rng(seed);
  const double c = std::sqrt(smoothing.time);
  std::vector<Vector> draws;
  draws.reserve(count);
  for (std::size_t i = 0; i < count; ++i) draws.push_back(smoothing.center + c * rng.normal_vector(smoothing.center.size()));
  return draws;
}

}  // namespace

CheckReport eta_moment_check(const BoundParams& params, const GaussianSmoothing& smoothing, const CovarianceSpec& cov,
                             std::size_t mc_samples, std::uint64_t seed) {
  check_smoothing_against(smoothing, cov);
  params.validate();
  if (mc_samples < 2) throw std::invalid_argument("need at least two Monte Carlo samples");
  if (smoothing.center.norm() > params.R * (1.0 + 1e-12)) throw std::invalid_argument("center must lie in the ball");
  const double shape = 1.0 + std::sqrt(3.0) * params.K;
  const double scale = 72.0 / std::numbers::e;
  std::vector<double> values;
  values.reserve(mc_samples);
  for (const Vector& w : smoothed_draws(smoothing, mc_samples, derive_seed(seed, "eta_moment"))) {
    const double a = std::numbers::ln2 + shape * cov.whiten_adjoint(w).norm();
    values.push_back(scale * a * a);
  }
  const MeanAndError lhs = summarize(values);
  const double rhs = 2.0 * scale *
                     (1.0 + shape * shape * (smoothing.time * cov.trace() + cov.spectral_norm() * params.R * params.R));
  return make_report("eta/moment_bound", lhs.mean, rhs, std::max(0.0, lhs.mean + 3.0 * lhs.std_error - rhs), 0.0);
}

CheckReport eta_second_moment_check(const GaussianSmoothing& smoothing, const CovarianceSpec& cov,
                                    std::size_t mc_samples, std::uint64_t seed) {
  check_smoothing_against(smoothing, cov);
  if (mc_samples < 2) throw std::invalid_argument("need at least two Monte Carlo samples");
  std::vector<double> values;
  values.reserve(mc_samples);
  for (const Vector& w : smoothed_draws(smoothing, mc_samples, derive_seed(seed, "eta_second_moment"))) {
    values.push_back(cov.whiten_adjoint(w).squaredNorm());
  }
  const MeanAndError lhs = summarize(values);
  const double rhs = smoothing.time * cov.trace() + cov.whiten_adjoint(smoothing.center).squaredNorm();
  return make_report("eta/second_moment", lhs.mean, rhs, std::abs(lhs.mean - rhs), 3.0 * lhs.std_error);
}

namespace {

double abs_hermite3_moment(std::size_t nodes) {
  const double root = std::sqrt(3.0);
  auto density = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); };
  // Even integrand: twice the integral over [0, inf), split at the root sqrt3.
  const double inner = quad::legendre_integral([&](double x) { return (3.0 * x - x * x * x) * density(x); }, 0.0,
                                               root, nodes);
  const double outer = quad::legendre_integral([&](double x) { return (x * x * x - 3.0 * x) * density(x); }, root,
                                               12.0, nodes);
  return 2.0 * (inner + outer);
}

}  // namespace

CheckReport hermite3_abs_moment(std::size_t nodes) {
  const double lhs = abs_hermite3_moment(nodes);
  const double rhs = (1.0 + 4.0 * std::exp(-1.5)) * std::sqrt(2.0 / std::numbers::pi);
  return make_report("hermite3/abs_moment", lhs, rhs, std::abs(lhs - rhs), 1e-10);
}

CheckReport hermite3_strict_bound(std::size_t nodes) {
  const double lhs = abs_hermite3_moment(nodes);
  const double rhs = 2.0 * std::sqrt(2.0 / std::numbers::pi);
  return make_report("hermite3/strict_bound", lhs, rhs, std::max(0.0, lhs + 0.08 - rhs), 0.0);
}

namespace {

void check_g_inputs(std::size_t z_cols, const CovarianceSpec& cov, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t must lie in (0, 1]");
  if (z_cols != cov.dimension()) throw std::invalid_argument("z columns must match the covariance dimension");
}

// Rows U Lambda^{1/2} z_i and <Lambda z_i, z_i>.
void whitened_rows(const Matrix& z, const CovarianceSpec& cov, Matrix& directions, Vector& scales) {
  directions.resize(z.rows(), z.cols());
  scales.resize(z.rows());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const Vector zi = z.row(i).transpose();
    directions.row(i) = cov.transform(zi).transpose();
    scales[i] = (cov.eigenvalues().array() * zi.array().square()).sum();
  }
}

Matrix reference_draws(std::size_t count, std::size_t p, std::uint64_t seed) {
  Matrix draws(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(p));
  const std::uint64_t key = derive_seed(seed, "g_reference");
  for (std::size_t j = 0; j < count; ++j) {
    CounterRng rng(derive_seed(key, j));
    draws.row(static_cast<Eigen::Index>(j)) = rng.normal_vector(static_cast<Eigen::Index>(p)).transpose();
  }
  return draws;
}

}  // namespace

double g_functional(const Matrix& z, const Vector& theta, double t, const CovarianceSpec& cov,
                    std::size_t ref_samples, std::uint64_t seed) {
  check_g_inputs(static_cast<std::size_t>(z.cols()), cov, t);
  if (theta.size() != z.cols()) throw std::invalid_argument("theta dimension must match z");
  if (z.rows() == 0 || ref_samples == 0) throw std::invalid_argument("need at least one row and one reference draw");

  const quad::GaussRule& rule = quad::gauss_hermite(64);
  auto row_term = [&](const Vector& direction, double scale) {
    if (scale == 0.0) return 0.0;
    const double m = theta.dot(direction);
    const double lambda = std::sqrt(scale);
    auto smoothed_slope = [&](double s) {
      const double c = std::sqrt(s) * lambda;
      double total = 0.0;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        const double v = sigmoid(m + c * rule.nodes[k]);
        total += rule.weights[k] * v * (1.0 - v);
      }
      return total;
    };
    return scale * quad::adaptive_integral(smoothed_slope, 0.0, t, 1e-11);
  };
  auto mean_term = [&](const Matrix& rows) {
    Matrix directions;
    Vector scales;
    whitened_rows(rows, cov, directions, scales);
    double total = 0.0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) total += row_term(directions.row(i).transpose(), scales[i]);
    return total / static_cast<double>(rows.rows());
  };
  return 0.5 * mean_term(z) - 0.5 * mean_term(reference_draws(ref_samples, cov.dimension(), seed));
}

LaplacianGap::LaplacianGap(const Matrix& z, double t, const CovarianceSpec& cov, std::size_t ref_samples,
                           std::uint64_t seed, std::size_t nodes)
    : t_(t), nodes_(nodes) {
  check_g_inputs(static_cast<std::size_t>(z.cols()), cov, t);
  if (z.rows() == 0 || ref_samples == 0) throw std::invalid_argument("need at least one row and one reference draw");
  whitened_rows(z, cov, sample_directions_, sample_scales_);
  whitened_rows(reference_draws(ref_samples, cov.dimension(), seed), cov, reference_directions_, reference_scales_);
}

ObjectiveSample LaplacianGap::evaluate(const Vector& theta) const {
  const quad::GaussRule& rule = quad::gauss_hermite(nodes_);
  const double root_t = std::sqrt(t_);
  auto accumulate = [&](const Matrix& directions, const Vector& scales, double weight, ObjectiveSample& out) {
    const Vector m = directions * theta;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      if (scales[i] == 0.0) continue;
      double softplus_mean = 0.0;
      double sigmoid_mean = 0.0;
      smoothed_softplus(m[i], root_t * std::sqrt(scales[i]), rule, softplus_mean, sigmoid_mean);
      out.value += weight * 2.0 * (softplus_mean - softplus(m[i]));
      out.gradient += (weight * 2.0 * (sigmoid_mean - sigmoid(m[i]))) * directions.row(i).transpose();
    }
  };
  ObjectiveSample out{0.0, Vector::Zero(theta.size())};
  accumulate(sample_directions_, sample_scales_, 0.5 / static_cast<double>(sample_scales_.size()), out);
  accumulate(reference_directions_, reference_scales_, -0.5 / static_cast<double>(reference_scales_.size()), out);
  return out;
}

CheckReport expsup_gap_check(std::size_t p, std::size_t n, double t, double R, const CovarianceSpec& cov,
                             std::size_t replicates, std::uint64_t seed, const ExpsupOptions& opts) {
  if (p == 0 || p > 5) throw std::invalid_argument("expsup check supports 1 <= p <= 5");
  if (n == 0 || replicates < 2) throw std::invalid_argument("need n >= 1 and at least two replicates");
  if (!(R >= 0.0)) throw std::invalid_argument("R must be nonnegative");
  check_g_inputs(p, cov, t);

  std::vector<double> upper(replicates);
  std::vector<double> lower(replicates);
  const std::uint64_t reference_seed = derive_seed(seed, "expsup_reference");
  parallel_for(replicates, [&](std::size_t r) {
    const std::uint64_t rep_seed = derive_seed(seed, r);
    CounterRng rng(derive_seed(rep_seed, "latent"));
    Matrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    for (Eigen::Index i = 0; i < z.rows(); ++i) z.row(i) = rng.normal_vector(z.cols()).transpose();
    const LaplacianGap gap(z, t, cov, opts.ref_samples, reference_seed);

    std::vector<Vector> starts{Vector::Zero(static_cast<Eigen::Index>(p))};
    for (std::size_t k = 0; k < opts.starts; ++k) starts.push_back(uniform_in_ball(p, R, derive_seed(rep_seed, k)));
    for (double sign : {1.0, -1.0}) {
      const Objective objective = [&gap, sign](const Vector& theta) {
        ObjectiveSample sample = gap.evaluate(theta);
        return ObjectiveSample{sign * sample.value, sign * sample.gradient};
      };
      double best = -std::numeric_limits<double>::infinity();
      for (const Vector& start : starts) best = std::max(best, projected_ascent(objective, start, R, opts.ascent).best_value);
      (sign > 0.0 ? upper : lower)[r] = best;
    }
  });

  const MeanAndError up = summarize(upper);
  const MeanAndError down = summarize(lower);
  const MeanAndError& worst = up.mean >= down.mean ? up : down;
  const double rhs = 2.0 * R * std::sqrt(cov.trace() / static_cast<double>(n));
  char tag[64];
  std::snprintf(tag, sizeof tag, "expsup/p=%zu/n=%zu/R=%g", p, n, R);
  return make_report(tag, worst.mean, rhs, std::max(0.0, worst.mean - rhs - 3.0 * worst.std_error), 0.0);
}

CheckSuite parse_check_suite(std::string_view name) {
  if (name == "all") return CheckSuite::all;
  if (name == "hermite") return CheckSuite::hermite;
  if (name == "smoothing") return CheckSuite::smoothing;
  if (name == "ito") return CheckSuite::ito;
  if (name == "moments") return CheckSuite::moments;
  if (name == "g") return CheckSuite::g;
  throw std::invalid_argument("unknown check suite '" + std::string(name) + "'");
}

namespace {

constexpr std::uint64_t kSuiteSeed = 0x5eed2024;

Dataset single_row(std::initializer_list<double> x, std::uint8_t y) {
  DesignMatrix inputs(1, static_cast<Eigen::Index>(x.size()));
  Eigen::Index j = 0;
  for (double v : x) inputs(0, j++) = v;
  return Dataset(std::move(inputs), {y});
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index j = 0;
  for (double x : values) v[j++] = x;
  return v;
}

using Task = std::function<CheckReport()>;

void add_hermite(std::vector<Task>& tasks) {
  for (CatalogFunction f : catalog_functions()) {
    for (int d = 0; d <= 2; ++d) tasks.push_back([f, d] { return hermite_identity_residual(f, d, HermiteOrder::first); });
    for (int d = 0; d <= 1; ++d) tasks.push_back([f, d] { return hermite_identity_residual(f, d, HermiteOrder::second); });
  }
}

void add_smoothing(std::vector<Task>& tasks) {
  for (CatalogFunction f : catalog_functions()) {
    for (double t : {0.1, 0.5, 1.0}) tasks.push_back([f, t] { return smoothing_identity_residual(f, t); });
  }
}

void add_ito(std::vector<Task>& tasks) {
  tasks.push_back([] {
    CheckReport r = ito_expansion_residual(single_row({1.5}, 1), {vec({0.2}), 0.5}, 0, kSuiteSeed);
    r.name += "/p=1";
    return r;
  });
  tasks.push_back([] {
    CheckReport r = ito_expansion_residual(single_row({1.5}, 1), {vec({0.2}), 1e-8}, 0, kSuiteSeed);
    r.name += "/t=1e-8";
    return r;
  });
  tasks.push_back([] {
    CheckReport r = ito_expansion_residual(single_row({0.7, -1.2, 2.0}, 0), {vec({0.3, 0.1, -0.4}), 0.8}, 0, kSuiteSeed);
    r.name += "/p=3";
    return r;
  });
  tasks.push_back([] {
    CheckReport r = ito_expansion_residual(single_row({0.7, -1.2, 2.0}, 0), {vec({0.3, 0.1, -0.4}), 0.6}, 0,
                                           kSuiteSeed, ItoPayload::squared_norm);
    r.name += "/p=3";
    return r;
  });
  tasks.push_back([] {
    CheckReport r = ito_expansion_residual(single_row({1.5}, 1), {vec({0.2}), 0.5}, 200000, kSuiteSeed);
    r.name += "/p=1";
    return r;
  });
}

void add_moments(std::vector<Task>& tasks) {
  tasks.push_back([] {
    CheckReport r = kl_gaussian_shift(Vector::Zero(3), 1.0);
    r.name += "/zero";
    return r;
  });
  tasks.push_back([] {
    CheckReport r = kl_gaussian_shift(vec({0.6, 0.8}), 0.5);
    r.name += "/unit";
    return r;
  });
  tasks.push_back([] {
    CounterRng rng(derive_seed(kSuiteSeed, "kl"));
    CheckReport r = kl_gaussian_shift(rng.normal_vector(7), 0.3);
    r.name += "/p=7";
    return r;
  });
  tasks.push_back([] {
    BoundParams params;
    params.R = 1.0;
    CheckReport r = eta_moment_check(params, {vec({0.5, 0.5, 0.5, 0.5}), 0.25}, CovarianceSpec(Vector::Zero(4)),
                                     20000, kSuiteSeed);
    r.name += "/zero_spectrum";
    return r;
  });
  tasks.push_back([] {
    BoundParams params;
    params.R = 1.0;
    CheckReport r = eta_moment_check(params, {vec({0.5, 0.5, 0.5, 0.5}), 0.25},
                                     make_covariance(CovarianceKind::reciprocal, 4), 100000, kSuiteSeed);
    r.name += "/reciprocal_sphere";
    return r;
  });
  tasks.push_back([] {
    CheckReport r = eta_second_moment_check({Vector::Zero(4), 0.25}, make_covariance(CovarianceKind::reciprocal, 4),
                                            100000, kSuiteSeed);
    r.name += "/center";
    return r;
  });
  tasks.push_back([] {
    CheckReport r = eta_second_moment_check({vec({0.5, 0.5, 0.5, 0.5}), 0.25},
                                            make_covariance(CovarianceKind::reciprocal, 4), 100000, kSuiteSeed);
    r.name += "/sphere";
    return r;
  });
  tasks.push_back([] { return hermite3_abs_moment(); });
  tasks.push_back([] { return hermite3_strict_bound(); });
}

void add_g(std::vector<Task>& tasks) {
  tasks.push_back([] {
    const CovarianceSpec cov = make_covariance(CovarianceKind::reciprocal, 2);
    Matrix z(3, 2);
    z << 0.4, -1.1, 1.3, 0.2, -0.7, 0.9;
    const Vector theta = vec({0.6, -0.3});
    const double direct = g_functional(z, theta, 0.7, cov, 50, kSuiteSeed);
    const double heat = LaplacianGap(z, 0.7, cov, 50, kSuiteSeed, 128).evaluate(theta).value;
    return make_report("g/heat_equation_form", direct, heat, std::abs(direct - heat), 1e-8);
  });
  tasks.push_back([] {
    return expsup_gap_check(3, 50, 1.0, 1.0, make_covariance(CovarianceKind::reciprocal, 3), 30, kSuiteSeed);
  });
  tasks.push_back([] {
    return expsup_gap_check(3, 50, 1.0, 0.0, make_covariance(CovarianceKind::reciprocal, 3), 30, kSuiteSeed);
  });
}

}  // namespace

std::vector<CheckReport> run_check_suite(CheckSuite suite) {
  std::vector<Task> tasks;
  const bool all = suite == CheckSuite::all;
  if (all || suite == CheckSuite::hermite) add_hermite(tasks);
  if (all || suite == CheckSuite::smoothing) add_smoothing(tasks);
  if (all || suite == CheckSuite::ito) add_ito(tasks);
  if (all || suite == CheckSuite::moments) add_moments(tasks);
  if (all || suite == CheckSuite::g) add_g(tasks);
  std::vector<CheckReport> reports(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { reports[i] = tasks[i](); });
  return reports;
}

std::string format_check_report(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const CheckReport& r : reports) {
    char line[512];
    std::snprintf(line, sizeof line, "%s  %-44s lhs=% .12e rhs=% .12e residual=%.3e tol=%.3e\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.lhs, r.rhs, r.abs_residual, r.tolerance);
    out << line;
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << reports.size() << " checks passed\n";
  return out.str();
}

std::string check_report_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "name,lhs,rhs,residual,tolerance,passed\r\n";
  for (const CheckReport& r : reports) {
    char numbers[160];
    std::snprintf(numbers, sizeof numbers, "%.12e,%.12e,%.6e,%.6e", r.lhs, r.rhs, r.abs_residual, r.tolerance);
    out << r.name << ',' << numbers << ',' << (r.passed ? "true" : "false") << "\r\n";
  }
  return out.str();
}

}  // namespace ulln
