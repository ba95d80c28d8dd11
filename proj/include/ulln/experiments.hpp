#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ulln/datagen.hpp"
#include "ulln/solver.hpp"

namespace ulln {

struct StudyConfig {
  std::size_t p = 3000;
  std::size_t n = 1000;
  std::size_t n_test = 1000;
  CovarianceKind cov_kind = CovarianceKind::reciprocal;
  double beta = 1e3;
  double R = 1.0;
  std::size_t replications = 100;
  std::uint64_t base_seed = 20240501;
  SolverOptions solver_opts;

  /// Throws std::invalid_argument on out-of-range fields. Custom covariances are rejected.
  void validate() const;
};

struct ReplicationResult {
  double train_precision = 0.0;
  double test_precision = 0.0;
  double abs_diff = 0.0;
  double sign_recovery_10 = 0.0;
  double sign_recovery_100 = 0.0;
  double sign_recovery_500 = 0.0;
  double sign_recovery_all = 0.0;
  double sign_recovery_weighted = 0.0;
  bool on_boundary = false;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Fraction of rows whose label equals 1{<x_i, theta_hat> >= 0}.
/// Throws std::invalid_argument on a dimension mismatch.
double prediction_precision(const Vector& theta_hat, const Dataset& data);

/// Fraction of the first `head` coordinates (all when empty) with matching
/// signs, sgn(0) = 0. With weights, the weighted fraction over all coordinates.
/// Throws std::invalid_argument when head > p, sizes differ or a weight is negative.
double sign_recovery(const Vector& theta_hat, const Vector& theta_star, std::optional<std::size_t> head = std::nullopt,
                     const std::optional<Vector>& weights = std::nullopt);

/// Train and test sets share theta*; both are drawn from seeds derived from
/// (base_seed, index). Non-convergence is reported in the result, not thrown.
ReplicationResult run_replication(const StudyConfig& cfg, std::size_t index);

struct StudySummary {
  StudyConfig config;
  std::vector<ReplicationResult> replications;
  ReplicationResult mean;  // on_boundary: all replicates; converged: all replicates
  std::size_t train_perfect_count = 0;
};

StudySummary run_study(const StudyConfig& cfg);

/// Sum_{i<=head} 1/i over Sum_{i<=p} 1/i: the reciprocal-spectrum weight of the head.
double harmonic_fraction(std::size_t head, std::size_t p);

struct TableColumns {
  const StudySummary* sigma_rec = nullptr;
  const StudySummary* identity = nullptr;
};

/// CSV text for the prediction table (metric, sigma_rec, identity).
std::string table1_csv(const TableColumns& columns);
/// CSV text for the sign-recovery table (metric, definition, sigma_rec, identity).
std::string table2_csv(const TableColumns& columns);
/// Per-replicate rows for one or both studies.
std::string replications_csv(const TableColumns& columns);

/// Fixed-point number with the given decimals.
std::string format_fixed(double value, int decimals = 5);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);

/// Writes table1.csv, table2.csv and replications.csv. Throws IoError.
void write_study_tables(const std::filesystem::path& out_dir, const TableColumns& columns);

}  // namespace ulln
