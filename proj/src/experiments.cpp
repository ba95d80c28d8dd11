#include "ulln/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ulln/errors.hpp"
#include "ulln/parallel.hpp"
#include "ulln/rng.hpp"

namespace ulln {

void StudyConfig::validate() const {
  if (p == 0 || n == 0 || n_test == 0) throw std::invalid_argument("p, n and n_test must be positive");
  if (replications == 0) throw std::invalid_argument("replications must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and nonnegative");
  if (!(R >= 0.0) || !std::isfinite(R)) throw std::invalid_argument("R must be finite and nonnegative");
  if (cov_kind == CovarianceKind::custom) throw std::invalid_argument("studies support reciprocal or identity covariance");
  solver_opts.validate();
}

double prediction_precision(const Vector& theta_hat, const Dataset& data) {
  if (static_cast<std::size_t>(theta_hat.size()) != data.dimension()) {
    throw std::invalid_argument("theta_hat dimension does not match data");
  }
  const Vector s = scores(data, theta_hat);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::uint8_t predicted = s[static_cast<Eigen::Index>(i)] >= 0.0 ? 1 : 0;
    if (predicted == data.labels()[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double sign_recovery(const Vector& theta_hat, const Vector& theta_star, std::optional<std::size_t> head,
                     const std::optional<Vector>& weights) {
  if (theta_hat.size() != theta_star.size()) throw std::invalid_argument("theta vectors differ in size");
  const auto p = static_cast<std::size_t>(theta_hat.size());
  if (head && *head > p) throw std::invalid_argument("head exceeds the dimension");
  auto matches = [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    return sign_of(theta_hat[k]) != 0 && sign_of(theta_hat[k]) == sign_of(theta_star[k]);
  };

  if (weights) {
    if (weights->size() != theta_hat.size()) throw std::invalid_argument("weights differ in size");
    if ((weights->array() < 0.0).any()) throw std::invalid_argument("weights must be nonnegative");
    const double total = weights->sum();
    if (total == 0.0) return 0.0;
    double hit = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      if (matches(i)) hit += (*weights)[static_cast<Eigen::Index>(i)];
    }
    return hit / total;
  }

  const std::size_t k = head.value_or(p);
  if (k == 0) return 0.0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < k; ++i) hit += matches(i) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(k);
}

ReplicationResult run_replication(const StudyConfig& cfg, std::size_t index) {
  cfg.validate();
  const std::uint64_t rep_seed = derive_seed(cfg.base_seed, index);

  GenerativeConfig train;
  train.p = cfg.p;
  train.n = cfg.n;
  train.cov = make_covariance(cfg.cov_kind, cfg.p);
  train.beta = cfg.beta;
  train.theta_star = sample_theta_star(cfg.p, derive_seed(rep_seed, "theta_star"));
  train.seed = derive_seed(rep_seed, "train");

  GenerativeConfig test = train;
  test.n = cfg.n_test;
  test.seed = derive_seed(rep_seed, "test");

  const GeneratedData train_data = generate_dataset(train);
  const GeneratedData test_data = generate_dataset(test);
  const FitResult fit = fit_constrained(train_data.data, cfg.R, cfg.solver_opts);

  ReplicationResult out;
  out.train_precision = prediction_precision(fit.theta_hat, train_data.data);
  out.test_precision = prediction_precision(fit.theta_hat, test_data.data);
  out.abs_diff = std::abs(out.train_precision - out.test_precision);
  const Vector& star = train_data.theta_star;
  out.sign_recovery_10 = sign_recovery(fit.theta_hat, star, std::min<std::size_t>(10, cfg.p));
  out.sign_recovery_100 = sign_recovery(fit.theta_hat, star, std::min<std::size_t>(100, cfg.p));
  out.sign_recovery_500 = sign_recovery(fit.theta_hat, star, std::min<std::size_t>(500, cfg.p));
  out.sign_recovery_all = sign_recovery(fit.theta_hat, star);
  out.sign_recovery_weighted = sign_recovery(fit.theta_hat, star, std::nullopt, train.cov.diagonal());
  out.on_boundary = fit.on_boundary;
  out.converged = fit.converged;
  out.iterations = fit.iterations;
  return out;
}

StudySummary run_study(const StudyConfig& cfg) {
  cfg.validate();
  StudySummary summary;
  summary.config = cfg;
  summary.replications.resize(cfg.replications);
  parallel_for(cfg.replications, [&](std::size_t i) { summary.replications[i] = run_replication(cfg, i); });

  ReplicationResult& m = summary.mean;
  m.on_boundary = true;
  m.converged = true;
  for (const ReplicationResult& r : summary.replications) {
    m.train_precision += r.train_precision;
    m.test_precision += r.test_precision;
    m.abs_diff += r.abs_diff;
    m.sign_recovery_10 += r.sign_recovery_10;
    m.sign_recovery_100 += r.sign_recovery_100;
    m.sign_recovery_500 += r.sign_recovery_500;
    m.sign_recovery_all += r.sign_recovery_all;
    m.sign_recovery_weighted += r.sign_recovery_weighted;
    m.on_boundary = m.on_boundary && r.on_boundary;
    m.converged = m.converged && r.converged;
    m.iterations += r.iterations;
    if (r.train_precision == 1.0) ++summary.train_perfect_count;
  }
  const auto count = static_cast<double>(summary.replications.size());
  for (double* field : {&m.train_precision, &m.test_precision, &m.abs_diff, &m.sign_recovery_10,
                        &m.sign_recovery_100, &m.sign_recovery_500, &m.sign_recovery_all,
                        &m.sign_recovery_weighted}) {
    *field /= count;
  }
  m.iterations /= summary.replications.size();
  return summary;
}

double harmonic_fraction(std::size_t head, std::size_t p) {
  if (p == 0 || head > p) throw std::invalid_argument("require 0 < p and head <= p");
  double part = 0.0;
  double total = 0.0;
  // Smallest terms first.
  for (std::size_t i = p; i >= 1; --i) {
    const double term = 1.0 / static_cast<double>(i);
    total += term;
    if (i <= head) part += term;
  }
  return part / total;
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

namespace {

using Metric = double ReplicationResult::*;

std::string cell(const StudySummary* summary, Metric metric) {
  return summary ? format_fixed(summary->mean.*metric) : std::string();
}

}  // namespace

std::string table1_csv(const TableColumns& columns) {
  struct Row {
    const char* label;
    Metric metric;
  };
  const Row rows[] = {{"Correct prediction in training", &ReplicationResult::train_precision},
                      {"Correct prediction in testing", &ReplicationResult::test_precision},
                      {"Mean absolute differences", &ReplicationResult::abs_diff}};
  std::ostringstream out;
  out << "metric,sigma_rec,identity\r\n";
  for (const Row& row : rows) {
    out << csv_field(row.label) << ',' << cell(columns.sigma_rec, row.metric) << ','
        << cell(columns.identity, row.metric) << "\r\n";
  }
  return out.str();
}

std::string table2_csv(const TableColumns& columns) {
  struct Row {
    const char* label;
    const char* definition;
    Metric metric;
  };
  const Row rows[] = {
      {"First 10", "fraction of matching signs among coordinates 1..10", &ReplicationResult::sign_recovery_10},
      {"First 100", "fraction of matching signs among coordinates 1..100", &ReplicationResult::sign_recovery_100},
      {"First 500", "fraction of matching signs among coordinates 1..500", &ReplicationResult::sign_recovery_500},
      {"All", "fraction of matching signs among all coordinates", &ReplicationResult::sign_recovery_all},
      {"Weighted by variances", "sum of Sigma_ii over matching coordinates, divided by tr(Sigma)",
       &ReplicationResult::sign_recovery_weighted}};
  std::ostringstream out;
  out << "metric,definition,sigma_rec,identity\r\n";
  for (const Row& row : rows) {
    out << csv_field(row.label) << ',' << csv_field(row.definition) << ',' << cell(columns.sigma_rec, row.metric)
        << ',' << cell(columns.identity, row.metric) << "\r\n";
  }
  return out.str();
}

std::string replications_csv(const TableColumns& columns) {
  std::ostringstream out;
  out << "covariance,replicate,train_precision,test_precision,abs_diff,sign_recovery_10,sign_recovery_100,"
         "sign_recovery_500,sign_recovery_all,sign_recovery_weighted,on_boundary,converged,iterations\r\n";
  auto emit = [&](const StudySummary* summary) {
    if (!summary) return;
    const std::string name(to_string(summary->config.cov_kind));
    for (std::size_t i = 0; i < summary->replications.size(); ++i) {
      const ReplicationResult& r = summary->replications[i];
      out << name << ',' << i << ',' << format_fixed(r.train_precision) << ',' << format_fixed(r.test_precision)
          << ',' << format_fixed(r.abs_diff) << ',' << format_fixed(r.sign_recovery_10) << ','
          << format_fixed(r.sign_recovery_100) << ',' << format_fixed(r.sign_recovery_500) << ','
          << format_fixed(r.sign_recovery_all) << ',' << format_fixed(r.sign_recovery_weighted) << ','
          << (r.on_boundary ? "true" : "false") << ',' << (r.converged ? "true" : "false") << ',' << r.iterations
          << "\r\n";
    }
  };
  emit(columns.sigma_rec);
  emit(columns.identity);
  return out.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_study_tables(const std::filesystem::path& out_dir, const TableColumns& columns) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  write_text(out_dir / "table1.csv", table1_csv(columns));
  write_text(out_dir / "table2.csv", table2_csv(columns));
  write_text(out_dir / "replications.csv", replications_csv(columns));
}

}  // namespace ulln
