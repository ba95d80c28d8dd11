#include "ulln/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ulln {

void BoundParams::validate() const {
  if (!(n >= 1.0) || !std::isfinite(n)) throw std::invalid_argument("n must be a finite number >= 1");
  if (!(R >= 0.0) || !std::isfinite(R)) throw std::invalid_argument("R must be finite and nonnegative");
  if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("K must be finite and positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  if (!(trace_sigma >= 0.0) || !(norm_sigma >= 0.0)) {
    throw std::invalid_argument("trace and norm of Sigma must be nonnegative");
  }
  if (trace_sigma > 0.0 && norm_sigma > trace_sigma * (1.0 + 1e-12)) {
    throw std::invalid_argument("spectral norm cannot exceed the trace");
  }
  if (!(log_n_constant_a > 0.0)) throw std::invalid_argument("constant a must be positive");
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::theorem_main: return "theorem";
    case BoundKind::classical: return "classical";
    case BoundKind::extended_classical: return "extended";
  }
  return "unknown";
}

double effective_rank(double trace_sigma, double norm_sigma) {
  return norm_sigma > 0.0 ? trace_sigma / norm_sigma : 0.0;
}

namespace {

BoundReport finish(BoundKind kind, std::vector<BoundTerm> terms, double confidence) {
  BoundReport report{kind, std::move(terms), 0.0, confidence};
  for (const BoundTerm& term : report.terms) report.total += term.value;
  return report;
}

}  // namespace

BoundReport bound_theorem(const BoundParams& params) {
  params.validate();
  if (params.delta > 1.0 / 6.0) {
    throw std::domain_error("the main bound requires delta <= 1/6");
  }
  const double log_inv_delta = 0.0 - std::log(params.delta);
  const double n = params.n;
  const double r2 = params.R * params.R;
  const double k2 = params.K * params.K;
  const double shape = (1.0 + std::sqrt(3.0) * params.K) * (1.0 + std::sqrt(3.0) * params.K);

  // The smoothing time t = 1/(12 log(1/delta)) is already substituted below.
  const double pac_bayes =
      std::sqrt(27.0 *
                (log_inv_delta + shape * (params.trace_sigma / 12.0 + params.norm_sigma * r2 * log_inv_delta)) *
                (1.0 + 6.0 * r2) / n);
  const double rademacher = 2.0 * params.R * std::sqrt(params.trace_sigma / n);
  const double bernstein_sub_gaussian = std::sqrt(78.0 * k2 * (256.0 + r2 * params.trace_sigma) / n);
  const double bernstein_sub_exponential = 9.0 * k2 * params.R * params.norm_sigma * std::sqrt(log_inv_delta) / n;

  return finish(BoundKind::theorem_main,
                {{"pac_bayes", pac_bayes},
                 {"laplacian_expectation", rademacher},
                 {"bernstein_sub_gaussian", bernstein_sub_gaussian},
                 {"bernstein_sub_exponential", bernstein_sub_exponential}},
                1.0 - 6.0 * params.delta);
}

BoundReport bound_classical(const BoundParams& params) {
  params.validate();
  const double log_inv_delta = 0.0 - std::log(params.delta);
  const double r2 = params.R * params.R;
  const double rank = effective_rank(params.trace_sigma, params.norm_sigma);
  const double complexity = 2.0 * std::sqrt(r2 * params.norm_sigma * rank / params.n);
  const double deviation = std::sqrt(
      8.0 * (1.0 + r2 * params.K * params.K * params.norm_sigma * rank) * log_inv_delta / params.n);
  return finish(BoundKind::classical, {{"rademacher", complexity}, {"mcdiarmid", deviation}},
                1.0 - params.delta);
}

BoundReport bound_extended(const BoundParams& params) {
  params.validate();
  const double log_inv_delta = 0.0 - std::log(params.delta);
  const double r2 = params.R * params.R;
  const double rank = effective_rank(params.trace_sigma, params.norm_sigma);
  const double a2 = params.log_n_constant_a * params.log_n_constant_a;
  const double k4 = std::pow(params.K, 4);
  const double complexity = 2.0 * std::sqrt(r2 * params.norm_sigma * rank / params.n);
  const double envelope =
      1.0 + 2.0 * r2 * params.norm_sigma *
                (rank + a2 * k4 * params.norm_sigma * (std::log(params.n) + log_inv_delta));
  const double deviation = std::sqrt(8.0 * envelope * log_inv_delta / params.n);
  return finish(BoundKind::extended_classical, {{"rademacher", complexity}, {"mcdiarmid", deviation}},
                1.0 - 3.0 * params.delta);
}

UllnRatioTable ulln_ratio_table(const std::vector<SpectrumPoint>& spectra) {
  UllnRatioTable table;
  table.rows.reserve(spectra.size());
  for (const SpectrumPoint& point : spectra) {
    if (!(point.n >= 1.0)) throw std::invalid_argument("n must be >= 1");
    const double rank = effective_rank(point.trace_sigma, point.norm_sigma);
    table.rows.push_back({point.n, rank, rank / point.n, rank * std::log(point.n) / point.n});
  }
  if (table.rows.empty()) return table;

  auto strictly_decreasing = [&](auto member) {
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      // Relative margin so that rounding on a constant column is not read as decay.
      if (!(table.rows[i].*member < table.rows[i - 1].*member * (1.0 - 1e-12))) return false;
    }
    return table.rows.size() > 1;
  };
  auto decay = [&](auto member) {
    const double first = table.rows.front().*member;
    return first > 0.0 ? table.rows.back().*member / first : 0.0;
  };
  table.rank_over_n_decreasing = strictly_decreasing(&UllnRatioRow::rank_over_n);
  table.rank_log_n_over_n_decreasing = strictly_decreasing(&UllnRatioRow::rank_log_n_over_n);
  table.rank_over_n_decay = decay(&UllnRatioRow::rank_over_n);
  table.rank_log_n_over_n_decay = decay(&UllnRatioRow::rank_log_n_over_n);
  return table;
}

}  // namespace ulln
