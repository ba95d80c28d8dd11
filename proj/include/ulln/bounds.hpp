#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace ulln {

/// Inputs of the uniform concentration bounds. Only spectral summaries of
/// Sigma enter, never the dimension p.
struct BoundParams {
  double n = 1.0;
  double R = 1.0;
  double K = std::numbers::sqrt2;  // standard Gaussian concentration constant
  double delta = 0.05;
  double trace_sigma = 1.0;
  double norm_sigma = 1.0;
  double log_n_constant_a = 1.0;  // absolute constant of the extended classical bound

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

enum class BoundKind { theorem_main, classical, extended_classical };

std::string_view to_string(BoundKind kind);

struct BoundTerm {
  std::string name;
  double value;
};

struct BoundReport {
  BoundKind kind;
  std::vector<BoundTerm> terms;
  double total = 0.0;
  double confidence = 0.0;  // stated coverage probability
};

/// tr / norm when norm > 0, else 0.
double effective_rank(double trace_sigma, double norm_sigma);

/// Four-term PAC-Bayes bound, holding with probability 1 - 6 delta.
/// Throws std::domain_error when delta > 1/6.
BoundReport bound_theorem(const BoundParams& params);

/// Rademacher + McDiarmid bound, holding with probability 1 - delta.
BoundReport bound_classical(const BoundParams& params);

/// Classical bound extended to sub-Gaussian norms, holding with probability 1 - 3 delta.
BoundReport bound_extended(const BoundParams& params);

/// Sufficiency diagnostics for the uniform law along a sequence of spectra.
struct SpectrumPoint {
  double n;
  double trace_sigma;
  double norm_sigma;
};

struct UllnRatioRow {
  double n;
  double effective_rank;
  double rank_over_n;
  double rank_log_n_over_n;
};

struct UllnRatioTable {
  std::vector<UllnRatioRow> rows;
  bool rank_over_n_decreasing = false;
  bool rank_log_n_over_n_decreasing = false;
  /// Last value relative to the first; small means the ratio is vanishing.
  double rank_over_n_decay = 0.0;
  double rank_log_n_over_n_decay = 0.0;
};

UllnRatioTable ulln_ratio_table(const std::vector<SpectrumPoint>& spectra);

}  // namespace ulln
