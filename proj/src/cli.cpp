#include "ulln/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "ulln/bounds.hpp"
#include "ulln/deviation.hpp"
#include "ulln/errors.hpp"
#include "ulln/experiments.hpp"
#include "ulln/parallel.hpp"
#include "ulln/rng.hpp"
#include "ulln/theory_checks.hpp"

namespace ulln::cli {

namespace {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read config " + path);
  try {
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

// Typed access to one JSON object that rejects keys outside `allowed`.
class Section {
 public:
  Section(const json& doc, std::string where, std::set<std::string> allowed) : doc_(doc), where_(std::move(where)) {
    if (!doc_.is_object()) throw ConfigError(where_ + " must be a JSON object");
    for (const auto& item : doc_.items()) {
      if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where_);
    }
  }

  bool has(const char* key) const { return doc_.contains(key); }
  const json& raw(const char* key) const { return doc_.at(key); }

  double number(const char* key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) return required(key, fallback);
    const json& v = doc_.at(key);
    if (!v.is_number()) throw ConfigError(where_ + "." + key + " must be a number");
    return v.get<double>();
  }

  std::uint64_t count(const char* key, std::optional<std::uint64_t> fallback = std::nullopt) const {
    if (!has(key)) {
      if (!fallback) throw ConfigError("missing key '" + std::string(key) + "' in " + where_);
      return *fallback;
    }
    const json& v = doc_.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
    throw ConfigError(where_ + "." + key + " must be a nonnegative integer");
  }

  std::string text(const char* key, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(key)) {
      if (!fallback) throw ConfigError("missing key '" + std::string(key) + "' in " + where_);
      return *fallback;
    }
    const json& v = doc_.at(key);
    if (!v.is_string()) throw ConfigError(where_ + "." + key + " must be a string");
    return v.get<std::string>();
  }

 private:
  double required(const char* key, std::optional<double> fallback) const {
    if (!fallback) throw ConfigError("missing key '" + std::string(key) + "' in " + where_);
    return *fallback;
  }

  const json& doc_;
  std::string where_;
};

void expect_command(const json& doc, const std::string& command) {
  if (!doc.is_object() || !doc.contains("command") || !doc.at("command").is_string()) {
    throw ConfigError("config needs a string \"command\" field");
  }
  if (doc.at("command").get<std::string>() != command) {
    throw ConfigError("config is for command '" + doc.at("command").get<std::string>() + "', not '" + command + "'");
  }
}

CovarianceKind covariance_kind(const std::string& name) {
  try {
    return parse_covariance_kind(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Vector vector_from(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(where + " must be an array of numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

std::string fixed(double value, int decimals = 5) { return format_fixed(value, decimals); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing " + path);
}

// ---- experiment ----------------------------------------------------------

SolverOptions solver_from(const json& doc) {
  const Section s(doc, "solver", {"max_iters", "grad_map_tol", "initial_step", "backtrack_factor", "armijo_const"});
  SolverOptions opts;
  opts.max_iters = s.count("max_iters", opts.max_iters);
  opts.grad_map_tol = s.number("grad_map_tol", opts.grad_map_tol);
  if (s.has("initial_step")) opts.initial_step = s.number("initial_step");
  opts.backtrack_factor = s.number("backtrack_factor", opts.backtrack_factor);
  opts.armijo_const = s.number("armijo_const", opts.armijo_const);
  return opts;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, std::ostream& out) {
  const json doc = load_json(config_path);
  expect_command(doc, "experiment");
  const Section s(doc, "experiment config",
                  {"command", "p", "n", "n_test", "beta", "R", "replications", "base_seed", "cov_kinds", "solver"});
  StudyConfig base;
  base.p = s.count("p", base.p);
  base.n = s.count("n", base.n);
  base.n_test = s.count("n_test", base.n_test);
  base.beta = s.number("beta", base.beta);
  base.R = s.number("R", base.R);
  base.replications = s.count("replications", base.replications);
  base.base_seed = s.count("base_seed", base.base_seed);
  if (s.has("solver")) base.solver_opts = solver_from(s.raw("solver"));

  std::vector<CovarianceKind> kinds{CovarianceKind::reciprocal, CovarianceKind::identity};
  if (s.has("cov_kinds")) {
    const json& list = s.raw("cov_kinds");
    if (!list.is_array() || list.empty()) throw ConfigError("cov_kinds must be a nonempty array");
    kinds.clear();
    for (const json& item : list) {
      if (!item.is_string()) throw ConfigError("cov_kinds entries must be strings");
      kinds.push_back(covariance_kind(item.get<std::string>()));
    }
  }

  std::optional<StudySummary> rec;
  std::optional<StudySummary> iden;
  for (CovarianceKind kind : kinds) {
    StudyConfig cfg = base;
    cfg.cov_kind = kind;
    cfg.validate();
    StudySummary summary = run_study(cfg);
    out << to_string(kind) << ": " << cfg.replications << " replications, train " << fixed(summary.mean.train_precision)
        << ", test " << fixed(summary.mean.test_precision) << ", weighted sign recovery "
        << fixed(summary.mean.sign_recovery_weighted) << (summary.mean.converged ? "" : " (some fits did not converge)")
        << '\n';
    (kind == CovarianceKind::identity ? iden : rec) = std::move(summary);
  }
  write_study_tables(out_dir, {rec ? &*rec : nullptr, iden ? &*iden : nullptr});
  out << "wrote table1.csv, table2.csv, replications.csv to " << out_dir << '\n';
  return kSuccess;
}

// ---- bounds --------------------------------------------------------------

struct BoundsRequest {
  BoundParams params;
  std::string only;  // empty, theorem, classical or extended
  std::string sweep;
  std::string trace_model = "fixed";
  std::string delta_model = "fixed";
};

void apply_bounds_config(const std::string& path, BoundsRequest& req) {
  const json doc = load_json(path);
  expect_command(doc, "bounds");
  const Section s(doc, "bounds config",
                  {"command", "n", "R", "K", "delta", "trace", "norm", "a", "only", "sweep", "trace_model",
                   "delta_model"});
  BoundParams& p = req.params;
  p.n = s.number("n", p.n);
  p.R = s.number("R", p.R);
  p.K = s.number("K", p.K);
  p.delta = s.number("delta", p.delta);
  p.trace_sigma = s.number("trace", p.trace_sigma);
  p.norm_sigma = s.number("norm", p.norm_sigma);
  p.log_n_constant_a = s.number("a", p.log_n_constant_a);
  req.only = s.text("only", req.only);
  req.sweep = s.text("sweep", req.sweep);
  req.trace_model = s.text("trace_model", req.trace_model);
  req.delta_model = s.text("delta_model", req.delta_model);
}

struct SweepRange {
  double from;
  double to;
  std::size_t steps;
};

SweepRange parse_sweep(const std::string& spec) {
  // n=a:b:steps
  if (spec.rfind("n=", 0) != 0) throw ConfigError("sweep must look like n=a:b:steps");
  std::string body = spec.substr(2);
  std::replace(body.begin(), body.end(), ':', ' ');
  std::istringstream in(body);
  SweepRange range{};
  double steps = 0.0;
  if (!(in >> range.from >> range.to >> steps) || !(in >> std::ws).eof()) {
    throw ConfigError("sweep must look like n=a:b:steps");
  }
  if (!(range.from >= 1.0) || !(range.to >= range.from) || steps < 1.0 || steps != std::floor(steps)) {
    throw ConfigError("sweep needs 1 <= a <= b and a positive integer step count");
  }
  range.steps = static_cast<std::size_t>(steps);
  return range;
}

std::optional<BoundReport> try_bound(BoundKind kind, const BoundParams& params) {
  switch (kind) {
    case BoundKind::theorem_main:
      if (params.delta > 1.0 / 6.0) return std::nullopt;
      return bound_theorem(params);
    case BoundKind::classical: return bound_classical(params);
    case BoundKind::extended_classical: return bound_extended(params);
  }
  return std::nullopt;
}

std::vector<BoundKind> selected_kinds(const std::string& only) {
  if (only.empty() || only == "all") {
    return {BoundKind::theorem_main, BoundKind::classical, BoundKind::extended_classical};
  }
  for (BoundKind kind : {BoundKind::theorem_main, BoundKind::classical, BoundKind::extended_classical}) {
    if (to_string(kind) == only) return {kind};
  }
  throw ConfigError("--only must be theorem, classical, extended or all");
}

int cmd_bounds(BoundsRequest req, std::ostream& out) {
  const std::vector<BoundKind> kinds = selected_kinds(req.only);
  if (req.trace_model != "fixed" && req.trace_model != "n_over_log_n") {
    throw ConfigError("trace_model must be fixed or n_over_log_n");
  }
  if (req.delta_model != "fixed" && req.delta_model != "inv_n2") throw ConfigError("delta_model must be fixed or inv_n2");
  if (kinds.size() == 1 && kinds.front() == BoundKind::theorem_main && req.delta_model == "fixed" &&
      req.params.delta > 1.0 / 6.0) {
    throw std::domain_error("the theorem bound requires delta <= 1/6");
  }

  auto params_at = [&](double n) {
    BoundParams p = req.params;
    p.n = n;
    if (req.trace_model == "n_over_log_n") p.trace_sigma = p.norm_sigma * n / std::log(n);
    if (req.delta_model == "inv_n2") p.delta = 1.0 / (n * n);
    p.validate();
    return p;
  };

  if (!req.sweep.empty()) {
    const SweepRange range = parse_sweep(req.sweep);
    out << "n,trace_sigma,delta";
    for (BoundKind kind : kinds) out << ',' << to_string(kind) << "_total";
    out << "\r\n";
    for (std::size_t k = 0; k < range.steps; ++k) {
      const double fraction = range.steps == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(range.steps - 1);
      const double n = std::exp(std::log(range.from) + fraction * (std::log(range.to) - std::log(range.from)));
      const BoundParams p = params_at(n);
      char head[128];
      std::snprintf(head, sizeof head, "%.6g,%.6g,%.6g", n, p.trace_sigma, p.delta);
      out << head;
      for (BoundKind kind : kinds) {
        const std::optional<BoundReport> report = try_bound(kind, p);
        out << ',' << (report ? fixed(report->total) : std::string());
      }
      out << "\r\n";
    }
    return kSuccess;
  }

  const BoundParams p = params_at(req.params.n);
  char line[160];
  std::snprintf(line, sizeof line, "n=%.6g R=%.6g K=%.6g delta=%.6g tr(Sigma)=%.6g |Sigma|=%.6g r(Sigma)=%.6g\n", p.n,
                p.R, p.K, p.delta, p.trace_sigma, p.norm_sigma, effective_rank(p.trace_sigma, p.norm_sigma));
  out << line;
  std::snprintf(line, sizeof line, "%-10s %-28s %14s\n", "bound", "term", "value");
  out << line;
  for (BoundKind kind : kinds) {
    const std::optional<BoundReport> report = try_bound(kind, p);
    const std::string name(to_string(kind));
    if (!report) {
      std::snprintf(line, sizeof line, "%-10s %-28s %14s\n", name.c_str(), "(requires delta <= 1/6)", "-");
      out << line;
      continue;
    }
    for (const BoundTerm& term : report->terms) {
      std::snprintf(line, sizeof line, "%-10s %-28s %14.6f\n", name.c_str(), term.name.c_str(), term.value);
      out << line;
    }
    std::snprintf(line, sizeof line, "%-10s %-28s %14.6f  confidence %.6f\n", name.c_str(), "total", report->total,
                  report->confidence);
    out << line;
  }
  return kSuccess;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const std::string& suite_name, const std::string& csv_path, std::ostream& out) {
  CheckSuite suite;
  try {
    suite = parse_check_suite(suite_name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(e.what()) + " (expected all, hermite, smoothing, ito, moments or g)");
  }
  const std::vector<CheckReport> reports = run_check_suite(suite);
  out << format_check_report(reports);
  if (!csv_path.empty()) write_file(csv_path, check_report_csv(reports));
  const bool all_passed =
      std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
  return all_passed ? kSuccess : kCheckFailure;
}

// ---- deviation -----------------------------------------------------------

int cmd_deviation(const std::string& config_path, const std::string& out_path, std::ostream& out,
                  std::ostream& err) {
  const json doc = load_json(config_path);
  expect_command(doc, "deviation");
  const Section s(doc, "deviation config",
                  {"command", "p", "n", "cov_kind", "beta", "R", "K", "delta", "replicates", "seed", "starts",
                   "budget", "ascent_iterations", "grid_resolution"});
  const std::size_t p = s.count("p");
  const std::size_t n = s.count("n");
  const CovarianceKind kind = covariance_kind(s.text("cov_kind"));
  if (kind == CovarianceKind::custom) throw ConfigError("deviation configs support reciprocal or identity covariance");
  const double beta = s.number("beta", 1.0);
  const double R = s.number("R");
  const double K = s.number("K", std::numbers::sqrt2);
  const double delta = s.number("delta");
  const std::size_t replicates = s.count("replicates");
  const std::uint64_t seed = s.count("seed", 1);
  const std::size_t starts = s.count("starts", 2);
  const std::size_t budget = s.count("budget", 5000);
  AscentOptions ascent;
  ascent.iterations = s.count("ascent_iterations", 100);
  const std::size_t grid_resolution = s.count("grid_resolution", p == 1 ? 4001 : 201);
  if (p == 0 || n == 0 || replicates == 0) throw ConfigError("p, n and replicates must be positive");
  if (budget == 0) throw ConfigError("budget must be positive");
  const bool with_grid = p <= 2 && grid_resolution > 0;

  const CovarianceSpec cov = make_covariance(kind, p);
  BoundParams params;
  params.n = static_cast<double>(n);
  params.R = R;
  params.K = K;
  params.delta = delta;
  params.trace_sigma = cov.trace();
  params.norm_sigma = cov.spectral_norm();
  const BoundReport classical = bound_classical(params);
  const std::optional<BoundReport> theorem = try_bound(BoundKind::theorem_main, params);
  if (!theorem) throw ConfigError("the theorem bound requires delta <= 1/6");

  struct Row {
    DeviationEstimate search;
    std::optional<DeviationEstimate> grid;
  };
  std::vector<Row> rows(replicates);
  parallel_for(replicates, [&](std::size_t r) {
    GenerativeConfig gen;
    gen.p = p;
    gen.n = n;
    gen.cov = cov;
    gen.beta = beta;
    gen.seed = derive_seed(seed, r);
    const GeneratedData data = generate_dataset(gen);
    rows[r].search = sup_deviation_search(data.data, gen, R, starts, budget, derive_seed(gen.seed, "search"), ascent);
    if (with_grid) rows[r].grid = sup_deviation_grid(data.data, gen, R, grid_resolution);
  });

  std::ostringstream csv;
  csv << "replicate,sup_estimate,pop_risk_stderr,theorem_bound,classical_bound,holds_theorem"
      << (with_grid ? ",grid_sup" : "") << "\r\n";
  std::size_t holds = 0;
  for (std::size_t r = 0; r < replicates; ++r) {
    const bool ok = rows[r].search.sup_value <= theorem->total;
    holds += ok ? 1 : 0;
    csv << r << ',' << fixed(rows[r].search.sup_value) << ',' << fixed(rows[r].search.pop_risk_stderr) << ','
        << fixed(theorem->total) << ',' << fixed(classical.total) << ',' << (ok ? "true" : "false");
    if (with_grid) csv << ',' << fixed(rows[r].grid->sup_value);
    csv << "\r\n";
  }
  const double frequency = static_cast<double>(holds) / static_cast<double>(replicates);
  std::ostringstream summary;
  summary << "theorem bound held in " << holds << "/" << replicates << " replicates (frequency " << fixed(frequency)
          << ", stated confidence " << fixed(theorem->confidence) << ")\n";
  if (out_path.empty()) {
    out << csv.str();
    err << summary.str();
  } else {
    write_file(out_path, csv.str());
    out << summary.str();
  }
  return kSuccess;
}

// ---- generate ------------------------------------------------------------

int cmd_generate(const std::string& config_path, const std::string& out_path, std::ostream& out) {
  const json doc = load_json(config_path);
  expect_command(doc, "generate");
  const Section s(doc, "generate config", {"command", "p", "n", "cov_kind", "eigenvalues", "beta", "theta_star", "seed"});
  GenerativeConfig gen;
  gen.p = s.count("p");
  gen.n = s.count("n");
  const CovarianceKind kind = covariance_kind(s.text("cov_kind", std::string("reciprocal")));
  std::optional<Vector> eigenvalues;
  if (s.has("eigenvalues")) eigenvalues = vector_from(s.raw("eigenvalues"), "eigenvalues");
  gen.cov = make_covariance(kind, gen.p, eigenvalues);
  gen.beta = s.number("beta", 1.0);
  gen.seed = s.count("seed", 0);
  if (s.has("theta_star")) {
    const json& star = s.raw("theta_star");
    if (star.is_string()) {
      if (star.get<std::string>() != "uniform_sphere") throw ConfigError("theta_star must be an array or \"uniform_sphere\"");
    } else {
      gen.theta_star = vector_from(star, "theta_star");
    }
  }
  gen.validate();
  const GeneratedData data = generate_dataset(gen);
  write_dataset(out_path, data);
  out << "wrote " << gen.n << " examples of dimension " << gen.p << " to " << out_path << '\n';
  return kSuccess;
}

void configure_threads(std::size_t flag_value) {
  std::size_t workers = flag_value;
  if (const char* env = std::getenv("ULLN_THREADS"); env && *env) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ConfigError("ULLN_THREADS must be a nonnegative integer");
    workers = static_cast<std::size_t>(parsed);
  }
  set_worker_count(workers);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ball-constrained logistic regression: bounds, deviation search, experiments and checks", "ulln"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = machine parallelism; ULLN_THREADS overrides)");

  std::string config_path;
  std::string out_path;
  std::string out_dir = "results";

  CLI::App* experiment = app.add_subcommand("experiment", "Replicated prediction and sign-recovery study");
  experiment->add_option("config", config_path, "JSON study config")->required();
  experiment->add_option("--out", out_dir, "Output directory");

  BoundsRequest bounds_req;
  std::string bounds_config;
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the three uniform deviation bounds");
  bounds->add_option("--config", bounds_config, "JSON bounds config; flags given alongside override it");
  CLI::Option* n_opt = bounds->add_option("--n", bounds_req.params.n, "Sample size");
  CLI::Option* r_opt = bounds->add_option("--R", bounds_req.params.R, "Ball radius");
  CLI::Option* k_opt = bounds->add_option("--K", bounds_req.params.K, "Concentration constant");
  CLI::Option* d_opt = bounds->add_option("--delta", bounds_req.params.delta, "Failure probability");
  CLI::Option* t_opt = bounds->add_option("--trace", bounds_req.params.trace_sigma, "tr(Sigma)");
  CLI::Option* m_opt = bounds->add_option("--norm", bounds_req.params.norm_sigma, "Spectral norm of Sigma");
  CLI::Option* a_opt = bounds->add_option("--a", bounds_req.params.log_n_constant_a, "Constant of the extended bound");
  CLI::Option* only_opt = bounds->add_option("--only", bounds_req.only, "theorem, classical, extended or all");
  CLI::Option* sweep_opt = bounds->add_option("--sweep", bounds_req.sweep, "n=a:b:steps, log-spaced CSV of totals");
  CLI::Option* tm_opt = bounds->add_option("--trace-model", bounds_req.trace_model, "fixed or n_over_log_n");
  CLI::Option* dm_opt = bounds->add_option("--delta-model", bounds_req.delta_model, "fixed or inv_n2");

  std::string suite = "all";
  std::string csv_path;
  CLI::App* verify = app.add_subcommand("verify", "Run numerical checks of the analytic identities");
  verify->add_option("suite", suite, "all, hermite, smoothing, ito, moments or g");
  verify->add_option("--csv", csv_path, "Also write the report as CSV");

  CLI::App* deviation = app.add_subcommand("deviation", "Sup-deviation search against the bounds");
  deviation->add_option("config", config_path, "JSON deviation config")->required();
  deviation->add_option("--out", out_path, "CSV output file (default: stdout)");

  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic dataset in the binary format");
  generate->add_option("config", config_path, "JSON generative config")->required();
  generate->add_option("--out", out_path, "Output file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    configure_threads(threads);
    if (experiment->parsed()) return cmd_experiment(config_path, out_dir, out);
    if (bounds->parsed()) {
      if (!bounds_config.empty()) {
        // Re-read flags after the config so that explicit flags win.
        BoundsRequest from_file;
        apply_bounds_config(bounds_config, from_file);
        if (*n_opt) from_file.params.n = bounds_req.params.n;
        if (*r_opt) from_file.params.R = bounds_req.params.R;
        if (*k_opt) from_file.params.K = bounds_req.params.K;
        if (*d_opt) from_file.params.delta = bounds_req.params.delta;
        if (*t_opt) from_file.params.trace_sigma = bounds_req.params.trace_sigma;
        if (*m_opt) from_file.params.norm_sigma = bounds_req.params.norm_sigma;
        if (*a_opt) from_file.params.log_n_constant_a = bounds_req.params.log_n_constant_a;
        if (*only_opt) from_file.only = bounds_req.only;
        if (*sweep_opt) from_file.sweep = bounds_req.sweep;
        if (*tm_opt) from_file.trace_model = bounds_req.trace_model;
        if (*dm_opt) from_file.delta_model = bounds_req.delta_model;
        bounds_req = from_file;
      }
      return cmd_bounds(bounds_req, out);
    }
    if (verify->parsed()) return cmd_verify(suite, csv_path, out);
    if (deviation->parsed()) return cmd_deviation(config_path, out_path, out, err);
    if (generate->parsed()) return cmd_generate(config_path, out_path, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnsupportedDimension& e) {
    err << "unsupported dimension: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace ulln::cli
