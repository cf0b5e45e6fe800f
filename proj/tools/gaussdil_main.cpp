// gaussdil: numerical checks for Gaussian measure dilation inequalities.
//
// Subcommands: measure, profile, check, smallball, counterexample, sweep.
// Reports go to stdout (or --out, written atomically); diagnostics to stderr.
// Exit status: 0 all checks passed (or pure reporting), 1 failure or engine
// error, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gaussdil/bodies.hpp"
#include "gaussdil/bounds.hpp"
#include "gaussdil/counterexample.hpp"
#include "gaussdil/gauss1d.hpp"
#include "gaussdil/measure.hpp"
#include "gaussdil/report.hpp"
#include "gaussdil/smallball.hpp"

namespace {

using namespace gaussdil;

struct CommonOpts {
  std::string format = "csv";
  std::string out;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int threads = 0;  // 0 = available parallelism
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out,
                  "Write the report to this path (default: stdout)");
  cmd->add_option("--samples", opts.samples, "Monte Carlo sample count")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed,
                  "RNG seed (default 0, or GAUSSDIL_SEED if set)");
  cmd->add_option("--tol", opts.tol, "Quadrature absolute tolerance")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads,
                  "Worker threads (default: available parallelism)");
}

void finalize_common(const CLI::App* cmd, CommonOpts& opts) {
  if (cmd->count("--seed") == 0) {
    if (const char* env = std::getenv("GAUSSDIL_SEED")) {
      opts.seed = std::strtoull(env, nullptr, 10);
    }
  }
  if (opts.threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    opts.threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
}

MeasureOptions measure_options(const CommonOpts& opts) {
  MeasureOptions m;
  m.quad_tol = opts.tol;
  m.mc_samples = opts.samples;
  m.seed = opts.seed;
  m.threads = opts.threads;
  return m;
}

// Grid specs look like start:stop:count; count 1 degenerates to {start}.
std::vector<double> parse_grid(const std::string& spec, const std::string& spacing) {
  double start = 0.0, stop = 0.0;
  int count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':' ||
      in.rdbuf()->in_avail() != 0) {
    throw CLI::ValidationError("grid", "expected start:stop:count, got '" +
                                           spec + "'");
  }
  if (count < 1 || !(start <= stop) ||
      (spacing == "log" && !(start > 0.0))) {
    throw CLI::ValidationError("grid", "bad grid range '" + spec + "'");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(start);
    return grid;
  }
  for (int i = 0; i < count; ++i) {
    const double frac = static_cast<double>(i) / (count - 1);
    grid.push_back(spacing == "log"
                       ? start * std::pow(stop / start, frac)
                       : start + frac * (stop - start));
  }
  grid.back() = stop;  // no rounding surprises at the endpoint
  return grid;
}

std::vector<int> parse_int_grid(const std::string& spec) {
  const std::vector<double> raw = parse_grid(spec, "log");
  std::vector<int> grid;
  for (double v : raw) {
    const int n = static_cast<int>(std::lround(v));
    if (grid.empty() || grid.back() != n) grid.push_back(n);
  }
  return grid;
}

Body load_body(const std::string& inline_json, const std::string& file) {
  if (!inline_json.empty() && !file.empty()) {
    throw CLI::ValidationError("--body", "give --body or --body-file, not both");
  }
  if (!inline_json.empty()) return body_from_json_text(inline_json);
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read body file " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return body_from_json_text(buf.str());
  }
  throw CLI::ValidationError("--body", "a body is required (--body/--body-file)");
}

GaussianVectorModel load_model(const std::string& inline_json,
                               const std::string& file) {
  if (!inline_json.empty() && !file.empty()) {
    throw CLI::ValidationError("--model",
                               "give --model or --model-file, not both");
  }
  if (!inline_json.empty()) {
    return GaussianVectorModel::from_json_text(inline_json);
  }
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read model file " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return GaussianVectorModel::from_json_text(buf.str());
  }
  throw CLI::ValidationError("--model",
                             "a model is required (--model/--model-file)");
}

// A named list of tables; most subcommands emit exactly one.
struct Report {
  std::vector<std::pair<std::string, Table>> tables;
  nlohmann::json metadata = nlohmann::json::object();
};

void emit(const Report& report, const CommonOpts& opts) {
  std::string payload;
  if (opts.format == "json") {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [name, table] : report.tables) {
      doc[name] = table_to_json(table);
    }
    for (auto it = report.metadata.begin(); it != report.metadata.end(); ++it) {
      doc[it.key()] = it.value();
    }
    payload = doc.dump(2);
    payload += '\n';
  } else {
    for (std::size_t i = 0; i < report.tables.size(); ++i) {
      const auto& [name, table] = report.tables[i];
      if (report.tables.size() > 1) {
        payload += "# table: " + name + "\n";
      }
      payload += to_csv(table);
      if (i + 1 < report.tables.size()) payload += '\n';
    }
  }
  if (opts.out.empty()) {
    std::cout << payload;
  } else {
    write_atomic(opts.out, payload);
  }
}

Table results_table(const std::vector<BoundCheckResult>& results) {
  Table t;
  t.columns = {"inequality", "body"};
  if (!results.empty()) {
    for (const auto& [name, _] : results.front().params) t.columns.push_back(name);
  }
  t.columns.insert(t.columns.end(),
                   {"lhs", "rhs", "margin", "uncertainty", "pass"});
  for (const BoundCheckResult& r : results) {
    std::vector<Table::Cell> row{r.inequality, r.body};
    for (const auto& [_, value] : r.params) row.emplace_back(value);
    row.emplace_back(r.lhs);
    row.emplace_back(r.rhs);
    row.emplace_back(r.margin);
    row.emplace_back(r.uncertainty);
    row.emplace_back(r.pass);
    t.add_row(std::move(row));
  }
  return t;
}

bool all_pass(const std::vector<BoundCheckResult>& results) {
  for (const BoundCheckResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

int run_measure(const Body& body, const CommonOpts& opts) {
  const MeasureResult res = gaussian_measure(body, measure_options(opts));
  Table t;
  t.columns = {"body", "value", "method", "uncertainty"};
  t.add_row({describe(body), res.value.value(), method_name(res.method),
             res.uncertainty});
  emit({{{"measure", std::move(t)}}, {}}, opts);
  return 0;
}

int run_profile(const Body& body, const std::string& grid_spec,
                const std::string& spacing, const std::string& method,
                const CommonOpts& opts) {
  const std::vector<double> grid = parse_grid(grid_spec, spacing);
  std::optional<Method> forced;
  if (method == "closed_form") forced = Method::closed_form;
  if (method == "quadrature") forced = Method::quadrature;
  if (method == "monte_carlo") forced = Method::monte_carlo;
  const DilationProfile profile =
      dilation_profile(body, grid, forced, measure_options(opts));
  Table t;
  t.columns = {"t", "value", "method", "std_error"};
  for (std::size_t i = 0; i < profile.t_grid.size(); ++i) {
    t.add_row({profile.t_grid[i], profile.values[i].value(),
               method_name(profile.methods[i]), profile.uncertainties[i]});
  }
  emit({{{"profile", std::move(t)}}, {}}, opts);
  return 0;
}

int run_check(const std::string& inequality, const Body& body,
              const std::string& grid_spec, const std::string& spacing,
              const CommonOpts& opts) {
  const MeasureOptions mopts = measure_options(opts);
  Report report;
  bool ok = true;
  if (inequality == "s") {
    const auto results = check_s_inequality(body, parse_grid(grid_spec, spacing), mopts);
    ok = all_pass(results);
    report.tables.emplace_back("results", results_table(results));
  } else if (inequality == "b") {
    std::vector<double> grid = parse_grid(grid_spec, spacing);
    for (double& t : grid) t = std::log(t);  // equally spaced needs log spacing
    const BInequalityReport b = check_b_inequality(body, grid, mopts);
    ok = all_pass(b.results);
    report.tables.emplace_back("results", results_table(b.results));
    if (!b.excluded_points.empty()) {
      std::cerr << "excluded log-dilations (zero measure):";
      for (double u : b.excluded_points) std::cerr << ' ' << format_double(u);
      std::cerr << '\n';
      nlohmann::json ex = nlohmann::json::array();
      for (double u : b.excluded_points) ex.push_back(u);
      report.metadata["excluded_points"] = std::move(ex);
    }
  } else if (inequality == "theorem1") {
    const auto results = check_theorem1(body, parse_grid(grid_spec, spacing), mopts);
    ok = all_pass(results);
    report.tables.emplace_back("results", results_table(results));
  } else if (inequality == "theorem2") {
    const auto results = check_theorem2(body, parse_grid(grid_spec, spacing), mopts);
    ok = all_pass(results);
    report.tables.emplace_back("results", results_table(results));
  } else if (inequality == "lemma2") {
    const auto pair = check_lemma2(body, opts.samples, opts.seed, mopts);
    const std::vector<BoundCheckResult> results{pair[0], pair[1]};
    ok = all_pass(results);
    report.tables.emplace_back("results", results_table(results));
  } else if (inequality == "theorem3") {
    const Theorem3Report t3 = check_theorem3(body, parse_grid(grid_spec, spacing),
                                             opts.samples, opts.seed, mopts);
    ok = all_pass(t3.results);
    report.tables.emplace_back("results", results_table(t3.results));
    report.metadata["sigma"] = t3.sigma;
    report.metadata["sigma_std_error"] = t3.sigma_se;
    report.metadata["notes"] = t3.notes;
    std::cerr << "sigma(K) = " << format_double(t3.sigma) << " (se "
              << format_double(t3.sigma_se) << ")\n"
              << t3.notes << '\n';
  } else if (inequality == "conjecture1") {
    const auto probes = probe_conjecture1(body, parse_grid(grid_spec, spacing), mopts);
    Table t;
    t.columns = {"body", "t", "empirical_kappa", "excluded"};
    for (const ExponentProbe& p : probes) {
      t.add_row({describe(body), p.t, p.empirical_kappa, p.excluded});
    }
    report.tables.emplace_back("probes", std::move(t));
    // A conjecture probe reports; it does not pass or fail.
  } else {
    throw CLI::ValidationError(
        "inequality", "unknown inequality '" + inequality +
                          "' (want s|b|theorem1|theorem2|lemma2|theorem3|"
                          "conjecture1)");
  }
  emit(report, opts);
  return ok ? 0 : 1;
}

int run_smallball(const GaussianVectorModel& model, const std::string& op,
                  const std::string& grid_spec, double p, double q,
                  double level, const CommonOpts& opts) {
  Report report;
  bool ok = true;
  if (op == "check") {
    const SmallBallReport sb = check_theorem4(
        model, parse_grid(grid_spec, "linear"), opts.samples, opts.seed,
        opts.threads);
    Table t;
    t.columns = {"t", "mc_prob", "std_error", "bound", "pass"};
    for (std::size_t i = 0; i < sb.t_grid.size(); ++i) {
      t.add_row({sb.t_grid[i], sb.mc_probs[i].mean, sb.mc_probs[i].std_error,
                 sb.bound[i], sb.checks[i].pass});
    }
    ok = all_pass(sb.checks);
    report.tables.emplace_back("results", std::move(t));
    report.metadata["median"] = sb.median;
    report.metadata["sigma"] = sb.sigma;
    std::cerr << "M = " << format_double(sb.median)
              << ", sigma = " << format_double(sb.sigma) << '\n';
  } else if (op == "moment") {
    const MomentResult m = moment(model, p, opts.samples, opts.seed, opts.threads);
    Table t;
    t.columns = {"p", "value", "raw_mean", "raw_std_error", "samples", "seed"};
    t.add_row({m.p, m.value, m.raw.mean, m.raw.std_error, m.raw.samples,
               m.raw.seed});
    report.tables.emplace_back("moment", std::move(t));
  } else if (op == "corollary") {
    const BoundCheckResult r =
        check_corollary(model, p, q, opts.samples, opts.seed, opts.threads);
    ok = r.pass;
    report.tables.emplace_back("results", results_table({r}));
  } else if (op == "body") {
    const double lev = level > 0.0
                           ? level
                           : median_norm(model, std::max<std::uint64_t>(
                                                    opts.samples, 10000),
                                         opts.seed, opts.threads);
    const InducedBody ib = induced_body(model, lev);
    Table t;
    t.columns = {"level", "sigma", "inradius_lower", "body"};
    t.add_row({ib.level, ib.sigma, ib.inradius_lower,
               body_to_json(ib.body).dump()});
    report.tables.emplace_back("body", std::move(t));
  } else {
    throw CLI::ValidationError("--op",
                               "unknown op (want check|moment|corollary|body)");
  }
  emit(report, opts);
  return ok ? 0 : 1;
}

int run_counterexample(double a, double t, const std::string& n_spec,
                       double fit_tol, std::uint64_t mc_samples,
                       const CommonOpts& opts) {
  Report report;

  Table gap;
  gap.columns = {"a", "w", "hazard", "gap"};
  std::vector<double> a_grid{1.0, 1.5, 2.0, 2.5, 3.0};
  bool present = false;
  for (double v : a_grid) present = present || v == a;
  if (!present) a_grid.push_back(a);
  std::sort(a_grid.begin(), a_grid.end());
  for (double v : a_grid) {
    const GapPoint p = boundary_gap(v);
    gap.add_row({p.a, p.w, p.hazard, p.gap});
  }
  report.tables.emplace_back("gap", std::move(gap));
  const double root = gap_sign_change(1.0, 2.0, 1e-6);
  report.metadata["gap_sign_change"] = root;
  std::cerr << "gap changes sign at a = " << format_double(root) << '\n';

  const double w = pair_w_for_a(a);
  const double target = gaussian_interval(a).value();
  Table fits;
  fits.columns = {"n", "x", "y", "residual"};
  int largest_feasible = 0;
  for (int n : parse_int_grid(n_spec)) {
    const SaucerFitOutcome outcome = fit_saucer(n, w, target, fit_tol);
    if (outcome.feasible) {
      fits.add_row({static_cast<std::int64_t>(n), outcome.fit->x,
                    outcome.fit->geometry.y, outcome.fit->residual});
      largest_feasible = n;
    } else {
      std::cerr << "n = " << n << " infeasible: target "
                << format_double(target) << " outside ("
                << format_double(outcome.cylinder_limit) << ", "
                << format_double(outcome.slab_limit) << ")\n";
    }
  }
  report.tables.emplace_back("fit", std::move(fits));

  const DerivativeRefutation refutation = derivative_refutation(a, t);
  Table deriv;
  deriv.columns = {"a", "w", "left_derivative", "right_derivative",
                   "derivative_gap", "t_witness", "lhs_at_t", "rhs_at_t",
                   "consequence_fails"};
  deriv.add_row({refutation.a, refutation.w, refutation.left_derivative,
                 refutation.right_derivative, refutation.derivative_gap,
                 refutation.t_witness, refutation.lhs_at_t, refutation.rhs_at_t,
                 refutation.consequence_fails});
  report.tables.emplace_back("derivative", std::move(deriv));

  Table chain;
  chain.columns = {"n", "t", "tz", "v", "tz_ge_v", "inclusion_bound",
                   "saucer_dilated", "inclusion_margin", "prediction",
                   "violation_margin", "violated"};
  bool chain_ok = true;
  if (largest_feasible >= 2) {
    const double b = a - 0.1;
    const double c = a - 0.2;
    const double d = default_chain_d(w, c, t);
    const ChainCheckReport cc = conjecture_chain_check(
        largest_feasible, a, b, c, d, t, mc_samples, opts.seed, fit_tol);
    chain.add_row({static_cast<std::int64_t>(cc.n), cc.t, cc.tz, cc.v,
                   cc.tz_ge_v, cc.inclusion_bound, cc.saucer_dilated,
                   cc.inclusion_margin, cc.prediction, cc.violation_margin,
                   cc.violated});
    chain_ok = cc.inclusion_margin >= -fit_tol;
  } else {
    std::cerr << "no feasible n in the grid; chain table empty\n";
  }
  report.tables.emplace_back("chain", std::move(chain));

  emit(report, opts);
  const bool ok = refutation.derivative_gap > 0.0 &&
                  refutation.consequence_fails && chain_ok;
  return ok ? 0 : 1;
}

int run_sweep(double a, double t, const std::string& n_spec, double fit_tol,
              const CommonOpts& opts) {
  const std::vector<int> n_grid = parse_int_grid(n_spec);
  const ViolationSweep sweep = sweep_violation(n_grid, a, t, fit_tol);
  Table table;
  table.columns = {"n", "feasible", "x", "y", "residual", "saucer_dilated",
                   "prediction", "margin", "violated"};
  for (const ViolationSweepRow& row : sweep.rows) {
    table.add_row({static_cast<std::int64_t>(row.n), row.feasible, row.x,
                   row.y, row.residual, row.saucer_dilated, row.prediction,
                   row.margin, row.violated});
  }
  Report report;
  report.tables.emplace_back("sweep", std::move(table));
  report.metadata["a"] = sweep.a;
  report.metadata["w"] = sweep.w;
  report.metadata["t"] = sweep.t;
  report.metadata["target"] = sweep.target;
  if (sweep.smallest_violating_n) {
    report.metadata["smallest_violating_n"] = *sweep.smallest_violating_n;
    std::cerr << "smallest violating n in range: "
              << *sweep.smallest_violating_n << '\n';
  } else {
    std::cerr << "no direct violation in the swept range (inconclusive, "
                 "not a failure; the derivative refutation stands)\n";
  }
  emit(report, opts);
  return 0;  // reporting subcommand: inconclusive sweeps are still reports
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Gaussian dilation inequalities"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string body_json, body_file, model_json, model_file;
  std::string grid_spec = "0.1:1.0:10";
  std::string spacing = "linear";
  std::string method = "auto";
  std::string inequality;
  std::string sb_op = "check";
  double p = 1.0, q = 0.0, level = 0.0;
  double cx_a = 3.0, cx_t = 0.99, fit_tol = 1e-9;
  std::string n_spec = "3:256:12";
  std::uint64_t cx_mc = 0;

  CLI::App* measure_cmd = app.add_subcommand("measure", "Gaussian measure of a body");
  measure_cmd->add_option("--body", body_json, "Body as inline JSON");
  measure_cmd->add_option("--body-file", body_file, "Body JSON file");
  add_common(measure_cmd, opts);

  CLI::App* profile_cmd =
      app.add_subcommand("profile", "Dilation profile t -> gamma(tK)");
  profile_cmd->add_option("--body", body_json, "Body as inline JSON");
  profile_cmd->add_option("--body-file", body_file, "Body JSON file");
  profile_cmd->add_option("--t", grid_spec, "Grid start:stop:count")
      ->capture_default_str();
  profile_cmd->add_option("--spacing", spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  profile_cmd->add_option("--method", method, "Force an engine")
      ->check(CLI::IsMember({"auto", "closed_form", "quadrature", "monte_carlo"}))
      ->capture_default_str();
  add_common(profile_cmd, opts);

  CLI::App* check_cmd = app.add_subcommand("check", "Inequality margin checks");
  check_cmd->add_option("inequality", inequality,
                        "s|b|theorem1|theorem2|lemma2|theorem3|conjecture1")
      ->required();
  check_cmd->add_option("--body", body_json, "Body as inline JSON");
  check_cmd->add_option("--body-file", body_file, "Body JSON file");
  check_cmd->add_option("--t", grid_spec, "Grid start:stop:count")
      ->capture_default_str();
  check_cmd->add_option("--spacing", spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  add_common(check_cmd, opts);

  CLI::App* sb_cmd =
      app.add_subcommand("smallball", "Small-ball and moment checks");
  sb_cmd->add_option("--model", model_json, "Model as inline JSON");
  sb_cmd->add_option("--model-file", model_file, "Model JSON file");
  sb_cmd->add_option("--op", sb_op, "check|moment|corollary|body")
      ->check(CLI::IsMember({"check", "moment", "corollary", "body"}))
      ->capture_default_str();
  sb_cmd->add_option("--t", grid_spec, "Grid start:stop:count")
      ->capture_default_str();
  sb_cmd->add_option("--p", p, "Moment order p")->capture_default_str();
  sb_cmd->add_option("--q", q, "Moment order q (corollary)")
      ->capture_default_str();
  sb_cmd->add_option("--level", level,
                     "Norm level for --op body (default: empirical median)");
  add_common(sb_cmd, opts);

  CLI::App* cx_cmd =
      app.add_subcommand("counterexample", "Boundary gap, saucer fits, chain");
  cx_cmd->add_option("--a", cx_a, "Interval halfwidth witness")
      ->capture_default_str();
  cx_cmd->add_option("--t", cx_t, "Dilation witness in (0,1)")
      ->capture_default_str();
  cx_cmd->add_option("--n", n_spec, "Dimension grid start:stop:count (log)")
      ->capture_default_str();
  cx_cmd->add_option("--fit-tol", fit_tol, "Saucer fit measure tolerance")
      ->capture_default_str();
  cx_cmd->add_option("--mc-cross", cx_mc,
                     "Cross-check the chain quadrature with this many MC samples");
  add_common(cx_cmd, opts);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Dimension sweep for a direct violation");
  sweep_cmd->add_option("--a", cx_a, "Interval halfwidth witness")
      ->capture_default_str();
  sweep_cmd->add_option("--t", cx_t, "Dilation witness in (0,1)")
      ->capture_default_str();
  sweep_cmd->add_option("--n", n_spec, "Dimension grid start:stop:count (log)")
      ->capture_default_str();
  sweep_cmd->add_option("--fit-tol", fit_tol, "Saucer fit measure tolerance")
      ->capture_default_str();
  add_common(sweep_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  finalize_common(active, opts);

  try {
    if (active == measure_cmd) {
      return run_measure(load_body(body_json, body_file), opts);
    }
    if (active == profile_cmd) {
      return run_profile(load_body(body_json, body_file), grid_spec, spacing,
                         method, opts);
    }
    if (active == check_cmd) {
      return run_check(inequality, load_body(body_json, body_file), grid_spec,
                       spacing, opts);
    }
    if (active == sb_cmd) {
      return run_smallball(load_model(model_json, model_file), sb_op, grid_spec,
                           p, q, level, opts);
    }
    if (active == cx_cmd) {
      return run_counterexample(cx_a, cx_t, n_spec, fit_tol, cx_mc, opts);
    }
    if (active == sweep_cmd) {
      return run_sweep(cx_a, cx_t, n_spec, fit_tol, opts);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
