#include "gaussdil/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gaussdil {

namespace {

struct MeasuredValue {
  double value = 0.0;
  double uncertainty = 0.0;
};

MeasuredValue measure_of(const Body& body, const MeasureOptions& opts) {
  const MeasureResult res = gaussian_measure(body, opts);
  return {res.value.value(), res.uncertainty};
}

void require_increasing_in(std::span<const double> grid, double lo, double hi,
                           const char* who) {
  if (grid.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty grid");
  }
  double prev = lo;
  for (double t : grid) {
    if (!(t > lo && t <= hi) || !(t > prev)) {
      throw std::invalid_argument(std::string(who) +
                                  ": grid must be strictly increasing within (" +
                                  std::to_string(lo) + ", " + std::to_string(hi) +
                                  "]");
    }
    prev = t;
  }
}

// Hypothesis gamma_n(K) <= 1/2, with slack for sampling noise.
void require_half_measure(const MeasuredValue& gamma, const Body& body,
                          const char* who) {
  const double slack = std::max(1e-12, 3.0 * gamma.uncertainty);
  if (gamma.value > 0.5 + slack) {
    throw std::domain_error(std::string(who) + ": hypothesis gamma(K) <= 1/2 " +
                            "fails for " + describe(body) +
                            " (measured gamma = " + std::to_string(gamma.value) +
                            ")");
  }
}

}  // namespace

BoundCheckResult make_bound_check(
    std::string inequality, std::vector<std::pair<std::string, double>> params,
    std::string body, double lhs, double rhs, double uncertainty) {
  BoundCheckResult r;
  r.inequality = std::move(inequality);
  r.params = std::move(params);
  r.body = std::move(body);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.uncertainty = uncertainty;
  if (!std::isfinite(r.margin)) {
    throw std::runtime_error("bound check '" + r.inequality +
                             "': non-finite margin");
  }
  r.pass = r.margin >= -(3.0 * uncertainty + kDeterministicSlack);
  return r;
}

std::vector<BoundCheckResult> check_s_inequality(const Body& body,
                                                 std::span<const double> t_grid,
                                                 const MeasureOptions& opts) {
  require_increasing_in(t_grid, 0.0, 1.0, "check_s_inequality");
  const MeasuredValue gamma = measure_of(body, opts);
  if (!(gamma.value > 0.0 && gamma.value < 1.0)) {
    throw std::domain_error(
        "check_s_inequality: need 0 < gamma(K) < 1 to define the matching "
        "slab, got " + std::to_string(gamma.value));
  }
  // Matching slab halfwidth: 2 Phi(a) - 1 = gamma(K).
  const double a = find_root(
      [&](double u) { return gaussian_interval(u).value() - gamma.value; },
      0.0, 40.0, 1e-12);
  const std::string id = describe(body);
  std::vector<BoundCheckResult> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const MeasuredValue lhs = measure_of(dilate(body, t), opts);
    const double rhs = gaussian_interval(t * a).value();
    // The rhs inherits noise from a when gamma(K) itself was sampled.
    const double da_sensitivity =
        t * std_normal_pdf(t * a) / std::max(std_normal_pdf(a), 1e-300);
    const double unc = lhs.uncertainty + da_sensitivity * gamma.uncertainty;
    out.push_back(make_bound_check("s_inequality", {{"t", t}}, id, lhs.value,
                                   rhs, unc));
  }
  return out;
}

BInequalityReport check_b_inequality(const Body& body,
                                     std::span<const double> log_grid,
                                     const MeasureOptions& opts) {
  if (log_grid.size() < 3) {
    throw std::invalid_argument(
        "check_b_inequality: need at least 3 grid points");
  }
  const double h = log_grid[1] - log_grid[0];
  if (!(h > 0.0)) {
    throw std::invalid_argument("check_b_inequality: grid must increase");
  }
  for (std::size_t i = 1; i < log_grid.size(); ++i) {
    const double step = log_grid[i] - log_grid[i - 1];
    if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw std::invalid_argument(
          "check_b_inequality: grid must be equally spaced in log-dilation");
    }
  }

  BInequalityReport report;
  const std::string id = describe(body);
  std::vector<double> log_measure(log_grid.size());
  std::vector<double> rel_unc(log_grid.size());
  std::vector<bool> usable(log_grid.size());
  for (std::size_t i = 0; i < log_grid.size(); ++i) {
    const MeasuredValue m = measure_of(dilate(body, std::exp(log_grid[i])), opts);
    if (m.value <= 0.0) {
      usable[i] = false;
      report.excluded_points.push_back(log_grid[i]);
      continue;
    }
    usable[i] = true;
    log_measure[i] = std::log(m.value);
    rel_unc[i] = m.uncertainty / m.value;
  }
  for (std::size_t i = 1; i + 1 < log_grid.size(); ++i) {
    if (!usable[i - 1] || !usable[i] || !usable[i + 1]) continue;
    const double second_diff =
        log_measure[i - 1] - 2.0 * log_measure[i] + log_measure[i + 1];
    const double unc = rel_unc[i - 1] + 2.0 * rel_unc[i] + rel_unc[i + 1];
    // Concavity asks second_diff <= 0; cast as lhs <= rhs = 0.
    report.results.push_back(make_bound_check(
        "b_inequality", {{"u", log_grid[i]}}, id, second_diff, 0.0, unc));
  }
  return report;
}

std::vector<BoundCheckResult> check_theorem1(const Body& body,
                                             std::span<const double> t_grid,
                                             const MeasureOptions& opts) {
  require_increasing_in(t_grid, 0.0, 0.5, "check_theorem1");
  const MeasuredValue gamma = measure_of(body, opts);
  require_half_measure(gamma, body, "check_theorem1");
  const double w = inradius(body);
  const double exponent = std::numbers::ln2 / 8.0 * w * w;
  const std::string id = describe(body);
  std::vector<BoundCheckResult> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const MeasuredValue lhs = measure_of(dilate(body, t), opts);
    const double factor = std::pow(t, exponent);
    const double rhs = factor * gamma.value;
    const double unc = lhs.uncertainty + factor * gamma.uncertainty;
    out.push_back(
        make_bound_check("theorem1", {{"t", t}}, id, lhs.value, rhs, unc));
  }
  return out;
}

std::vector<BoundCheckResult> check_theorem2(const Body& body,
                                             std::span<const double> s_grid,
                                             const MeasureOptions& opts) {
  require_increasing_in(s_grid, 0.0, 1.0, "check_theorem2");
  const MeasuredValue gamma = measure_of(body, opts);
  require_half_measure(gamma, body, "check_theorem2");
  const double w = inradius(body);
  const double exponent = 0.25 * w * w;
  const std::string id = describe(body);
  std::vector<BoundCheckResult> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    const MeasuredValue lhs = measure_of(dilate(body, s), opts);
    const double factor = std::pow(2.0 * s, exponent);
    const double rhs = factor * gamma.value;
    const double unc = lhs.uncertainty + factor * gamma.uncertainty;
    out.push_back(
        make_bound_check("theorem2", {{"s", s}}, id, lhs.value, rhs, unc));
  }
  return out;
}

std::array<BoundCheckResult, 2> check_lemma2(const Body& body,
                                             std::uint64_t samples,
                                             std::uint64_t seed,
                                             const MeasureOptions& opts) {
  const int n = ambient_dim(body);
  if (n < 2) {
    throw std::invalid_argument("check_lemma2: ambient dimension must be >= 2");
  }
  const MonteCarloEstimate sigma =
      spherical_measure_mc(body, samples, seed, opts.threads);
  const MeasuredValue gamma =
      measure_of(dilate(body, std::sqrt(static_cast<double>(n))), opts);
  const std::string id = describe(body);
  const BoundCheckResult direct = make_bound_check(
      "lemma2", {{"side", 0.0}}, id, sigma.mean / 60.0, gamma.value,
      sigma.std_error / 60.0 + gamma.uncertainty);
  const BoundCheckResult complement = make_bound_check(
      "lemma2", {{"side", 1.0}}, id, (1.0 - sigma.mean) / 60.0,
      1.0 - gamma.value, sigma.std_error / 60.0 + gamma.uncertainty);
  return {direct, complement};
}

Theorem3Report check_theorem3(const Body& body, std::span<const double> t_grid,
                              std::uint64_t samples, std::uint64_t seed,
                              const MeasureOptions& opts) {
  require_increasing_in(t_grid, 0.0, 1.0, "check_theorem3");
  const int n = ambient_dim(body);
  if (n < 2) {
    throw std::invalid_argument("check_theorem3: ambient dimension must be >= 2");
  }
  Theorem3Report report;
  const MonteCarloEstimate sigma =
      spherical_measure_mc(body, samples, seed, opts.threads);
  report.sigma = sigma.mean;
  report.sigma_se = sigma.std_error;
  if (sigma.mean - 3.0 * sigma.std_error > 0.5) {
    throw std::domain_error(
        "check_theorem3: hypothesis sigma(K) <= 1/2 fails for " +
        describe(body) + " (estimate " + std::to_string(sigma.mean) + ")");
  }
  const double w = inradius(body);
  const double root = std::max(0.0, std::sqrt(static_cast<double>(n)) * w - 6.0);
  const double exponent = 0.25 * root * root;
  report.notes =
      "rhs exponent follows the statement form (sqrt(n)w-6)_+^2/4; the proof's "
      "final display uses (sqrt(n)w-5)_+^2 with no 1/4 -- both recorded, "
      "statement enforced";
  const std::string id = describe(body);
  for (double t : t_grid) {
    const MonteCarloEstimate est =
        spherical_measure_mc(dilate(body, t), samples, seed, opts.threads);
    const double rhs = std::pow(12.0 * t, exponent);
    BoundCheckResult r =
        make_bound_check("theorem3", {{"t", t}}, id, est.mean, rhs,
                         est.std_error);
    if (rhs >= 1.0) r.pass = true;  // probability lhs cannot exceed 1
    report.results.push_back(std::move(r));
  }
  return report;
}

std::vector<ExponentProbe> probe_conjecture1(const Body& body,
                                             std::span<const double> t_grid,
                                             const MeasureOptions& opts) {
  require_increasing_in(t_grid, 0.0, 1.0, "probe_conjecture1");
  for (double t : t_grid) {
    if (t == 1.0) {
      throw std::invalid_argument(
          "probe_conjecture1: t = 1 has no dilation exponent");
    }
  }
  const MeasuredValue gamma = measure_of(body, opts);
  require_half_measure(gamma, body, "probe_conjecture1");
  if (!(gamma.value > 0.0)) {
    throw std::domain_error("probe_conjecture1: gamma(K) vanished numerically");
  }
  const double w = inradius(body);
  std::vector<ExponentProbe> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    ExponentProbe probe;
    probe.t = t;
    const MeasuredValue m = measure_of(dilate(body, t), opts);
    if (m.value <= 0.0) {
      probe.excluded = true;
    } else {
      probe.empirical_kappa =
          std::log(m.value / gamma.value) / (w * w * std::log(t));
    }
    out.push_back(probe);
  }
  return out;
}

}  // namespace gaussdil
