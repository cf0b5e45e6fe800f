#include "gaussdil/counterexample.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gaussdil/gauss1d.hpp"

namespace gaussdil {

namespace {

constexpr int kMaxFitDim = 10000;

// Quadrature tolerance used inside fits: well under the fit tolerance so the
// bisection sees a near-exact measure.
double fit_quad_tol(double tol) { return std::min(1e-12, 0.1 * tol); }

}  // namespace

double pair_w_for_a(double a) {
  if (!(a > 0.0)) {
    throw std::domain_error("pair_w_for_a: a must be > 0");
  }
  const double two_tail = 2.0 * gaussian_tail(a).value();
  if (!(two_tail > 0.0 && two_tail < 1.0)) {
    throw std::domain_error("pair_w_for_a: 2(1-Phi(a)) left (0,1) at a = " +
                            std::to_string(a));
  }
  return std::sqrt(-2.0 * std::log(two_tail));
}

GapPoint boundary_gap(double a) {
  GapPoint p;
  p.a = a;
  p.w = pair_w_for_a(a);
  const double tail = gaussian_tail(a).value();
  p.hazard = std_normal_pdf(a) / tail;
  p.gap = p.w * std::exp(-0.5 * p.w * p.w) - 2.0 * std_normal_pdf(a);
  return p;
}

double gap_sign_change(double lo, double hi, double tol) {
  return find_root([](double a) { return boundary_gap(a).gap; }, lo, hi, tol);
}

std::vector<LemmaLlnRow> check_lemma4(const std::function<double(int)>& u_of_n,
                                      std::span<const int> n_grid) {
  if (n_grid.empty()) {
    throw std::invalid_argument("check_lemma4: empty n grid");
  }
  int prev = 0;
  std::vector<LemmaLlnRow> rows;
  rows.reserve(n_grid.size());
  for (int n : n_grid) {
    if (n <= prev) {
      throw std::invalid_argument("check_lemma4: n grid must increase");
    }
    prev = n;
    LemmaLlnRow row;
    row.n = n;
    row.radius = u_of_n(n);
    if (!(row.radius >= 0.0) || !std::isfinite(row.radius)) {
      throw std::domain_error("check_lemma4: u(n) must be finite and >= 0");
    }
    row.ratio = row.radius / std::sqrt(static_cast<double>(n));
    row.measure = chi_square_cdf(n, row.radius * row.radius).value();
    rows.push_back(row);
  }
  return rows;
}

SaucerFitOutcome fit_saucer(int n, double w, double target, double tol) {
  if (n < 2) throw std::invalid_argument("fit_saucer: n must be >= 2");
  if (n > kMaxFitDim) {
    throw std::invalid_argument("fit_saucer: n capped at 10000");
  }
  if (!(w > 0.0)) throw std::invalid_argument("fit_saucer: w must be > 0");
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("fit_saucer: target must lie in (0, 1)");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("fit_saucer: tol must be > 0");

  SaucerFitOutcome out;
  // Endpoint measures: x -> 0+ recovers the slab, x -> w- the capped
  // cylinder B(0,w) x (-w,w).
  out.slab_limit = gaussian_interval(w).value();
  out.cylinder_limit =
      chi_square_cdf(n - 1, w * w).value() * gaussian_interval(w).value();
  if (!(out.slab_limit > target && out.cylinder_limit < target)) {
    return out;  // infeasible; both endpoint measures are in the outcome
  }

  const double qtol = fit_quad_tol(tol);
  auto measure_at = [&](double x) {
    return saucer_quadrature(n, w, x, qtol, 0.0).value();
  };

  double lo = w * 1e-9;          // measure near the slab limit
  double hi = w * (1.0 - 1e-9);  // measure near the cylinder limit
  double mid = 0.5 * (lo + hi);
  double residual = measure_at(mid) - target;
  for (int iter = 0; iter < 200 && std::abs(residual) > tol; ++iter) {
    // Measure decreases in x: positive residual means x must grow.
    if (residual > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next <= lo || next >= hi) break;  // bracket exhausted in doubles
    mid = next;
    residual = measure_at(mid) - target;
  }
  if (std::abs(residual) > tol) {
    throw std::runtime_error(
        "fit_saucer: bisection stalled at residual " + std::to_string(residual) +
        " (n = " + std::to_string(n) + ")");
  }
  SaucerFit fit;
  fit.n = n;
  fit.w = w;
  fit.target = target;
  fit.x = mid;
  fit.residual = residual;
  fit.geometry = saucer_geometry(w, mid);
  out.feasible = true;
  out.fit = fit;
  return out;
}

LevelRadii level_radii(const SaucerFit& fit, double b, double c, double d) {
  const double w = fit.w;
  if (!(w > b && b > c && c > d && d > 0.0)) {
    throw std::domain_error("level_radii: need w > b > c > d > 0");
  }
  LevelRadii out;
  out.b = b;
  out.c = c;
  out.d = d;
  out.u = saucer_level_radius(fit.geometry, b);
  out.v = saucer_level_radius(fit.geometry, c);
  out.z = saucer_level_radius(fit.geometry, d);
  // The closed form must invert the profile exactly.
  const double x = fit.x;
  for (auto [r, h] : {std::pair{out.u, b}, {out.v, c}, {out.z, d}}) {
    if (std::abs(saucer_profile(w, x, r) - h) > 1e-10) {
      throw std::logic_error("level_radii: closed form disagrees with profile");
    }
  }
  return out;
}

DerivativeRefutation derivative_refutation(double a, double t_witness) {
  if (!(t_witness > 0.0 && t_witness < 1.0)) {
    throw std::domain_error("derivative_refutation: witness t must be in (0,1)");
  }
  const GapPoint gp = boundary_gap(a);
  if (!(gp.gap > 0.0)) {
    throw std::domain_error(
        "derivative_refutation: requires boundary_gap(a) > 0; a = " +
        std::to_string(a) + " gives gap " + std::to_string(gp.gap) +
        " (pick larger a)");
  }
  DerivativeRefutation out;
  out.a = a;
  out.w = gp.w;
  // gamma_2(B(0,tw)) = 1 - e^{-t^2 w^2 / 2}; derivative at t=1 is w^2 e^{-w^2/2}.
  out.left_derivative = gp.w * gp.w * std::exp(-0.5 * gp.w * gp.w);
  // gamma_1 of (-(a-(1-t)w), a-(1-t)w) differentiates to 2 w phi(a) at t=1.
  out.right_derivative = 2.0 * gp.w * std_normal_pdf(a);
  out.derivative_gap = out.left_derivative - out.right_derivative;
  out.equality_residual_at_1 =
      (1.0 - std::exp(-0.5 * gp.w * gp.w)) - gaussian_interval(a).value();

  auto consequence = [&](double t) {
    const double lhs = 1.0 - std::exp(-0.5 * t * t * gp.w * gp.w);
    const double halfwidth = a - (1.0 - t) * gp.w;
    const double rhs =
        halfwidth <= 0.0 ? 0.0 : gaussian_interval(halfwidth).value();
    return std::pair{lhs, rhs};
  };

  // Since the left derivative is the larger one at t = 1 and the sides agree
  // there, the consequence must fail just below 1. Walk the witness toward 1
  // if the supplied t is still too coarse.
  double t = t_witness;
  for (int i = 0; i < 8; ++i) {
    const auto [lhs, rhs] = consequence(t);
    out.t_witness = t;
    out.lhs_at_t = lhs;
    out.rhs_at_t = rhs;
    out.consequence_fails = lhs < rhs;
    if (out.consequence_fails) break;
    t = 0.5 * (1.0 + t);
  }
  return out;
}

double default_chain_d(double w, double c, double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("default_chain_d: t must be in (0,1)");
  }
  if (!(c > 0.0 && c < w)) {
    throw std::domain_error("default_chain_d: need 0 < c < w");
  }
  // t > (w-c)/(w-d)  <=>  d < w - (w-c)/t; back off by a hair (or halve
  // when the room is tiny) so the strict inequality survives rounding.
  const double d_max = w - (w - c) / t;
  if (!(d_max > 0.0)) {
    throw std::domain_error(
        "default_chain_d: no valid d; t must exceed (w-c)/w = " +
        std::to_string((w - c) / w));
  }
  return d_max - std::min(0.01, 0.5 * d_max);
}

ChainCheckReport conjecture_chain_check(int n, double a, double b, double c,
                                        double d, double t,
                                        std::uint64_t mc_samples,
                                        std::uint64_t seed, double fit_tol) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("conjecture_chain_check: t must be in (0,1)");
  }
  const double w = pair_w_for_a(a);
  if (!(w > b && b > c && c > d && d > 0.0)) {
    throw std::domain_error("conjecture_chain_check: need w > b > c > d > 0");
  }
  if (!(t > (w - c) / (w - d))) {
    throw std::domain_error(
        "conjecture_chain_check: need t > (w-c)/(w-d) = " +
        std::to_string((w - c) / (w - d)));
  }
  const double target = gaussian_interval(a).value();  // = gamma_2(B(0,w))
  const SaucerFitOutcome outcome = fit_saucer(n, w, target, fit_tol);
  if (!outcome.feasible) {
    throw std::domain_error(
        "conjecture_chain_check: fit infeasible at n = " + std::to_string(n) +
        " (slab limit " + std::to_string(outcome.slab_limit) +
        ", cylinder limit " + std::to_string(outcome.cylinder_limit) + ")");
  }
  const SaucerFit& fit = *outcome.fit;
  const LevelRadii radii = level_radii(fit, b, c, d);

  ChainCheckReport report;
  report.n = n;
  report.a = a;
  report.b = b;
  report.c = c;
  report.d = d;
  report.t = t;
  report.w = w;
  report.x = fit.x;
  report.u = radii.u;
  report.v = radii.v;
  report.z = radii.z;
  report.tz = t * radii.z;
  report.tz_ge_v = report.tz >= radii.v;

  // Inclusion B(0,z) x (-d,d) inside K_n dilates to a product lower bound.
  report.inclusion_bound =
      chi_square_cdf(n - 1, report.tz * report.tz).value() *
      gaussian_interval(t * d).value();
  const double qtol = fit_quad_tol(fit_tol);
  report.saucer_dilated =
      saucer_quadrature(n, t * w, t * fit.x, qtol, 0.0).value();
  report.inclusion_margin = report.saucer_dilated - report.inclusion_bound;
  report.prediction = 1.0 - std::exp(-0.5 * t * t * w * w);
  report.violation_margin = report.saucer_dilated - report.prediction;
  report.violated = report.violation_margin > 0.0;

  if (mc_samples > 0) {
    report.mc_cross = gaussian_measure_mc(
        Body(FlyingSaucer(n, t * w, t * fit.x)), mc_samples, seed, 1);
  }
  return report;
}

ViolationSweep sweep_violation(std::span<const int> n_grid, double a, double t,
                               double fit_tol) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::domain_error("sweep_violation: t must be in (0,1)");
  }
  ViolationSweep sweep;
  sweep.a = a;
  sweep.t = t;
  sweep.w = pair_w_for_a(a);
  sweep.target = gaussian_interval(a).value();
  const double prediction = 1.0 - std::exp(-0.5 * t * t * sweep.w * sweep.w);
  for (int n : n_grid) {
    ViolationSweepRow row;
    row.n = n;
    row.prediction = prediction;
    const SaucerFitOutcome outcome = fit_saucer(n, sweep.w, sweep.target, fit_tol);
    row.feasible = outcome.feasible;
    if (outcome.feasible) {
      row.x = outcome.fit->x;
      row.y = outcome.fit->geometry.y;
      row.residual = outcome.fit->residual;
      row.saucer_dilated =
          saucer_quadrature(n, t * sweep.w, t * row.x, fit_quad_tol(fit_tol), 0.0)
              .value();
      row.margin = row.saucer_dilated - prediction;
      row.violated = row.margin > 0.0;
      if (row.violated && !sweep.smallest_violating_n) {
        sweep.smallest_violating_n = n;
      }
    }
    sweep.rows.push_back(row);
  }
  return sweep;
}

}  // namespace gaussdil
