#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gaussdil/bodies.hpp"
#include "gaussdil/measure.hpp"

namespace gaussdil {

// The interval (-a, a) and the planar disc B(0, w) paired by equal Gaussian
// measure, with their boundary measures compared.
struct GapPoint {
  double a = 0.0;
  double w = 0.0;       // pair_w_for_a(a)
  double gap = 0.0;     // w e^{-w^2/2} - 2 phi(a)
  double hazard = 0.0;  // phi(a) / (1 - Phi(a)); gap > 0 iff w > hazard
};

// w with gamma_2(B(0,w)) = gamma_1((-a,a)), i.e. w = sqrt(-2 ln(2(1-Phi(a)))).
double pair_w_for_a(double a);

GapPoint boundary_gap(double a);

// Root of a -> boundary_gap(a).gap on [lo, hi], bisection to tolerance tol.
double gap_sign_change(double lo, double hi, double tol);

struct LemmaLlnRow {
  int n = 0;
  double radius = 0.0;   // u(n)
  double ratio = 0.0;    // u(n) / sqrt(n)
  double measure = 0.0;  // gamma_n(B(0, u(n))) = chi_square_cdf(n, u(n)^2)
};

// Tabulates the law-of-large-numbers scaling of gamma_n(B(0, u(n))) along an
// increasing n grid, exactly via the chi-square CDF.
std::vector<LemmaLlnRow> check_lemma4(const std::function<double(int)>& u_of_n,
                                      std::span<const int> n_grid);

struct SaucerFit {
  int n = 0;
  double w = 0.0;
  double target = 0.0;
  double x = 0.0;
  double residual = 0.0;  // gamma_n(K_n(x)) - target
  SaucerGeometry geometry{};
};

struct SaucerFitOutcome {
  bool feasible = false;
  double slab_limit = 0.0;      // gamma as x -> 0+ (the slab)
  double cylinder_limit = 0.0;  // gamma as x -> w- (the capped cylinder)
  std::optional<SaucerFit> fit;
};

// Solves gamma_n(FlyingSaucer(n, w, x)) = target for x in (0, w) by
// bisection; the measure is strictly decreasing in x. Infeasible when the
// target lies outside the two limit measures (both reported). n <= 10^4.
SaucerFitOutcome fit_saucer(int n, double w, double target, double tol = 1e-9);

struct LevelRadii {
  double b = 0.0, c = 0.0, d = 0.0;
  double u = 0.0, v = 0.0, z = 0.0;
};

// Radii where the saucer profile passes heights b > c > d (all in (0, w)):
// u, v, z with f(u) = b, f(v) = c, f(z) = d, via the closed form
// x + (w/x - x/w)(w - h)/2, cross-checked against the profile to 1e-10.
LevelRadii level_radii(const SaucerFit& fit, double b, double c, double d);

struct DerivativeRefutation {
  double a = 0.0;
  double w = 0.0;
  double left_derivative = 0.0;   // d/dt gamma_2(B(0,tw)) at t=1 = w^2 e^{-w^2/2}
  double right_derivative = 0.0;  // d/dt gamma_1 side at t=1 = 2 w phi(a)
  double derivative_gap = 0.0;
  double equality_residual_at_1 = 0.0;
  double t_witness = 0.0;
  double lhs_at_t = 0.0;  // gamma_2(B(0, t w))
  double rhs_at_t = 0.0;  // gamma_1((-(a-(1-t)w), a-(1-t)w))
  bool consequence_fails = false;  // lhs_at_t < rhs_at_t
};

// The derivative comparison at t = 1 that refutes the cylinder conjecture's
// consequence gamma_2(B(0,tw)) >= gamma_1((-(a-(1-t)w), a-(1-t)w)), plus an
// explicit witness t where the consequence fails outright. Requires
// boundary_gap(a).gap > 0 (a = 3 is comfortable).
DerivativeRefutation derivative_refutation(double a, double t_witness = 0.99);

struct ChainCheckReport {
  int n = 0;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, t = 0.0;
  double w = 0.0, x = 0.0;
  double u = 0.0, v = 0.0, z = 0.0;
  double tz = 0.0;
  bool tz_ge_v = false;
  double inclusion_bound = 0.0;   // chi_square_cdf(n-1,(tz)^2) (2 Phi(td) - 1)
  double saucer_dilated = 0.0;    // gamma_n(t K_n) by quadrature
  double inclusion_margin = 0.0;  // saucer_dilated - inclusion_bound
  double prediction = 0.0;        // gamma_2(B(0, t w)) = 1 - e^{-t^2 w^2 / 2}
  double violation_margin = 0.0;  // saucer_dilated - prediction
  bool violated = false;
  std::optional<MonteCarloEstimate> mc_cross;  // optional MC cross-check
};

// Builds the fitted saucer at dimension n and evaluates every link of the
// comparison chain at dilation t: the product lower bound from the inclusion
// B(0,z) x (-d,d) inside K_n, the quadrature value of gamma_n(t K_n), and the
// disc prediction it is measured against. Requires t > (w-c)/(w-d).
ChainCheckReport conjecture_chain_check(int n, double a, double b, double c,
                                        double d, double t,
                                        std::uint64_t mc_samples = 0,
                                        std::uint64_t seed = 0,
                                        double fit_tol = 1e-9);

// Largest d compatible with the chain condition at dilation t, backed off
// slightly so the strict inequality holds: t > (w-c)/(w-d).
double default_chain_d(double w, double c, double t);

struct ViolationSweepRow {
  int n = 0;
  bool feasible = false;
  double x = 0.0;
  double y = 0.0;
  double residual = 0.0;
  double saucer_dilated = 0.0;
  double prediction = 0.0;
  double margin = 0.0;  // saucer_dilated - prediction; > 0 is a violation
  bool violated = false;
};

struct ViolationSweep {
  double a = 0.0, w = 0.0, t = 0.0, target = 0.0;
  std::vector<ViolationSweepRow> rows;
  std::optional<int> smallest_violating_n;
};

// Sweeps n over the grid, fitting gamma_n(K_n) = gamma_2(B(0,w)) and testing
// gamma_n(t K_n) > gamma_2(B(0,tw)) at each feasible n. An empty result
// (no violating n in range) is a report, not a failure.
ViolationSweep sweep_violation(std::span<const int> n_grid, double a, double t,
                               double fit_tol = 1e-9);

}  // namespace gaussdil
