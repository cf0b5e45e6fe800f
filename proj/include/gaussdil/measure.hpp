#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gaussdil/bodies.hpp"
#include "gaussdil/gauss1d.hpp"

namespace gaussdil {

enum class Method { closed_form, quadrature, monte_carlo };

std::string method_name(Method m);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct MeasureOptions {
  double quad_tol = 1e-10;        // absolute quadrature tolerance
  double quad_rel_tol = 1e-12;    // relative term, keeps tiny measures honest
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct MeasureResult {
  Probability value;
  Method method = Method::closed_form;
  double uncertainty = 0.0;  // 0 closed form, quad error bound, or MC std error
};

struct DilationProfile {
  std::vector<double> t_grid;
  std::vector<Probability> values;
  std::vector<Method> methods;
  std::vector<double> uncertainties;
};

// gamma_n(body). Balls, slabs and cylinders reduce to 1-d closed forms,
// the flying saucer goes through saucer_quadrature, everything else falls
// back to Monte Carlo (method tag says which path ran).
MeasureResult gaussian_measure(const Body& body, const MeasureOptions& opts = {});

// gamma_n of FlyingSaucer(n, w, x): by rotational invariance
//   integral over r in (0, y) of chi_density(n-1, r) * (2 Phi(f(r)) - 1) dr,
// refined adaptively with subdivision forced at the profile kinks r = x, y.
Probability saucer_quadrature(int n, double w, double x, double tol,
                              double rel_tol = 0.0);

// Indicator-mean estimate of gamma_n(body). samples >= 1000. Bit-identical
// for fixed (body, samples, seed) regardless of thread count.
MonteCarloEstimate gaussian_measure_mc(const Body& body, std::uint64_t samples,
                                       std::uint64_t seed, int threads = 1);

// Fraction of uniform points of the unit sphere S^{n-1} inside the body;
// points are normalized Gaussian vectors (zero draws are retried).
MonteCarloEstimate spherical_measure_mc(const Body& body, std::uint64_t samples,
                                        std::uint64_t seed, int threads = 1);

// Gaussian boundary measures with closed forms:
// gamma_2^+ of the disc of radius w, and gamma_1^+ of the interval (-a, a).
double boundary_measure_ball2(double w);
double boundary_measure_interval(double a);

// Finite-difference surrogate (gamma(K_eps) - gamma(K)) / eps for the
// epsilon-enlargement K_eps. Supported for bodies whose enlargement has a
// usable description (ball, slab, cylinder, flying saucer); an approximation,
// accurate to O(eps) plus quadrature noise.
double boundary_measure_fd(const Body& body, double eps,
                           const MeasureOptions& opts = {});

// Sweep of t -> gamma_n(dilate(body, t)) over an increasing grid in (0,1].
// `forced` pins the engine for every point; nullopt uses per-body routing.
DilationProfile dilation_profile(const Body& body, std::span<const double> t_grid,
                                 std::optional<Method> forced = std::nullopt,
                                 const MeasureOptions& opts = {});

}  // namespace gaussdil
