#include "gaussdil/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "gaussdil/quadrature.hpp"
#include "gaussdil/rng.hpp"

namespace gaussdil {

namespace {

// Mass of sqrt(chi^2_n) beyond sqrt(n) + 12 is < 1e-30, far below any
// tolerance in play, so radial integrals can stop there.
double radial_cutoff(int n) { return std::sqrt(static_cast<double>(n)) + 12.0; }

MonteCarloEstimate estimate_from(const McAccum& acc, std::uint64_t samples,
                                 std::uint64_t seed) {
  MonteCarloEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean = acc.sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, (acc.sum_sq - acc.sum * est.mean) /
                        (static_cast<double>(samples) - 1.0));
  est.std_error = std::sqrt(var / static_cast<double>(samples));
  return est;
}

// Integrates chi_density(n-1, r) * (2 Phi(profile(r)) - 1) over [0, upper]
// with forced breakpoints, truncating at the radial cutoff.
double revolve_integral(int n, const std::function<double(double)>& profile,
                        std::vector<double> breaks, double upper, double tol,
                        double rel_tol) {
  const int radial = n - 1;
  auto integrand = [&](double r) {
    const double h = profile(r);
    if (h <= 0.0) return 0.0;
    return chi_density(radial, r) * gaussian_interval(h).value();
  };
  // Truncation beyond the chi cutoff is safe no matter what the profile
  // does: the integrand is dominated by the chi density alone.
  const double hi = std::min(upper, radial_cutoff(radial));
  breaks.push_back(0.0);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  const double piece_tol = tol / static_cast<double>(breaks.size());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = std::min(breaks[i + 1], hi);
    if (!(b > a)) continue;
    QuadratureOptions qopts;
    qopts.abs_tol = piece_tol;
    qopts.rel_tol = rel_tol;
    total += integrate_gk15(integrand, a, b, qopts).value;
  }
  return total;
}

double saucer_enlarged_measure(int n, double w, double x, double eps,
                               double tol, double rel_tol) {
  const SaucerGeometry g = saucer_geometry(w, x);
  // Minkowski enlargement of the profile region by eps in the (r, h) plane:
  // lifted flat top, a circular arc around each kink, and the offset slant.
  const double slant_len = std::hypot(g.y - g.x, w);
  const double dx = eps * w / slant_len;  // radial shift of the offset slant
  const double dh = eps * (g.y - g.x) / slant_len;
  auto profile = [&](double r) -> double {
    if (r <= g.x) return w + eps;
    if (r <= g.x + dx) {
      const double d = r - g.x;
      return w + std::sqrt(std::max(0.0, eps * eps - d * d));
    }
    if (r <= g.y + dx) {
      return saucer_profile(w, x, r - dx) + dh;
    }
    if (r <= g.y + eps) {
      const double d = r - g.y;
      return std::sqrt(std::max(0.0, eps * eps - d * d));
    }
    return 0.0;
  };
  return revolve_integral(n, profile,
                          {g.x, g.x + dx, g.y + dx, g.y + eps}, g.y + eps,
                          tol, rel_tol);
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte_carlo";
  }
  throw std::logic_error("method_name: bad tag");
}

Probability saucer_quadrature(int n, double w, double x, double tol,
                              double rel_tol) {
  if (n < 2) throw std::domain_error("saucer_quadrature: n must be >= 2");
  const SaucerGeometry g = saucer_geometry(w, x);
  const double value =
      revolve_integral(n, [&](double r) { return saucer_profile(w, x, r); },
                       {g.x, g.y}, g.y, tol, rel_tol);
  return Probability(value);
}

MeasureResult gaussian_measure(const Body& body, const MeasureOptions& opts) {
  MeasureResult res;
  if (const Ball* b = std::get_if<Ball>(&body)) {
    res.value = chi_square_cdf(b->dim, b->radius * b->radius);
    res.method = Method::closed_form;
  } else if (const Slab* s = std::get_if<Slab>(&body)) {
    res.value = gaussian_interval(s->halfwidth);
    res.method = Method::closed_form;
  } else if (const Cylinder* c = std::get_if<Cylinder>(&body)) {
    res.value = chi_square_cdf(c->radial_dim, c->radius * c->radius);
    res.method = Method::closed_form;
  } else if (const FlyingSaucer* f = std::get_if<FlyingSaucer>(&body)) {
    res.value = saucer_quadrature(f->dim, f->w, f->x, opts.quad_tol,
                                  opts.quad_rel_tol);
    res.method = Method::quadrature;
    res.uncertainty = opts.quad_tol;
  } else {
    // SlabPolytope and NormPreimage have no closed form here.
    const MonteCarloEstimate est =
        gaussian_measure_mc(body, opts.mc_samples, opts.seed, opts.threads);
    res.value = Probability(est.mean);
    res.method = Method::monte_carlo;
    res.uncertainty = est.std_error;
  }
  return res;
}

MonteCarloEstimate gaussian_measure_mc(const Body& body, std::uint64_t samples,
                                       std::uint64_t seed, int threads) {
  if (samples < 1000) {
    throw std::invalid_argument("gaussian_measure_mc: samples must be >= 1000");
  }
  const int n = ambient_dim(body);
  // thread_local scratch keeps the per-sample closure allocation-free.
  const McAccum acc = mc_reduce(samples, threads, [&](std::uint64_t i) {
    thread_local std::vector<double> point;
    point.resize(static_cast<std::size_t>(n));
    standard_normals(seed, RngStream::gaussian_mc, i, 0, point);
    return contains(body, point) ? 1.0 : 0.0;
  });
  return estimate_from(acc, samples, seed);
}

MonteCarloEstimate spherical_measure_mc(const Body& body, std::uint64_t samples,
                                        std::uint64_t seed, int threads) {
  if (samples < 1000) {
    throw std::invalid_argument("spherical_measure_mc: samples must be >= 1000");
  }
  const int n = ambient_dim(body);
  if (n < 2) {
    throw std::invalid_argument("spherical_measure_mc: ambient dim must be >= 2");
  }
  const McAccum acc = mc_reduce(samples, threads, [&](std::uint64_t i) {
    thread_local std::vector<double> point;
    point.resize(static_cast<std::size_t>(n));
    for (std::uint32_t attempt = 0;; ++attempt) {
      standard_normals(seed, RngStream::sphere_mc, i, attempt, point);
      double sq = 0.0;
      for (double c : point) sq += c * c;
      if (sq > 0.0) {
        const double inv = 1.0 / std::sqrt(sq);
        for (double& c : point) c *= inv;
        break;
      }
    }
    return contains(body, point) ? 1.0 : 0.0;
  });
  return estimate_from(acc, samples, seed);
}

double boundary_measure_ball2(double w) {
  if (!(w > 0.0)) throw std::domain_error("boundary_measure_ball2: w must be > 0");
  return w * std::exp(-0.5 * w * w);
}

double boundary_measure_interval(double a) {
  if (!(a > 0.0)) {
    throw std::domain_error("boundary_measure_interval: a must be > 0");
  }
  return 2.0 * std_normal_pdf(a);
}

double boundary_measure_fd(const Body& body, double eps,
                           const MeasureOptions& opts) {
  if (!(eps > 0.0)) throw std::domain_error("boundary_measure_fd: eps must be > 0");
  if (const Ball* b = std::get_if<Ball>(&body)) {
    const double lo = chi_square_cdf(b->dim, b->radius * b->radius);
    const double hi =
        chi_square_cdf(b->dim, (b->radius + eps) * (b->radius + eps));
    return (hi - lo) / eps;
  }
  if (const Slab* s = std::get_if<Slab>(&body)) {
    return (gaussian_interval(s->halfwidth + eps).value() -
            gaussian_interval(s->halfwidth).value()) /
           eps;
  }
  if (const Cylinder* c = std::get_if<Cylinder>(&body)) {
    const double lo = chi_square_cdf(c->radial_dim, c->radius * c->radius);
    const double hi =
        chi_square_cdf(c->radial_dim, (c->radius + eps) * (c->radius + eps));
    return (hi - lo) / eps;
  }
  if (const FlyingSaucer* f = std::get_if<FlyingSaucer>(&body)) {
    // Tighten the quadrature well below eps, or the difference is noise.
    const double tol = std::min(opts.quad_tol, 1e-13);
    const double lo = saucer_quadrature(f->dim, f->w, f->x, tol, 0.0);
    const double hi =
        saucer_enlarged_measure(f->dim, f->w, f->x, eps, tol, 0.0);
    return (hi - lo) / eps;
  }
  throw std::invalid_argument(
      "boundary_measure_fd: no enlargement description for " + describe(body));
}

DilationProfile dilation_profile(const Body& body, std::span<const double> t_grid,
                                 std::optional<Method> forced,
                                 const MeasureOptions& opts) {
  if (t_grid.empty()) {
    throw std::invalid_argument("dilation_profile: empty t grid");
  }
  double prev = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 1.0) || !(t > prev)) {
      throw std::invalid_argument(
          "dilation_profile: t grid must be increasing within (0, 1]");
    }
    prev = t;
  }
  DilationProfile profile;
  profile.t_grid.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid) {
    const Body scaled = dilate(body, t);
    if (forced == Method::monte_carlo) {
      const MonteCarloEstimate est =
          gaussian_measure_mc(scaled, opts.mc_samples, opts.seed, opts.threads);
      profile.values.push_back(Probability(est.mean));
      profile.methods.push_back(Method::monte_carlo);
      profile.uncertainties.push_back(est.std_error);
      continue;
    }
    const MeasureResult res = gaussian_measure(scaled, opts);
    if (forced && res.method != *forced) {
      throw std::invalid_argument("dilation_profile: method " +
                                  method_name(*forced) +
                                  " not available for " + describe(body));
    }
    profile.values.push_back(res.value);
    profile.methods.push_back(res.method);
    profile.uncertainties.push_back(res.uncertainty);
  }
  return profile;
}

}  // namespace gaussdil
