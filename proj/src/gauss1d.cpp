#include "gaussdil/gauss1d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gaussdil {

namespace {

constexpr double kProbSlack = 1e-12;
constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

Probability::Probability(double value) {
  if (std::isnan(value) || value < -kProbSlack || value > 1.0 + kProbSlack) {
    throw std::domain_error("Probability out of range: " +
                            std::to_string(value));
  }
  value_ = std::min(1.0, std::max(0.0, value));
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

Probability std_normal_cdf(double x) {
  return Probability(0.5 * std::erfc(-x * kInvSqrt2));
}

Probability gaussian_interval(double a) {
  if (a < 0.0) throw std::domain_error("gaussian_interval: a must be >= 0");
  return Probability(std::erf(a * kInvSqrt2));
}

Probability gaussian_tail(double u) {
  return Probability(0.5 * std::erfc(u * kInvSqrt2));
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_quantile: p must lie in (0,1)");
  }
  // Density <= 0.4, so an x-bracket of width 1e-12 pins Phi within 4e-13.
  return find_root([p](double x) { return std_normal_cdf(x).value() - p; },
                   -40.0, 40.0, 1e-12);
}

TailSandwich tail_sandwich(double a) {
  if (!(a > 1.0)) {
    throw std::domain_error("tail_sandwich: requires a > 1");
  }
  const double e = std::exp(-0.5 * a * a);
  return TailSandwich{(1.0 / a - 1.0 / (a * a * a)) * e, e / a};
}

namespace {

// Series for P(a,x), good for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("regularized_gamma_p: series failed to converge");
}

// Modified Lentz continued fraction for Q(a,x), good for x >= a + 1.
double gamma_q_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error(
      "regularized_gamma_p: continued fraction failed to converge");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("regularized_gamma_p: a must be > 0");
  if (x < 0.0) throw std::domain_error("regularized_gamma_p: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

Probability chi_square_cdf(int n, double x) {
  if (n < 1) throw std::domain_error("chi_square_cdf: n must be >= 1");
  if (x < 0.0) throw std::domain_error("chi_square_cdf: x must be >= 0");
  return Probability(regularized_gamma_p(0.5 * n, 0.5 * x));
}

double chi_density(int n, double r) {
  if (n < 1) throw std::domain_error("chi_density: n must be >= 1");
  if (r < 0.0) throw std::domain_error("chi_density: r must be >= 0");
  if (r == 0.0) {
    // r^{n-1} kills every case but n = 1, where the density is sqrt(2/pi).
    return n == 1 ? std::sqrt(2.0 / std::numbers::pi) : 0.0;
  }
  const double log_f = (n - 1) * std::log(r) - 0.5 * r * r -
                       std::lgamma(0.5 * n) -
                       (0.5 * n - 1.0) * std::numbers::ln2;
  return std::exp(log_f);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  if (!(lo < hi)) throw std::invalid_argument("find_root: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("find_root: need tol > 0");
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw std::runtime_error("find_root: non-finite value at bracket endpoint");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::invalid_argument("find_root: no sign change over [lo, hi]");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol || mid <= lo || mid >= hi) return mid;
    const double fmid = f(mid);
    if (!std::isfinite(fmid)) {
      throw std::runtime_error("find_root: non-finite value at " +
                               std::to_string(mid));
    }
    if (fmid == 0.0) return mid;
    // Keep the sign change; exact zero handled above, so < picks a side.
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gaussdil
