#pragma once

#include <functional>
#include <stdexcept>

namespace gaussdil {

// A probability value. Construction clamps tiny floating-point overshoot
// (within 1e-12 outside [0,1]) and rejects anything worse.
class Probability {
 public:
  Probability() = default;
  explicit Probability(double value);
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_ = 0.0;
};

// Two-sided bracket for the Gaussian tail integral int_a^inf e^{-s^2/2} ds,
// valid for a > 1:  (1/a - 1/a^3) e^{-a^2/2} <= integral <= (1/a) e^{-a^2/2}.
struct TailSandwich {
  double lower = 0.0;
  double upper = 0.0;
};

double std_normal_pdf(double x);

// Phi(x) = P(N(0,1) <= x), computed as erfc(-x/sqrt(2))/2 so the lower tail
// keeps full relative accuracy down to the underflow threshold.
Probability std_normal_cdf(double x);

// Inverse of std_normal_cdf on (0,1). Bracketing bisection, |Phi(x)-p| <= 1e-12.
double std_normal_quantile(double p);

// gamma_1([-a,a]) = 2 Phi(a) - 1 = erf(a / sqrt(2)), for a >= 0.
Probability gaussian_interval(double a);

// gamma_1((u, inf)) = 1 - Phi(u).
Probability gaussian_tail(double u);

// Requires a > 1 (lower bound is useless or negative otherwise).
TailSandwich tail_sandwich(double a);

// P(a, x) = lower regularized incomplete gamma. a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

// P(chi^2_n <= x), n >= 1 degrees of freedom.
Probability chi_square_cdf(int n, double x);

// Density of sqrt(chi^2_n) at r >= 0:  2^{1-n/2} r^{n-1} e^{-r^2/2} / Gamma(n/2).
// Evaluated in log form so it survives n in the thousands.
double chi_density(int n, double r);

// Plain bisection on [lo, hi]. Requires a sign change; returns the midpoint of
// the final bracket once its width is <= tol. Ties (f(mid) == 0) return mid.
// Throws std::invalid_argument when f(lo) and f(hi) have the same sign and
// std::runtime_error when f evaluates to a non-finite value. Capped at 200
// iterations, which is unreachable for any tol above 1e-300 on sane brackets.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

}  // namespace gaussdil
