#pragma once

#include <functional>
#include <stdexcept>

namespace gaussdil {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;   // conservative bound: sum of |K15 - G7| per interval
  int intervals = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double value, double error,
                  int intervals)
      : std::runtime_error(what),
        value(value),
        error(error),
        intervals(intervals) {}
  double value;
  double error;
  int intervals;
};

// Globally adaptive Gauss-Kronrod 7-15. Repeatedly splits the interval with
// the largest error estimate until the total satisfies
//   err <= max(abs_tol, rel_tol * |value|),
// and throws QuadratureError (with the partial result attached) when the
// interval budget runs out first. Fully deterministic for a fixed integrand.
QuadratureResult integrate_gk15(const std::function<double(double)>& f,
                                double a, double b,
                                const QuadratureOptions& opts = {});

}  // namespace gaussdil
