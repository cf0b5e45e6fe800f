#include "gaussdil/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gaussdil {

double sym_eig_max(std::vector<double> a, int n) {
  if (n < 1) throw std::invalid_argument("sym_eig_max: need n >= 1");
  if (a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("sym_eig_max: matrix size mismatch");
  }
  auto at = [&](int i, int j) -> double& { return a[i * n + j]; };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-28) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        // Smaller-angle root of t^2 + 2 theta t - 1 = 0.
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  double lam = at(0, 0);
  for (int i = 1; i < n; ++i) lam = std::max(lam, at(i, i));
  return lam;
}

}  // namespace gaussdil
