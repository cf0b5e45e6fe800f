#pragma once

#include <vector>

namespace gaussdil {

// Largest eigenvalue of a symmetric n x n matrix (row-major), via cyclic
// Jacobi rotations. Intended for the small Gram matrices that show up here
// (n up to a few hundred); converges to ~1e-14 relative accuracy.
double sym_eig_max(std::vector<double> a, int n);

}  // namespace gaussdil
