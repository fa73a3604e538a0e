// matsubara.hpp — shifted Matsubara poles of the displacement function:
// imaginary-axis roots of omega + alpha*coth(beta*omega/2).

#pragma once

#include <vector>

#include "varpol/common.hpp"

namespace varpol::rates {

// Displaced Taylor-series estimate of the k-th shifted pole magnitude (k >= 1).
double shifted_pole_series(double alpha, double beta, int k);

// Poles x_k = i y_k for k = 0..n_poles-1, y_k strictly between consecutive bare
// Matsubara frequencies 2 pi k T and 2 pi (k+1) T.  The series estimate seeds a
// bracketed Newton polish; k = 0 is the split zero-frequency mode.
std::vector<cplx> matsubara_poles(double alpha, double beta, int n_poles);

}  // namespace varpol::rates
