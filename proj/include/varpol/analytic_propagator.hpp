// analytic_propagator.hpp — closed-form exponential-sum representation of the
// displaced-frame propagator for the centered (Ohmic) Drude-Lorentz bath,
// obtained by closing the frequency integral over the shifted Matsubara poles
// and the spectral-density pole.

#pragma once

#include "varpol/exponential_sum.hpp"
#include "varpol/spectral_density.hpp"

namespace varpol::rates {

struct AnalyticSettings {
    int n_poles = 0;          // 0 -> grow automatically
    int max_poles = 512;
    double value_tol = 1e-6;  // stop growing when phi(0) changes less than this
};

// phi(t) = integral J F^2 [cos coth - i sin] / w^2; requires a single
// Drude-Lorentz term centered at zero, else throws ScopeError pointing to the
// fitting route.
ExponentialSum analytic_propagator(const bath::SpectralDensity& sd, double alpha,
                                   double beta, const AnalyticSettings& settings = {});

}  // namespace varpol::rates
