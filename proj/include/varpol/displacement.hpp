// displacement.hpp — frequency-resolved displacement fraction F(omega) and the
// resulting coupling renormalisation and reorganisation shift.

#pragma once

#include "varpol/spectral_density.hpp"

namespace varpol::vopt {

// Stable coth for positive arguments.
double coth(double x);

// F(w) = w / (w + alpha*coth(beta*w/2)) in [0, 1].  F = 1 is the fully
// displaced frame, F = 0 the undisplaced one; the forced modes bypass alpha.
struct Displacement {
    enum class Mode { variational, full, none };
    double alpha = 0.0;  // rad/ps, >= 0
    Mode mode = Mode::variational;

    static Displacement variational(double alpha) { return {alpha, Mode::variational}; }
    static Displacement full_polaron() { return {0.0, Mode::full}; }
    static Displacement undisplaced() { return {0.0, Mode::none}; }

    double operator()(double omega, double beta) const;
};

struct RenormFactor {
    double value;    // coupling renormalisation in (0, 1]
    bool divergent;  // true when the displacement integral diverges (value 0)
};

// exp[-1/2 integral J F^2 coth(beta w/2) / w^2 dw]
RenormFactor renorm_factor(const bath::SpectralDensity& sd, const Displacement& d,
                           double beta);

// integral J F (F - 2) / w dw, in [-reorganization_energy, 0]
double reorg_shift(const bath::SpectralDensity& sd, const Displacement& d, double beta);

}  // namespace varpol::vopt
