#include "varpol/displacement.hpp"

#include <cmath>
#include <stdexcept>

namespace varpol::vopt {

double coth(double x) {
    if (x > 20.0) {
        return 1.0;
    }
    if (x < 1e-4) {
        return 1.0 / x + x / 3.0;
    }
    return 1.0 / std::tanh(x);
}

double Displacement::operator()(double omega, double beta) const {
    switch (mode) {
        case Mode::full:
            return 1.0;
        case Mode::none:
            return 0.0;
        case Mode::variational:
            break;
    }
    if (alpha < 0.0) {
        throw std::invalid_argument("displacement parameter alpha must be >= 0");
    }
    if (alpha == 0.0) {
        return 1.0;
    }
    if (omega == 0.0) {
        return 0.0;
    }
    return omega / (omega + alpha * coth(0.5 * beta * omega));
}

RenormFactor renorm_factor(const bath::SpectralDensity& sd, const Displacement& d,
                           double beta) {
    const bool fully_displaced =
        d.mode == Displacement::Mode::full ||
        (d.mode == Displacement::Mode::variational && d.alpha == 0.0);
    if (fully_displaced && sd.ohmic_at_zero()) {
        // J ~ w at low frequency makes the thermal displacement integral diverge.
        return {0.0, true};
    }
    if (d.mode == Displacement::Mode::none) {
        return {1.0, false};
    }
    const double integral = bath::spectral_integral(sd, [&](double w) {
        const double f = d(w, beta);
        return f * f * coth(0.5 * beta * w) / (w * w);
    });
    return {std::exp(-0.5 * integral), false};
}

double reorg_shift(const bath::SpectralDensity& sd, const Displacement& d, double beta) {
    if (d.mode == Displacement::Mode::none) {
        return 0.0;
    }
    return bath::spectral_integral(sd, [&](double w) {
        const double f = d(w, beta);
        return f * (f - 2.0) / w;
    });
}

}  // namespace varpol::vopt
