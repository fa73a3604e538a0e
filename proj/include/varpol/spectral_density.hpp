// spectral_density.hpp — composable bath spectral densities J(omega).
//
// All stored parameters are in internal units (rad/ps); the factory helpers
// accept the conventional cm^-1 inputs and convert once.

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace varpol::bath {

// J(w) = sum_k lambda_k gamma_k w / ((w - w0_k)^2 + gamma_k^2)
struct DrudeLorentz {
    struct Term {
        double lambda;  // amplitude (rad/ps)
        double gamma;   // Lorentzian width (rad/ps)
        double omega0;  // center frequency (rad/ps), 0 for the Ohmic form
    };
    std::vector<Term> terms;
};

// J(w) = A (w/wc)^3 exp(-w/wc)
struct SuperOhmic {
    double amplitude;  // A (rad/ps)
    double cutoff;     // wc (rad/ps)
};

// J(w) = S/(s1+s2) * sum_i s_i/(7! 2 wi^4) w^5 exp(-sqrt(w/wi))
struct AdolphsRenger {
    double huang_rhys;  // S (dimensionless)
    double s1;
    double s2;
    double omega1;  // rad/ps
    double omega2;  // rad/ps
};

// Discrete normal modes broadened by a shared Lorentzian width:
// J(w) = sum_n S_n 4 w gamma wn (wn^2+gamma^2) / (pi ((w-wn)^2+gamma^2)((w+wn)^2+gamma^2))
struct ModeComb {
    struct Mode {
        double huang_rhys;  // S_n (dimensionless)
        double omega;       // wn (rad/ps)
    };
    std::vector<Mode> modes;
    double width;  // shared gamma (rad/ps)
};

struct SpectralDensity;

struct SdSum {
    std::vector<SpectralDensity> parts;
};

struct SpectralDensity {
    std::variant<DrudeLorentz, SuperOhmic, AdolphsRenger, ModeComb, SdSum> form;

    // Factories take cm^-1 inputs (and dimensionless Huang-Rhys factors).
    static SpectralDensity drude_lorentz(double lambda_cm1, double gamma_cm1,
                                         double omega0_cm1 = 0.0);
    static SpectralDensity super_ohmic(double A_cm1, double omega_c_cm1);
    static SpectralDensity adolphs_renger(double S, double s1, double s2,
                                          double omega1_cm1, double omega2_cm1);
    static SpectralDensity mode_comb(const std::vector<std::pair<double, double>>& omega_S_cm1,
                                     double gamma_cm1);
    static SpectralDensity sum(std::vector<SpectralDensity> parts);

    // Same shape with every amplitude multiplied by factor (>= 0).
    SpectralDensity scaled(double factor) const;

    // J(omega), omega in rad/ps; throws std::domain_error for omega < 0.
    double operator()(double omega) const;

    // Upper integration bound beyond which the remaining mass is negligible.
    double max_frequency() const;

    // Panel boundaries resolving sharp structure, ascending, in [0, max_frequency].
    std::vector<double> panel_edges() const;

    // lim_{w->0} J(w)/w; positive for Ohmic low-frequency behaviour.
    double slope_at_zero() const;
    bool ohmic_at_zero() const;
};

// Load a two-column text file (omega cm^-1, Huang-Rhys S) into a ModeComb.
SpectralDensity load_mode_comb(const std::string& path, double gamma_cm1);

// Reorganization energy  integral J(w)/w dw  (rad/ps).
double reorganization_energy(const SpectralDensity& sd);

// Adaptive integral of J(w)*weight(w) over the support of J.
double spectral_integral(const SpectralDensity& sd,
                         const std::function<double(double)>& weight,
                         double rel_tol = 1e-8);

}  // namespace varpol::bath
