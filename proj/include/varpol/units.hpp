// units.hpp — unit conversions; all internal quantities use hbar = 1, energies
// and angular frequencies in rad/ps, times in ps, distances in nm.

#pragma once

namespace varpol::units {

// 2*pi*c with c in cm/ps: converts a wavenumber in cm^-1 to rad/ps.
inline constexpr double cm1_to_radps = 0.18836515673088532;

// CODATA k_B/(h c) in cm^-1 per kelvin.
inline constexpr double kB_cm1_per_K = 0.6950348004;

inline constexpr double eV_to_cm1 = 8065.543937;

inline constexpr double from_cm1(double x) { return x * cm1_to_radps; }
inline constexpr double to_cm1(double x) { return x / cm1_to_radps; }
inline constexpr double from_eV(double x) { return x * eV_to_cm1 * cm1_to_radps; }

// Thermal energy k_B T in rad/ps.
inline constexpr double thermal_energy(double temperature_K) {
    return kB_cm1_per_K * temperature_K * cm1_to_radps;
}

// Inverse temperature in ps (so that beta*omega is dimensionless).
inline constexpr double inverse_temperature(double temperature_K) {
    return 1.0 / thermal_energy(temperature_K);
}

}  // namespace varpol::units
