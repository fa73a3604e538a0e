// network.hpp — excitonic site networks, dipole geometry builders and presets.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "varpol/spectral_density.hpp"

namespace varpol::net {

// Site energies and couplings in rad/ps. Couplings are symmetric, zero diagonal.
struct Network {
    Eigen::VectorXd energies;
    Eigen::MatrixXd couplings;
    std::vector<std::string> labels;

    int n_sites() const { return static_cast<int>(energies.size()); }
    Eigen::MatrixXd hamiltonian() const;

    // Throws std::invalid_argument when shapes or invariants are violated;
    // reports the first offending entry pair on asymmetry.
    void validate(double symmetry_tol = 1e-9) const;
};

struct DipoleGeometry {
    std::vector<Eigen::Vector3d> positions;  // nm
    std::vector<Eigen::Vector3d> dipoles;    // unit vectors
    double dipole_norm;                      // coupling at the 1 nm reference (rad/ps)
};

struct HelixParams {
    double theta = 0.6;         // rad per triplet step
    double radius = 4.0;        // nm
    double rise = 1.0;          // nm per triplet
    double offset = 0.8;        // nm between sites inside a triplet
    int n_triplets = 34;
    double first_energy;        // rad/ps
    double detuning;            // rad/ps per triplet
    double dipole_norm;         // rad/ps at the 1 nm reference
};

// V_nm = norm * (d_n.d_m - 3 (d_n.r)(d_m.r)) / r_nm^3, r_nm in nm.
// Normalised so parallel dipoles perpendicular to a 1 nm separation give +norm.
double dipole_coupling(const DipoleGeometry& geom, int n, int m);

// Sites stacked in triplets along a spiral; dipoles tangent to the helix path.
Network build_helix(const HelixParams& p);
DipoleGeometry helix_geometry(const HelixParams& p);

// Intra-triplet nearest-neighbour coupling produced by a unit dipole norm,
// used to calibrate the helix presets.
double helix_nn_orientation_factor(const HelixParams& p);

struct Preset {
    Network network;
    std::vector<bath::SpectralDensity> baths;  // one entry per site
    double temperature_K;
};

struct PresetOptions {
    // Optional Huang-Rhys mode list file; empty -> broad background only.
    std::string mode_file;
    // LH2: keep only the couplings quoted for the double ring.
    bool nearest_neighbor_only = false;
    // Helix: calibrate the dipole norm so the intra-triplet nearest-neighbour
    // coupling is 350 cm^-1 (default), or use the 0.4 eV reference norm.
    bool helix_appendix_norm = false;
};

// Known presets: fmo7 | lh2 | helix102 | helix3000.
Preset preset_network(const std::string& name, const PresetOptions& opts = {});

// Seeded dense random network for tests and benchmarks.
Network random_network(int n_sites, unsigned seed, double energy_spread_cm1 = 200.0,
                       double coupling_scale_cm1 = 60.0);

}  // namespace varpol::net
