#include "varpol/network.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "varpol/units.hpp"

namespace varpol::net {

Eigen::MatrixXd Network::hamiltonian() const {
    Eigen::MatrixXd h = couplings;
    h.diagonal() = energies;
    return h;
}

void Network::validate(double symmetry_tol) const {
    const int n = n_sites();
    if (n < 1) {
        throw std::invalid_argument("network must have at least one site");
    }
    if (couplings.rows() != n || couplings.cols() != n) {
        throw std::invalid_argument("coupling matrix shape does not match site count");
    }
    for (int i = 0; i < n; ++i) {
        if (couplings(i, i) != 0.0) {
            throw std::invalid_argument("coupling diagonal must be exactly zero at site " +
                                        std::to_string(i));
        }
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(couplings(i, j) - couplings(j, i)) > symmetry_tol) {
                throw std::invalid_argument("coupling matrix asymmetric at entry pair (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    if (!labels.empty() && static_cast<int>(labels.size()) != n) {
        throw std::invalid_argument("label count does not match site count");
    }
}

double dipole_coupling(const DipoleGeometry& geom, int n, int m) {
    if (n == m) {
        throw std::invalid_argument("dipole_coupling requires two distinct sites");
    }
    const Eigen::Vector3d r = geom.positions[m] - geom.positions[n];
    const double dist = r.norm();
    if (dist < 1e-12) {
        throw std::domain_error("dipole_coupling: coincident site positions");
    }
    const Eigen::Vector3d rhat = r / dist;
    const Eigen::Vector3d& dn = geom.dipoles[n];
    const Eigen::Vector3d& dm = geom.dipoles[m];
    const double kappa = dn.dot(dm) - 3.0 * dn.dot(rhat) * dm.dot(rhat);
    return geom.dipole_norm * kappa / (dist * dist * dist);
}

DipoleGeometry helix_geometry(const HelixParams& p) {
    if (p.n_triplets < 1 || p.radius <= 0.0) {
        throw std::invalid_argument("helix parameters out of range");
    }
    DipoleGeometry g;
    g.dipole_norm = p.dipole_norm;
    for (int i = 0; i < p.n_triplets; ++i) {
        const double ang = i * p.theta;
        Eigen::Vector3d tangent(-p.radius * p.theta * std::sin(ang), p.rise,
                                p.radius * p.theta * std::cos(ang));
        tangent.normalize();
        for (int j = 0; j < 3; ++j) {
            g.positions.emplace_back(p.radius * std::cos(ang), i * p.rise + j * p.offset,
                                     p.radius * std::sin(ang));
            g.dipoles.push_back(tangent);
        }
    }
    return g;
}

double helix_nn_orientation_factor(const HelixParams& p) {
    const double t2 = p.radius * p.radius * p.theta * p.theta;
    const double dy2 = (t2 + p.rise * p.rise);
    // Dipoles are parallel inside a triplet; separation is along y.
    const double kappa = 1.0 - 3.0 * p.rise * p.rise / dy2;
    return kappa / (p.offset * p.offset * p.offset);
}

Network build_helix(const HelixParams& p) {
    const DipoleGeometry g = helix_geometry(p);
    const int n = 3 * p.n_triplets;
    Network net;
    net.energies.resize(n);
    net.couplings = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < p.n_triplets; ++i) {
        for (int j = 0; j < 3; ++j) {
            net.energies(3 * i + j) = p.first_energy + i * p.detuning;
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double v = dipole_coupling(g, a, b);
            net.couplings(a, b) = v;
            net.couplings(b, a) = v;
        }
    }
    net.validate();
    return net;
}

namespace {

Preset make_fmo(const PresetOptions& opts) {
    constexpr int N = 7;
    const double H_cm1[N][N] = {
        {240.0, -87.7, 5.5, -5.9, 6.7, -13.7, -9.9},
        {-87.7, 315.0, 30.8, 8.2, 0.7, 11.8, 4.3},
        {5.5, 30.8, 0.0, -53.5, -2.2, -9.6, 6.0},
        {-5.9, 8.2, -53.5, 130.0, -70.7, -17.0, -63.3},
        {6.7, 0.7, -2.2, -70.7, 285.0, 81.1, -1.3},
        {-13.7, 11.8, -9.6, -17.0, 81.1, 435.0, 39.7},
        {-9.9, 4.3, 6.0, -63.3, -1.3, 39.7, 245.0}};
    Preset p;
    p.network.energies.resize(N);
    p.network.couplings = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        p.network.energies(i) = units::from_cm1(H_cm1[i][i]);
        p.network.labels.push_back("BChl" + std::to_string(i + 1));
        for (int j = 0; j < N; ++j) {
            if (i != j) {
                p.network.couplings(i, j) = units::from_cm1(H_cm1[i][j]);
            }
        }
    }
    bath::SpectralDensity background =
        bath::SpectralDensity::adolphs_renger(0.29, 0.8, 0.5, 0.056, 1.94);
    bath::SpectralDensity site_bath = background;
    if (!opts.mode_file.empty()) {
        site_bath = bath::SpectralDensity::sum(
            {background, bath::load_mode_comb(opts.mode_file, 5.0)});
    }
    p.baths.assign(N, site_bath);
    p.temperature_K = 300.0;
    p.network.validate();
    return p;
}

// 24-site LH2 ring: 8 outer B800 and 16 inner B850 (a/b alternating).
// Geometry supplies the long-range point-dipole couplings; the quoted
// nearest-neighbour couplings override the corresponding entries.
Preset make_lh2(const PresetOptions& opts) {
    constexpr int kTriplets = 8;
    constexpr int N = 3 * kTriplets;
    const double r850 = 2.3;   // nm
    const double r800 = 2.85;  // nm
    const double z800 = 1.6;   // nm
    Preset p;
    p.network.energies.resize(N);
    p.network.couplings = Eigen::MatrixXd::Zero(N, N);

    DipoleGeometry g;
    // Site order per triplet k: [B800_k, aB850_k, bB850_k].
    std::vector<int> kind(N);  // 0 = B800, 1 = aB850, 2 = bB850
    for (int k = 0; k < kTriplets; ++k) {
        const double phi0 = 2.0 * M_PI * (k + 0.5) / kTriplets;
        const double phia = 2.0 * M_PI * (2 * k) / (2 * kTriplets);
        const double phib = 2.0 * M_PI * (2 * k + 1) / (2 * kTriplets);
        g.positions.emplace_back(r800 * std::cos(phi0), r800 * std::sin(phi0), z800);
        g.positions.emplace_back(r850 * std::cos(phia), r850 * std::sin(phia), 0.0);
        g.positions.emplace_back(r850 * std::cos(phib), r850 * std::sin(phib), 0.0);
        for (double phi : {phi0, phia, phib}) {
            g.dipoles.emplace_back(-std::sin(phi), std::cos(phi), 0.0);
        }
        kind[3 * k] = 0;
        kind[3 * k + 1] = 1;
        kind[3 * k + 2] = 2;
        p.network.labels.push_back("B800_" + std::to_string(k + 1));
        p.network.labels.push_back("aB850_" + std::to_string(k + 1));
        p.network.labels.push_back("bB850_" + std::to_string(k + 1));
    }
    // B800 and aB850 resonant, bB850 detuned by +80 cm^-1.
    for (int i = 0; i < N; ++i) {
        p.network.energies(i) = units::from_cm1(kind[i] == 2 ? 80.0 : 0.0);
    }

    // Calibrate the point-dipole norm against the strongest quoted coupling so
    // the unquoted long-range entries have a consistent magnitude.
    g.dipole_norm = 1.0;
    const double ab_unit = std::abs(dipole_coupling(g, 1, 2));
    g.dipole_norm = units::from_cm1(408.0) / ab_unit;
    if (!opts.nearest_neighbor_only) {
        for (int i = 0; i < N; ++i) {
            for (int j = i + 1; j < N; ++j) {
                const double v = dipole_coupling(g, i, j);
                p.network.couplings(i, j) = v;
                p.network.couplings(j, i) = v;
            }
        }
    }
    auto set = [&](int i, int j, double v_cm1) {
        p.network.couplings(i, j) = units::from_cm1(v_cm1);
        p.network.couplings(j, i) = units::from_cm1(v_cm1);
    };
    for (int k = 0; k < kTriplets; ++k) {
        const int b800 = 3 * k, a = 3 * k + 1, b = 3 * k + 2;
        const int a_next = 3 * ((k + 1) % kTriplets) + 1;
        set(a, b, 408.0);       // same triplet aB850-bB850
        set(b, a_next, 366.0);  // adjacent triplet bB850-aB850
        set(b800, a, 52.0);     // B800 to nearest aB850
        set(b800, b, 40.0);     // B800 to nearest bB850
    }

    bath::SpectralDensity background = bath::SpectralDensity::super_ohmic(80.0, 100.0);
    bath::SpectralDensity site_bath = background;
    if (!opts.mode_file.empty()) {
        site_bath = bath::SpectralDensity::sum(
            {background, bath::load_mode_comb(opts.mode_file, 11.0)});
    }
    p.baths.assign(N, site_bath);
    p.temperature_K = 300.0;
    p.network.validate();
    return p;
}

Preset make_helix(int n_triplets, const PresetOptions& opts) {
    HelixParams hp;
    hp.n_triplets = n_triplets;
    hp.first_energy = units::from_eV(2.0);
    hp.detuning = units::from_eV(0.005);
    if (opts.helix_appendix_norm) {
        hp.dipole_norm = units::from_eV(0.4);
    } else {
        // Calibrated so the intra-triplet nearest-neighbour coupling is 350 cm^-1.
        hp.dipole_norm = units::from_cm1(350.0) / helix_nn_orientation_factor(hp);
    }
    Preset p;
    p.network = build_helix(hp);
    p.baths.assign(p.network.n_sites(), bath::SpectralDensity::super_ohmic(180.0, 200.0));
    p.temperature_K = 300.0;
    return p;
}

}  // namespace

Preset preset_network(const std::string& name, const PresetOptions& opts) {
    if (name == "fmo7") return make_fmo(opts);
    if (name == "lh2") return make_lh2(opts);
    if (name == "helix102") return make_helix(34, opts);
    if (name == "helix3000") return make_helix(1000, opts);
    throw std::invalid_argument("unknown preset network: " + name);
}

Network random_network(int n_sites, unsigned seed, double energy_spread_cm1,
                       double coupling_scale_cm1) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ue(-energy_spread_cm1, energy_spread_cm1);
    std::uniform_real_distribution<double> uv(-coupling_scale_cm1, coupling_scale_cm1);
    Network net;
    net.energies.resize(n_sites);
    net.couplings = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i) {
        net.energies(i) = units::from_cm1(ue(rng));
    }
    for (int i = 0; i < n_sites; ++i) {
        for (int j = i + 1; j < n_sites; ++j) {
            const double v = units::from_cm1(uv(rng));
            net.couplings(i, j) = v;
            net.couplings(j, i) = v;
        }
    }
    net.validate();
    return net;
}

}  // namespace varpol::net
