// variational.hpp — self-consistent optimisation of the per-site displacement
// parameters, either on the full network or on local partitions around each site.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "varpol/displacement.hpp"
#include "varpol/network.hpp"

namespace varpol::vopt {

// H with shifted energies and suppressed couplings (both rad/ps).
struct RenormalizedHamiltonian {
    Eigen::VectorXd energies;   // E_n + shift_n
    Eigen::MatrixXd couplings;  // B_n B_m V_nm, zero diagonal
    Eigen::MatrixXd matrix() const;
    int size() const { return static_cast<int>(energies.size()); }
};

struct VariationalSolution {
    Eigen::VectorXd alpha;            // rad/ps, >= 0
    Eigen::VectorXd coupling_renorm;  // B_n in [0, 1]
    Eigen::VectorXd energy_shift;     // R_n in [-reorg_n, 0], rad/ps
    std::vector<std::vector<int>> partitions;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<std::uint8_t> clamped;    // alpha updates clipped at zero
    std::vector<std::uint8_t> divergent;  // sites whose renorm integral diverged
    std::vector<double> history;          // per-sweep residual

    RenormalizedHamiltonian renormalized(const net::Network& net) const;
};

struct SolverSettings {
    int partition_size = 0;  // 0 -> full network
    double tol = 5e-4;       // relative change per sweep, "1 part in 2000"
    int max_iter = 200;
    double damping = 0.5;
    enum class Init { reorg, zero, weak } init = Init::reorg;
    int jobs = 1;
    bool throw_on_failure = false;  // default: return best iterate, converged=false
};

// {i} plus the p-1 sites most strongly coupled to i; ties resolve to the lowest index.
std::vector<int> select_partition(const net::Network& net, int site, int p);

// Closed-form update from the local Gibbs state: -('V rho)_nn / rho_nn, clamped at 0.
double alpha_update(const RenormalizedHamiltonian& local, int local_index, double beta,
                    bool* clamped = nullptr);

// Squared Frobenius norm of the cross-partition coupling block, and the same
// scaled by beta/Z_A (partition functions evaluated with min-shifted energies).
std::pair<double, double> connection_error(const net::Network& net,
                                           const VariationalSolution& sol, int site, int p,
                                           double beta);

VariationalSolution solve_self_consistent(const net::Network& net,
                                          const std::vector<bath::SpectralDensity>& baths,
                                          double beta, const SolverSettings& settings = {});

// Dense full-network reference: same fixed point computed without any partition
// machinery. Guard: N <= 64.
VariationalSolution solve_global(const net::Network& net,
                                 const std::vector<bath::SpectralDensity>& baths, double beta,
                                 double tol = 1e-8, int max_iter = 500);

// Fixed displacement solutions for the two limiting frames.
VariationalSolution full_polaron_solution(const net::Network& net,
                                          const std::vector<bath::SpectralDensity>& baths,
                                          double beta);
VariationalSolution undisplaced_solution(const net::Network& net);

// epsilon_p = max relative change over sites of {B_n, R_n} between partition
// sizes p-1 and p, for p in [p_min+1, p_max].
std::vector<std::pair<int, double>> convergence_scan(
    const net::Network& net, const std::vector<bath::SpectralDensity>& baths, double beta,
    int p_min, int p_max, const SolverSettings& settings = {});

// System part of the free-energy bound, -ln tr exp(-beta H) / beta.
double free_energy_bound(const RenormalizedHamiltonian& h, double beta);

}  // namespace varpol::vopt
