#include "varpol/variational.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "varpol/common.hpp"

namespace varpol::vopt {

namespace {

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Gibbs state of a real symmetric matrix, energies shifted by their minimum
// before exponentiation.
Eigen::MatrixXd gibbs_state(const Eigen::MatrixXd& h, double beta) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw NonConvergence("eigendecomposition failed in Gibbs state");
    }
    const Eigen::VectorXd& eps = es.eigenvalues();
    const double e0 = eps.minCoeff();
    Eigen::VectorXd w = (-beta * (eps.array() - e0)).exp();
    const double z = w.sum();
    if (!std::isfinite(z) || z <= 0.0) {
        throw NonConvergence("non-finite Gibbs weights");
    }
    return es.eigenvectors() * (w / z).asDiagonal() * es.eigenvectors().transpose();
}

double relative_change(double a, double b, double floor_scale) {
    const double denom = std::max({std::abs(a), std::abs(b), floor_scale});
    return std::abs(a - b) / denom;
}

struct SweepDiagnostics {
    std::vector<std::uint8_t> clamped;
    std::vector<std::uint8_t> divergent;
};

// One pass of the fixed-point map: alpha -> (B, R) -> renormalised H -> alpha'.
Eigen::VectorXd fixed_point_map(const net::Network& net,
                                const std::vector<bath::SpectralDensity>& baths, double beta,
                                const Eigen::VectorXd& alpha,
                                const std::vector<std::vector<int>>& partitions, int jobs,
                                Eigen::VectorXd& B_out, Eigen::VectorXd& R_out,
                                SweepDiagnostics& diag) {
    const int n = net.n_sites();
    B_out.resize(n);
    R_out.resize(n);
    diag.clamped.assign(n, 0);
    diag.divergent.assign(n, 0);
    parallel_for(n, jobs, [&](int i) {
        const Displacement d = Displacement::variational(alpha(i));
        const RenormFactor rf = renorm_factor(baths[i], d, beta);
        B_out(i) = rf.value;
        diag.divergent[i] = rf.divergent ? 1 : 0;
        R_out(i) = reorg_shift(baths[i], d, beta);
    });

    RenormalizedHamiltonian renorm;
    renorm.energies = net.energies + R_out;
    renorm.couplings =
        (B_out * B_out.transpose()).cwiseProduct(net.couplings);

    Eigen::VectorXd next(n);
    parallel_for(n, jobs, [&](int i) {
        const auto& part = partitions[i];
        const int p = static_cast<int>(part.size());
        RenormalizedHamiltonian local;
        local.energies.resize(p);
        local.couplings.resize(p, p);
        int self = 0;
        for (int a = 0; a < p; ++a) {
            if (part[a] == i) self = a;
            local.energies(a) = renorm.energies(part[a]);
            for (int b = 0; b < p; ++b) {
                local.couplings(a, b) = a == b ? 0.0 : renorm.couplings(part[a], part[b]);
            }
        }
        bool clamped = false;
        next(i) = alpha_update(local, self, beta, &clamped);
        diag.clamped[i] = clamped ? 1 : 0;
    });
    return next;
}

Eigen::VectorXd initial_alpha(const net::Network& net,
                              const std::vector<bath::SpectralDensity>& baths,
                              SolverSettings::Init init) {
    const int n = net.n_sites();
    Eigen::VectorXd a(n);
    switch (init) {
        case SolverSettings::Init::zero:
            a.setZero();
            break;
        case SolverSettings::Init::reorg:
            for (int i = 0; i < n; ++i) a(i) = bath::reorganization_energy(baths[i]);
            break;
        case SolverSettings::Init::weak: {
            double scale = net.couplings.cwiseAbs().maxCoeff();
            for (int i = 0; i < n; ++i) {
                scale = std::max(scale, bath::reorganization_energy(baths[i]));
            }
            a.setConstant(1e3 * std::max(scale, 1.0));
            break;
        }
    }
    return a;
}

VariationalSolution iterate(const net::Network& net,
                            const std::vector<bath::SpectralDensity>& baths, double beta,
                            const std::vector<std::vector<int>>& partitions,
                            const SolverSettings& settings) {
    const int n = net.n_sites();
    VariationalSolution sol;
    sol.partitions = partitions;
    sol.alpha = initial_alpha(net, baths, settings.init);

    // Floor for relative-change denominators, from the network energy scales.
    double scale = net.couplings.cwiseAbs().maxCoeff() + 1.0 / beta;
    for (int i = 0; i < n; ++i) scale = std::max(scale, bath::reorganization_energy(baths[i]));
    const double floor_scale = 1e-9 * scale;

    Eigen::VectorXd B_prev, R_prev;
    Eigen::VectorXd prev_step = Eigen::VectorXd::Zero(n);
    double eta = settings.damping;
    SweepDiagnostics diag;

    for (int sweep = 1; sweep <= settings.max_iter; ++sweep) {
        Eigen::VectorXd B, R;
        Eigen::VectorXd proposed =
            fixed_point_map(net, baths, beta, sol.alpha, partitions, settings.jobs, B, R, diag);
        const Eigen::VectorXd step = proposed - sol.alpha;

        // Sign-alternating steps indicate an oscillating iteration; halve the mix-in.
        if (sweep > 1 && step.dot(prev_step) < 0.0) {
            eta = std::max(0.05, 0.5 * eta);
        }
        prev_step = step;

        Eigen::VectorXd alpha_new = sol.alpha + eta * step;
        for (int i = 0; i < n; ++i) {
            if (alpha_new(i) < 0.0) {
                alpha_new(i) = 0.0;
                diag.clamped[i] = 1;
            }
        }

        double resid = 0.0;
        for (int i = 0; i < n; ++i) {
            resid = std::max(resid, relative_change(alpha_new(i), sol.alpha(i), floor_scale));
            if (sweep > 1) {
                resid = std::max(resid, relative_change(B(i), B_prev(i), 1e-12));
                resid = std::max(resid, relative_change(R(i), R_prev(i), floor_scale));
            }
        }
        sol.alpha = alpha_new;
        sol.coupling_renorm = B;
        sol.energy_shift = R;
        B_prev = B;
        R_prev = R;
        sol.iterations = sweep;
        sol.residual = resid;
        sol.history.push_back(resid);
        if (sweep > 1 && resid < settings.tol) {
            sol.converged = true;
            break;
        }
    }

    // Report the renormalisation consistent with the final alpha.
    SweepDiagnostics final_diag;
    Eigen::VectorXd B, R;
    fixed_point_map(net, baths, beta, sol.alpha, partitions, settings.jobs, B, R, final_diag);
    sol.coupling_renorm = B;
    sol.energy_shift = R;
    sol.clamped = diag.clamped;
    sol.divergent = final_diag.divergent;

    if (!sol.converged && settings.throw_on_failure) {
        throw NonConvergence("variational optimiser did not reach tolerance " +
                             std::to_string(settings.tol) + " in " +
                             std::to_string(settings.max_iter) + " sweeps");
    }
    return sol;
}

}  // namespace

Eigen::MatrixXd RenormalizedHamiltonian::matrix() const {
    Eigen::MatrixXd h = couplings;
    h.diagonal() = energies;
    return h;
}

RenormalizedHamiltonian VariationalSolution::renormalized(const net::Network& net) const {
    RenormalizedHamiltonian h;
    h.energies = net.energies + energy_shift;
    h.couplings = (coupling_renorm * coupling_renorm.transpose()).cwiseProduct(net.couplings);
    return h;
}

std::vector<int> select_partition(const net::Network& net, int site, int p) {
    const int n = net.n_sites();
    if (p < 1 || p > n) {
        throw std::invalid_argument("partition size must be in [1, n_sites]");
    }
    if (site < 0 || site >= n) {
        throw std::invalid_argument("site index out of range");
    }
    std::vector<int> order;
    order.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
        if (j != site) order.push_back(j);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = std::abs(net.couplings(site, a));
        const double vb = std::abs(net.couplings(site, b));
        if (va != vb) return va > vb;
        return a < b;
    });
    std::vector<int> part{site};
    part.insert(part.end(), order.begin(), order.begin() + (p - 1));
    std::sort(part.begin(), part.end());
    return part;
}

double alpha_update(const RenormalizedHamiltonian& local, int local_index, double beta,
                    bool* clamped) {
    const Eigen::MatrixXd rho = gibbs_state(local.matrix(), beta);
    const double occupancy = rho(local_index, local_index);
    if (occupancy <= 0.0 || !std::isfinite(occupancy)) {
        throw NonConvergence("vanishing site occupancy in alpha update");
    }
    const double num = (local.couplings * rho)(local_index, local_index);
    double alpha = -num / occupancy;
    if (clamped) *clamped = alpha < 0.0;
    return std::max(alpha, 0.0);
}

std::pair<double, double> connection_error(const net::Network& net,
                                           const VariationalSolution& sol, int site, int p,
                                           double beta) {
    const RenormalizedHamiltonian h = sol.renormalized(net);
    const std::vector<int> part = select_partition(net, site, p);
    std::vector<char> inside(net.n_sites(), 0);
    for (int idx : part) inside[idx] = 1;

    double frob2 = 0.0;
    for (int a : part) {
        for (int b = 0; b < net.n_sites(); ++b) {
            if (!inside[b]) {
                frob2 += 2.0 * h.couplings(a, b) * h.couplings(a, b);
            }
        }
    }
    if (frob2 == 0.0) {
        return {0.0, 0.0};
    }

    // Z_A with energies measured from the full-network minimum keeps the
    // diagnostic finite for arbitrary absolute energy offsets.
    const double shift = h.energies.minCoeff();
    auto log_z = [&](const std::vector<int>& idx) {
        if (idx.empty()) return 0.0;
        Eigen::MatrixXd block(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                block(a, b) = a == b ? h.energies(idx[a]) - shift : h.couplings(idx[a], idx[b]);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
        const Eigen::VectorXd& eps = es.eigenvalues();
        const double e0 = eps.minCoeff();
        return -beta * e0 + std::log((-beta * (eps.array() - e0)).exp().sum());
    };
    std::vector<int> complement;
    for (int j = 0; j < net.n_sites(); ++j) {
        if (!inside[j]) complement.push_back(j);
    }
    const double log_za = log_z(part) + log_z(complement);
    return {frob2, beta * frob2 * std::exp(-log_za)};
}

VariationalSolution solve_self_consistent(const net::Network& net,
                                          const std::vector<bath::SpectralDensity>& baths,
                                          double beta, const SolverSettings& settings) {
    net.validate();
    if (baths.size() != static_cast<std::size_t>(net.n_sites())) {
        throw std::invalid_argument("one spectral density per site is required");
    }
    const int n = net.n_sites();
    const int p = settings.partition_size == 0 ? n : settings.partition_size;
    if (p > n) {
        throw std::invalid_argument("partition size exceeds network size");
    }
    std::vector<std::vector<int>> partitions;
    partitions.reserve(n);
    for (int i = 0; i < n; ++i) {
        partitions.push_back(select_partition(net, i, p));
    }
    return iterate(net, baths, beta, partitions, settings);
}

VariationalSolution solve_global(const net::Network& net,
                                 const std::vector<bath::SpectralDensity>& baths, double beta,
                                 double tol, int max_iter) {
    if (net.n_sites() > 64) {
        throw ScopeError("dense reference solver is guarded to 64 sites");
    }
    const int n = net.n_sites();
    VariationalSolution sol;
    sol.alpha.resize(n);
    for (int i = 0; i < n; ++i) sol.alpha(i) = bath::reorganization_energy(baths[i]);
    sol.clamped.assign(n, 0);
    sol.divergent.assign(n, 0);

    double scale = net.couplings.cwiseAbs().maxCoeff() + 1.0 / beta;
    const double floor_scale = 1e-9 * std::max(scale, 1.0);
    const double eta = 0.7;

    Eigen::VectorXd B(n), R(n);
    for (int sweep = 1; sweep <= max_iter; ++sweep) {
        for (int i = 0; i < n; ++i) {
            const Displacement d = Displacement::variational(sol.alpha(i));
            B(i) = renorm_factor(baths[i], d, beta).value;
            R(i) = reorg_shift(baths[i], d, beta);
        }
        RenormalizedHamiltonian h;
        h.energies = net.energies + R;
        h.couplings = (B * B.transpose()).cwiseProduct(net.couplings);
        const Eigen::MatrixXd rho = gibbs_state(h.matrix(), beta);
        double resid = 0.0;
        for (int i = 0; i < n; ++i) {
            const double num = (h.couplings * rho)(i, i);
            double a_new = std::max(0.0, -num / rho(i, i));
            a_new = sol.alpha(i) + eta * (a_new - sol.alpha(i));
            resid = std::max(resid, std::abs(a_new - sol.alpha(i)) /
                                        std::max({std::abs(a_new), std::abs(sol.alpha(i)),
                                                  floor_scale}));
            sol.alpha(i) = a_new;
        }
        sol.iterations = sweep;
        sol.residual = resid;
        if (resid < tol) {
            sol.converged = true;
            break;
        }
    }
    for (int i = 0; i < n; ++i) {
        const Displacement d = Displacement::variational(sol.alpha(i));
        const RenormFactor rf = renorm_factor(baths[i], d, beta);
        B(i) = rf.value;
        sol.divergent[i] = rf.divergent ? 1 : 0;
        R(i) = reorg_shift(baths[i], d, beta);
    }
    sol.coupling_renorm = B;
    sol.energy_shift = R;
    sol.partitions.assign(n, {});
    return sol;
}

VariationalSolution full_polaron_solution(const net::Network& net,
                                          const std::vector<bath::SpectralDensity>& baths,
                                          double beta) {
    const int n = net.n_sites();
    VariationalSolution sol;
    sol.alpha = Eigen::VectorXd::Zero(n);
    sol.coupling_renorm.resize(n);
    sol.energy_shift.resize(n);
    sol.clamped.assign(n, 0);
    sol.divergent.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        const RenormFactor rf = renorm_factor(baths[i], Displacement::full_polaron(), beta);
        sol.coupling_renorm(i) = rf.value;
        sol.divergent[i] = rf.divergent ? 1 : 0;
        sol.energy_shift(i) = -bath::reorganization_energy(baths[i]);
    }
    sol.converged = true;
    return sol;
}

VariationalSolution undisplaced_solution(const net::Network& net) {
    const int n = net.n_sites();
    VariationalSolution sol;
    sol.alpha = Eigen::VectorXd::Zero(n);
    sol.coupling_renorm = Eigen::VectorXd::Ones(n);
    sol.energy_shift = Eigen::VectorXd::Zero(n);
    sol.clamped.assign(n, 0);
    sol.divergent.assign(n, 0);
    sol.converged = true;
    return sol;
}

std::vector<std::pair<int, double>> convergence_scan(
    const net::Network& net, const std::vector<bath::SpectralDensity>& baths, double beta,
    int p_min, int p_max, const SolverSettings& settings) {
    if (p_min < 1 || p_max > net.n_sites() || p_min > p_max) {
        throw std::invalid_argument("partition range out of bounds");
    }
    std::vector<std::pair<int, double>> out;
    VariationalSolution prev;
    for (int p = p_min; p <= p_max; ++p) {
        SolverSettings s = settings;
        s.partition_size = p;
        VariationalSolution sol = solve_self_consistent(net, baths, beta, s);
        if (p > p_min) {
            double eps = 0.0;
            for (int i = 0; i < net.n_sites(); ++i) {
                eps = std::max(eps, relative_change(sol.coupling_renorm(i),
                                                    prev.coupling_renorm(i), 1e-12));
                eps = std::max(eps, relative_change(sol.energy_shift(i), prev.energy_shift(i),
                                                    1e-12));
            }
            out.emplace_back(p, eps);
        }
        prev = std::move(sol);
    }
    return out;
}

double free_energy_bound(const RenormalizedHamiltonian& h, double beta) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix());
    const Eigen::VectorXd& eps = es.eigenvalues();
    const double e0 = eps.minCoeff();
    const double lse = std::log((-beta * (eps.array() - e0)).exp().sum());
    return e0 - lse / beta;
}

}  // namespace varpol::vopt
