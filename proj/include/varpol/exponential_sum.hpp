// exponential_sum.hpp — phi(t) = sum_j (a_j + b_j t) exp(-gamma_j t) with
// Re gamma_j > 0, plus the closed-form windowed Fourier integrals the master
// equation consumes.

#pragma once

#include <vector>

#include "varpol/common.hpp"

namespace varpol::rates {

struct ExponentialSum {
    struct Term {
        cplx a;
        cplx b;
        cplx gamma;  // Re gamma > 0
    };
    std::vector<Term> terms;

    cplx eval(double t) const;

    // integral_0^t (a + b s) e^{-gamma s} e^{i omega s} ds; t = infinity allowed.
    cplx half_fourier(double omega, double t) const;

    // Sum of |a_j| + |b_j|/(e Re gamma_j): bound on sup_t |phi(t)|.
    double sup_bound() const;

    // Earliest time where the term-wise envelope falls below cut * envelope(0).
    double decay_time(double cut = 1e-6) const;

    // All linear-in-t coefficients vanish (required by the expansion route).
    bool pure_exponential(double tol = 0.0) const;

    ExponentialSum& operator+=(const ExponentialSum& other);
    ExponentialSum scaled(cplx factor) const;

    void validate() const;  // throws when some Re gamma <= 0
};

}  // namespace varpol::rates
