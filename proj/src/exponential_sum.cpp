#include "varpol/exponential_sum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace varpol::rates {

namespace {

// (1 - e^{-z t}) / z, stable for small |z t|.
cplx em1_over(cplx z, double t) {
    const cplx zt = z * t;
    if (std::abs(zt) < 1e-4) {
        return t * (1.0 - zt / 2.0 + zt * zt / 6.0 - zt * zt * zt / 24.0);
    }
    return (1.0 - std::exp(-zt)) / z;
}

// (1 - (1 + z t) e^{-z t}) / z^2, stable for small |z t|.
cplx em1_linear_over(cplx z, double t) {
    const cplx zt = z * t;
    if (std::abs(zt) < 1e-3) {
        return t * t * (0.5 - zt / 3.0 + zt * zt / 8.0 - zt * zt * zt / 30.0);
    }
    return (1.0 - (1.0 + zt) * std::exp(-zt)) / (z * z);
}

}  // namespace

cplx ExponentialSum::eval(double t) const {
    cplx v = 0.0;
    for (const auto& tm : terms) {
        v += (tm.a + tm.b * t) * std::exp(-tm.gamma * t);
    }
    return v;
}

cplx ExponentialSum::half_fourier(double omega, double t) const {
    const cplx i_omega(0.0, omega);
    cplx v = 0.0;
    const bool to_infinity = std::isinf(t);
    for (const auto& tm : terms) {
        const cplx z = tm.gamma - i_omega;
        if (to_infinity) {
            v += tm.a / z + tm.b / (z * z);
        } else {
            v += tm.a * em1_over(z, t) + tm.b * em1_linear_over(z, t);
        }
    }
    return v;
}

double ExponentialSum::sup_bound() const {
    double s = 0.0;
    for (const auto& tm : terms) {
        s += std::abs(tm.a);
        const double rg = tm.gamma.real();
        if (rg > 0.0) {
            s += std::abs(tm.b) / (std::exp(1.0) * rg);  // max of t e^{-rg t}
        }
    }
    return s;
}

double ExponentialSum::decay_time(double cut) const {
    if (terms.empty()) {
        return 0.0;
    }
    auto envelope = [&](double t) {
        double e = 0.0;
        for (const auto& tm : terms) {
            e += (std::abs(tm.a) + std::abs(tm.b) * t) * std::exp(-tm.gamma.real() * t);
        }
        return e;
    };
    const double target = cut * std::max(envelope(0.0), 1e-300);
    double hi = 1.0;
    while (envelope(hi) > target && hi < 1e6) {
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (envelope(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

bool ExponentialSum::pure_exponential(double tol) const {
    for (const auto& tm : terms) {
        if (std::abs(tm.b) > tol) {
            return false;
        }
    }
    return true;
}

ExponentialSum& ExponentialSum::operator+=(const ExponentialSum& other) {
    terms.insert(terms.end(), other.terms.begin(), other.terms.end());
    return *this;
}

ExponentialSum ExponentialSum::scaled(cplx factor) const {
    ExponentialSum out = *this;
    for (auto& tm : out.terms) {
        tm.a *= factor;
        tm.b *= factor;
    }
    return out;
}

void ExponentialSum::validate() const {
    for (const auto& tm : terms) {
        if (!(tm.gamma.real() > 0.0)) {
            throw std::invalid_argument("exponential sum requires Re gamma > 0");
        }
    }
}

}  // namespace varpol::rates
