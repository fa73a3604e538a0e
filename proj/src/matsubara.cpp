#include "varpol/matsubara.hpp"

#include <cmath>
#include <stdexcept>

namespace varpol::rates {

double shifted_pole_series(double alpha, double beta, int k) {
    const double a = alpha, b = beta;
    const double n = static_cast<double>(k);
    const double ab = a * b;
    const double pi = M_PI;
    const double num = -128.0 * std::pow(pi, 4) * a * a * b * b * std::pow(n, 4) * (ab + 6.0) -
                       15.0 * std::pow(a, 4) * std::pow(b, 4) * std::pow(ab + 4.0, 3) +
                       3072.0 * std::pow(pi, 8) * std::pow(n, 8) +
                       1536.0 * std::pow(pi, 6) * ab * std::pow(n, 6) +
                       4.0 * pi * pi * std::pow(a, 3) * std::pow(b, 3) * n * n *
                           (3.0 * a * a * b * b + 64.0 * ab + 192.0);
    return num / (1536.0 * std::pow(pi, 7) * b * std::pow(n, 7));
}

std::vector<cplx> matsubara_poles(double alpha, double beta, int n_poles) {
    if (n_poles < 1 || !(alpha >= 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("matsubara_poles: need n_poles >= 1, alpha >= 0, beta > 0");
    }
    const double temperature = 1.0 / beta;
    const double spacing = 2.0 * M_PI * temperature;
    std::vector<cplx> poles;
    poles.reserve(n_poles);

    // On the imaginary axis the root equation reads y = alpha * cot(beta*y/2),
    // with exactly one solution in (2 pi k T, 2 pi k T + pi T) where cot > 0.
    auto g = [&](double y) { return y - alpha / std::tan(0.5 * beta * y); };
    auto dg = [&](double y) {
        const double s = std::sin(0.5 * beta * y);
        return 1.0 + 0.5 * alpha * beta / (s * s);
    };

    for (int k = 0; k < n_poles; ++k) {
        double lo = k * spacing;
        double hi = k * spacing + 0.5 * spacing;  // cot zero crossing
        if (alpha == 0.0) {
            poles.emplace_back(0.0, lo);  // bare Matsubara limit
            continue;
        }
        // Bracket away from the pole of cot at the lower edge.
        lo += 1e-12 * spacing + 1e-300;
        while (g(lo) > 0.0) {
            lo += 0.1 * (hi - lo);
        }
        double y = k >= 1 ? shifted_pole_series(alpha, beta, k) : std::sqrt(2.0 * alpha * temperature);
        if (!(y > lo && y < hi)) {
            y = 0.5 * (lo + hi);
        }
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const double f = g(y);
            (f > 0.0 ? hi : lo) = y;
            const double step = f / dg(y);
            double y_next = y - step;
            if (!(y_next > lo && y_next < hi)) {
                y_next = 0.5 * (lo + hi);  // bisection fallback keeps the bracket
            }
            const double dy = std::abs(y_next - y);
            y = y_next;
            if (dy < 1e-14 * std::max(y, spacing)) {
                converged = true;
                break;
            }
        }
        (void)converged;  // the bracket guarantees the bisection limit either way
        poles.emplace_back(0.0, y);
    }
    return poles;
}

}  // namespace varpol::rates
