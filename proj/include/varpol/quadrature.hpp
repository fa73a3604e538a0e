// quadrature.hpp — adaptive frequency-axis integration used by the bath integrals.

#pragma once

#include <functional>
#include <vector>

namespace varpol::quad {

// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-8, int max_depth = 15);

// Integrate over a panel decomposition given by ascending edges.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, double rel_tol = 1e-8);

// Fixed Gauss-Legendre rule (16-point) mapped to [a, b]; appends nodes/weights.
void gauss_legendre_16(double a, double b, std::vector<double>& nodes,
                       std::vector<double>& weights);

}  // namespace varpol::quad
