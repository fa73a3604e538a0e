#include "varpol/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace varpol::quad {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, int max_depth) {
    if (b <= a) {
        return 0.0;
    }
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, rel_tol);
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& edges, double rel_tol) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        total += integrate(f, edges[i], edges[i + 1], rel_tol);
    }
    return total;
}

namespace {

// Abscissae/weights of the 16-point Gauss-Legendre rule on [-1, 1] (positive half).
constexpr double gl16_x[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double gl16_w[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace

void gauss_legendre_16(double a, double b, std::vector<double>& nodes,
                       std::vector<double>& weights) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < 8; ++i) {
        nodes.push_back(mid - half * gl16_x[i]);
        weights.push_back(half * gl16_w[i]);
        nodes.push_back(mid + half * gl16_x[i]);
        weights.push_back(half * gl16_w[i]);
    }
}

}  // namespace varpol::quad
