#include "varpol/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "varpol/quadrature.hpp"
#include "varpol/units.hpp"

namespace varpol::bath {

namespace {

constexpr double kFactorial7x2 = 10080.0;  // 7! * 2

double eval_form(const DrudeLorentz& d, double w) {
    double j = 0.0;
    for (const auto& t : d.terms) {
        const double dw = w - t.omega0;
        j += t.lambda * t.gamma * w / (dw * dw + t.gamma * t.gamma);
    }
    return j;
}

double eval_form(const SuperOhmic& d, double w) {
    const double x = w / d.cutoff;
    return d.amplitude * x * x * x * std::exp(-x);
}

double eval_form(const AdolphsRenger& d, double w) {
    if (w == 0.0) {
        return 0.0;
    }
    const double pref = d.huang_rhys / (d.s1 + d.s2);
    const double w5 = w * w * w * w * w;
    auto term = [&](double s, double wi) {
        return s / (kFactorial7x2 * wi * wi * wi * wi) * w5 * std::exp(-std::sqrt(w / wi));
    };
    return pref * (term(d.s1, d.omega1) + term(d.s2, d.omega2));
}

double eval_form(const ModeComb& d, double w) {
    double j = 0.0;
    const double g2 = d.width * d.width;
    for (const auto& m : d.modes) {
        const double dm = w - m.omega;
        const double dp = w + m.omega;
        j += m.huang_rhys * 4.0 * w * d.width * m.omega * (m.omega * m.omega + g2) /
             (M_PI * (dm * dm + g2) * (dp * dp + g2));
    }
    return j;
}

void validate_positive(double x, const char* name) {
    if (!(x > 0.0)) {
        throw std::invalid_argument(std::string("spectral density parameter '") + name +
                                    "' must be positive");
    }
}

}  // namespace

SpectralDensity SpectralDensity::drude_lorentz(double lambda_cm1, double gamma_cm1,
                                               double omega0_cm1) {
    validate_positive(gamma_cm1, "gamma");
    if (lambda_cm1 < 0.0 || omega0_cm1 < 0.0) {
        throw std::invalid_argument("drude_lorentz: lambda and omega0 must be >= 0");
    }
    DrudeLorentz d;
    d.terms.push_back({units::from_cm1(lambda_cm1), units::from_cm1(gamma_cm1),
                       units::from_cm1(omega0_cm1)});
    return SpectralDensity{std::move(d)};
}

SpectralDensity SpectralDensity::super_ohmic(double A_cm1, double omega_c_cm1) {
    validate_positive(omega_c_cm1, "omega_c");
    if (A_cm1 < 0.0) {
        throw std::invalid_argument("super_ohmic: amplitude must be >= 0");
    }
    return SpectralDensity{SuperOhmic{units::from_cm1(A_cm1), units::from_cm1(omega_c_cm1)}};
}

SpectralDensity SpectralDensity::adolphs_renger(double S, double s1, double s2,
                                                double omega1_cm1, double omega2_cm1) {
    validate_positive(omega1_cm1, "omega1");
    validate_positive(omega2_cm1, "omega2");
    validate_positive(s1 + s2, "s1+s2");
    if (S < 0.0) {
        throw std::invalid_argument("adolphs_renger: S must be >= 0");
    }
    return SpectralDensity{AdolphsRenger{S, s1, s2, units::from_cm1(omega1_cm1),
                                         units::from_cm1(omega2_cm1)}};
}

SpectralDensity SpectralDensity::mode_comb(
    const std::vector<std::pair<double, double>>& omega_S_cm1, double gamma_cm1) {
    validate_positive(gamma_cm1, "gamma");
    ModeComb d;
    d.width = units::from_cm1(gamma_cm1);
    for (const auto& [w, s] : omega_S_cm1) {
        validate_positive(w, "mode frequency");
        if (s < 0.0) {
            throw std::invalid_argument("mode_comb: Huang-Rhys factors must be >= 0");
        }
        d.modes.push_back({s, units::from_cm1(w)});
    }
    return SpectralDensity{std::move(d)};
}

SpectralDensity SpectralDensity::sum(std::vector<SpectralDensity> parts) {
    return SpectralDensity{SdSum{std::move(parts)}};
}

SpectralDensity SpectralDensity::scaled(double factor) const {
    if (factor < 0.0) {
        throw std::invalid_argument("scaled: factor must be >= 0");
    }
    SpectralDensity out = *this;
    std::visit(
        [&](auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, DrudeLorentz>) {
                for (auto& t : f.terms) t.lambda *= factor;
            } else if constexpr (std::is_same_v<T, SuperOhmic>) {
                f.amplitude *= factor;
            } else if constexpr (std::is_same_v<T, AdolphsRenger>) {
                f.huang_rhys *= factor;
            } else if constexpr (std::is_same_v<T, ModeComb>) {
                for (auto& m : f.modes) m.huang_rhys *= factor;
            } else {
                for (auto& p : f.parts) p = p.scaled(factor);
            }
        },
        out.form);
    return out;
}

double SpectralDensity::operator()(double omega) const {
    if (omega < 0.0) {
        throw std::domain_error("spectral density evaluated at negative frequency");
    }
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, SdSum>) {
                double j = 0.0;
                for (const auto& p : f.parts) j += p(omega);
                return j;
            } else {
                return eval_form(f, omega);
            }
        },
        form);
}

double SpectralDensity::max_frequency() const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, DrudeLorentz>) {
                double m = 0.0;
                for (const auto& t : f.terms) m = std::max(m, t.omega0 + 50.0 * t.gamma);
                return m;
            } else if constexpr (std::is_same_v<T, SuperOhmic>) {
                return 50.0 * f.cutoff;
            } else if constexpr (std::is_same_v<T, AdolphsRenger>) {
                // exp(-sqrt(w/wi)) reaches ~1e-22 at w = 2500 wi
                return 2500.0 * std::max(f.omega1, f.omega2);
            } else if constexpr (std::is_same_v<T, ModeComb>) {
                double m = 0.0;
                for (const auto& mo : f.modes) m = std::max(m, mo.omega);
                return m + 20.0 * f.width;
            } else {
                double m = 0.0;
                for (const auto& p : f.parts) m = std::max(m, p.max_frequency());
                return m;
            }
        },
        form);
}

std::vector<double> SpectralDensity::panel_edges() const {
    std::vector<double> edges{0.0, max_frequency()};
    std::function<void(const SpectralDensity&)> collect = [&](const SpectralDensity& sd) {
        std::visit(
            [&](const auto& f) {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, DrudeLorentz>) {
                    for (const auto& t : f.terms) {
                        if (t.omega0 > 0.0) {
                            edges.push_back(std::max(0.0, t.omega0 - 20.0 * t.gamma));
                            edges.push_back(t.omega0 + 20.0 * t.gamma);
                        } else {
                            edges.push_back(20.0 * t.gamma);
                        }
                    }
                } else if constexpr (std::is_same_v<T, SuperOhmic>) {
                    edges.push_back(f.cutoff);
                    edges.push_back(10.0 * f.cutoff);
                } else if constexpr (std::is_same_v<T, AdolphsRenger>) {
                    const double wc = std::max(f.omega1, f.omega2);
                    for (double s : {1.0, 25.0, 100.0, 400.0, 900.0}) edges.push_back(s * wc);
                } else if constexpr (std::is_same_v<T, ModeComb>) {
                    for (const auto& m : f.modes) {
                        edges.push_back(std::max(0.0, m.omega - 15.0 * f.width));
                        edges.push_back(m.omega + 15.0 * f.width);
                    }
                } else {
                    for (const auto& p : f.parts) collect(p);
                }
            },
            sd.form);
    };
    collect(*this);
    const double wmax = max_frequency();
    std::sort(edges.begin(), edges.end());
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [&](double e) { return e < 0.0 || e > wmax; }),
                edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [&](double a, double b) { return b - a < 1e-12 * wmax; }),
                edges.end());
    return edges;
}

double SpectralDensity::slope_at_zero() const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, DrudeLorentz>) {
                double s = 0.0;
                for (const auto& t : f.terms) {
                    s += t.lambda * t.gamma / (t.omega0 * t.omega0 + t.gamma * t.gamma);
                }
                return s;
            } else if constexpr (std::is_same_v<T, ModeComb>) {
                double s = 0.0;
                const double g2 = f.width * f.width;
                for (const auto& m : f.modes) {
                    s += m.huang_rhys * 4.0 * f.width * m.omega / (M_PI * (m.omega * m.omega + g2));
                }
                return s;
            } else if constexpr (std::is_same_v<T, SdSum>) {
                double s = 0.0;
                for (const auto& p : f.parts) s += p.slope_at_zero();
                return s;
            } else {
                return 0.0;  // super-Ohmic and Adolphs-Renger vanish faster than w
            }
        },
        form);
}

bool SpectralDensity::ohmic_at_zero() const { return slope_at_zero() > 0.0; }

SpectralDensity load_mode_comb(const std::string& path, double gamma_cm1) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open mode file: " + path);
    }
    std::vector<std::pair<double, double>> modes;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        std::istringstream ss(line);
        double w = 0.0, s = 0.0;
        if (ss >> w >> s) {
            modes.emplace_back(w, s);
        }
    }
    if (modes.empty()) {
        throw std::runtime_error("mode file has no (omega, S) rows: " + path);
    }
    return SpectralDensity::mode_comb(modes, gamma_cm1);
}

double reorganization_energy(const SpectralDensity& sd) {
    return spectral_integral(sd, [](double w) { return 1.0 / w; });
}

double spectral_integral(const SpectralDensity& sd,
                         const std::function<double(double)>& weight, double rel_tol) {
    // Integrate additive parts separately so sharp combs never hide under a
    // broad background during adaptive refinement.
    if (const auto* s = std::get_if<SdSum>(&sd.form)) {
        double total = 0.0;
        for (const auto& p : s->parts) total += spectral_integral(p, weight, rel_tol);
        return total;
    }
    if (const auto* comb = std::get_if<ModeComb>(&sd.form)) {
        double total = 0.0;
        for (const auto& m : comb->modes) {
            ModeComb single{{m}, comb->width};
            SpectralDensity one{single};
            const auto edges = one.panel_edges();
            total += quad::integrate_panels(
                [&](double w) { return w <= 0.0 ? 0.0 : eval_form(single, w) * weight(w); },
                edges, rel_tol);
        }
        return total;
    }
    const auto edges = sd.panel_edges();
    return quad::integrate_panels(
        [&](double w) { return w <= 0.0 ? 0.0 : sd(w) * weight(w); }, edges, rel_tol);
}

}  // namespace varpol::bath
