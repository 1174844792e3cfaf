#include "lognls/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lognls {

RealField log_density(const WaveField& u, double floor) {
    if (floor < 0.0) throw std::invalid_argument("log_density: floor must be >= 0");
    RealField out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r2 = std::norm(u.values[i]);
        out.values[i] = (r2 > floor && r2 > 0.0) ? r2 * std::log(r2) : 0.0;
    }
    return out;
}

double log_integral(const WaveField& u, double floor) { return integrate(log_density(u, floor)); }

double kinetic_integral(const WaveField& u) {
    double s = 0.0;
    for (const auto& d : gradient(u)) {
        for (const auto& z : d.values) s += std::norm(z);
    }
    return s * u.grid.cell_volume();
}

double mass_scaled(const WaveField& u) { return std::pow(u.eps, -u.grid.dim()) * l2_norm_sq(u); }

double energy_scaled(const WaveField& u, const Potential& V) {
    const int n = u.grid.dim();
    const RealField v = evaluate(V, u.grid);
    double pot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) pot += v.values[i] * std::norm(u.values[i]);
    pot *= u.grid.cell_volume();
    // the three integrals are taken in the grid frame; eps prefactors last
    return 0.5 * std::pow(u.eps, 2 - n) * kinetic_integral(u) + std::pow(u.eps, -n) * (pot - log_integral(u));
}

double energy_unscaled(const WaveField& u) { return 0.5 * kinetic_integral(u) - log_integral(u); }

double action_S(const WaveField& u) {
    return 0.25 * kinetic_integral(u) + l2_norm_sq(u) - 0.5 * log_integral(u);
}

double nehari_I(const WaveField& u) { return 0.5 * kinetic_integral(u) + l2_norm_sq(u) - log_integral(u); }

double nehari_scale(const WaveField& u) {
    const double q = l2_norm_sq(u);
    if (!(q > 0.0)) throw std::domain_error("undefined Nehari scaling");
    return std::exp(nehari_I(u) / (2.0 * q));
}

FunctionalReport functional_report(const WaveField& u, const Potential& V) {
    const double k = kinetic_integral(u);
    const double q = l2_norm_sq(u);
    const double l = log_integral(u);
    return {
        .energy_unscaled = 0.5 * k - l,
        .energy_scaled = energy_scaled(u, V),
        .mass_scaled = mass_scaled(u),
        .action = 0.25 * k + q - 0.5 * l,
        .nehari = 0.5 * k + q - l,
        .kinetic = k,
        .mass = q,
        .logterm = l,
    };
}

WaveField energy_gradient(const WaveField& u, double floor) {
    WaveField g = laplacian(u);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r2 = std::norm(u.values[i]);
        const double lg = (r2 > floor && r2 > 0.0) ? std::log(r2) : 0.0;
        g.values[i] = -g.values[i] - 2.0 * u.values[i] * (lg + 1.0);
    }
    return g;
}

namespace {

const double kPhiBreak = std::exp(-3.0);

} // namespace

double phi_young(double s) {
    if (s < 0.0 || std::isnan(s)) throw std::domain_error("phi_young: argument must be >= 0");
    if (s == 0.0) return 0.0;
    if (s <= kPhiBreak) return -s * s * std::log(s * s);
    return 3.0 * s * s + 4.0 * kPhiBreak * s - std::exp(-6.0);
}

double psi_fn(double s) {
    const double a = std::abs(s);
    const double f = (a == 0.0) ? 0.0 : a * a * std::log(a * a);
    return f + phi_young(a);
}

double luxemburg_norm(const WaveField& u) {
    double umax = 0.0;
    for (const auto& z : u.values) umax = std::max(umax, std::abs(z));
    if (umax == 0.0) return 0.0;

    auto excess = [&](double k) {
        double s = 0.0;
        for (const auto& z : u.values) s += phi_young(std::abs(z) / k);
        return s * u.grid.cell_volume() - 1.0;
    };

    // k -> int Phi(|u|/k) is strictly decreasing
    double lo = 1e-8 * umax;
    double hi = 1e8 * umax;
    while (excess(lo) <= 0.0) lo *= 0.5;
    while (excess(hi) > 0.0) hi *= 2.0;

    while (hi - lo > 1e-12 * hi) {
        const double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        if (excess(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return hi;
}

double log_sobolev_gap(const WaveField& u, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("log_sobolev_gap: alpha must be positive");
    const double q = l2_norm_sq(u);
    if (!(q > 0.0)) throw std::invalid_argument("log_sobolev_gap: zero field");
    const int n = u.grid.dim();
    const double rhs = alpha * alpha / std::numbers::pi * kinetic_integral(u) +
                       (std::log(q) - n * (1.0 + std::log(alpha))) * q;
    return rhs - log_integral(u);
}

} // namespace lognls
