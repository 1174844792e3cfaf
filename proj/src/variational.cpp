#include "lognls/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lognls/functionals.hpp"
#include "lognls/gausson.hpp"

namespace lognls {

GridSpec variational_grid(int dim) {
    if (dim == 1) return GridSpec(1, 20.0, 256);
    if (dim == 2) return GridSpec(2, 16.0, 128);
    throw std::invalid_argument("variational_grid: dimension must be 1 or 2");
}

WaveField rescale_to_mass(const WaveField& u, double mass) {
    const double q = l2_norm_sq(u);
    if (!(q > 0.0)) throw std::invalid_argument("rescale_to_mass: zero field");
    WaveField out = u;
    const double s = std::sqrt(mass / q);
    for (auto& z : out.values) z *= s;
    return out;
}

namespace {

double h1_norm_sq(const WaveField& w) { return kinetic_integral(w) + l2_norm_sq(w); }

double wrap_angle(double a) {
    double t = std::fmod(a, 2.0 * std::numbers::pi);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    return t >= 2.0 * std::numbers::pi ? 0.0 : t;
}

Vec center_of_mass(const WaveField& u) {
    double w = 0.0;
    Vec first{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r2 = std::norm(u.values[i]);
        w += r2;
        first = first + r2 * u.grid.node(i);
    }
    return w > 0.0 ? (1.0 / w) * first : Vec{};
}

} // namespace

MinimizeResult minimize_energy(const WaveField& init, double mass_target, double tol, int max_iter,
                               const MinimizeObserver& observer) {
    if (!(mass_target > 0.0)) throw std::invalid_argument("minimize_energy: mass_target must be positive");
    if (!(l2_norm_sq(init) > 0.0)) throw std::invalid_argument("minimize_energy: init must be nonzero");
    if (max_iter < 1) throw std::invalid_argument("minimize_energy: max_iter must be >= 1");

    WaveField u = rescale_to_mass(init, mass_target);
    double energy = energy_unscaled(u);
    // explicit steps are stable below ~2 / k_max^2
    double kmax2 = 0.0;
    for (int a = 0; a < u.grid.dim(); ++a) kmax2 += std::pow(std::numbers::pi / u.grid.spacing(a), 2);
    const double tau_max = 1.0 / kmax2;
    double tau = tau_max;

    MinimizeResult res{.field = u};
    int it = 0;
    while (it < max_iter) {
        ++it;
        const WaveField g = energy_gradient(u);
        bool accepted = false;
        double e_new = energy;
        WaveField trial = u;
        while (tau >= 1e-14) {
            for (std::size_t i = 0; i < u.size(); ++i) trial.values[i] = u.values[i] - tau * g.values[i];
            trial = rescale_to_mass(trial, mass_target);
            e_new = energy_unscaled(trial);
            if (e_new <= energy) {
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) {
            res.converged = true;
            break;
        }
        const double decrease = energy - e_new;
        u = std::move(trial);
        energy = e_new;
        if (observer) observer(it, u, energy);
        if (decrease < tol) {
            res.converged = true;
            break;
        }
        tau = std::min(1.5 * tau, tau_max);
    }
    res.iterations = it;
    res.energy = energy;
    res.aligned_h1_dist = align_to_gausson(u).dist_h1;
    res.field = std::move(u);
    return res;
}

Alignment align_to_gausson(const WaveField& u) {
    const int n = u.grid.dim();
    const double m = analytic_constants(n).mass;
    const OverlapPeak peak = maximize_overlap(u, 1.0, center_of_mass(u));

    Alignment a;
    a.y = peak.y;
    a.overlap = std::abs(peak.overlap);
    a.theta = wrap_angle(std::arg(peak.overlap));
    a.far_from_orbit = a.overlap < 0.1 * m;

    const WaveField orbit = modulated_gausson(u.grid, 1.0, a.y, Vec{}, a.theta);
    WaveField w = u;
    for (std::size_t i = 0; i < u.size(); ++i) w.values[i] -= orbit.values[i];
    a.dist_h1 = std::sqrt(h1_norm_sq(w));

    WaveField phase_dir = orbit;
    for (auto& z : phase_dir.values) z *= Complex{0.0, 1.0};
    a.fw_residual = std::abs(real_inner(w, phase_dir));
    for (int ax = 0; ax < n; ++ax) {
        WaveField d = orbit;
        for (std::size_t i = 0; i < u.size(); ++i) d.values[i] *= -2.0 * (u.grid.node(i)[ax] - a.y[ax]);
        a.fw_residual = std::max(a.fw_residual, std::abs(real_inner(w, d)));
    }
    return a;
}

WaveField random_perturbation(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = grid.dim();

    std::vector<std::pair<Vec, Complex>> terms;
    const int kmax = 4;  // |kappa| <= 2 in steps of 0.5
    for (int i = -kmax; i <= kmax; ++i) {
        for (int j = (n == 2 ? -kmax : 0); j <= (n == 2 ? kmax : 0); ++j) {
            const Vec k{0.5 * i, 0.5 * j};
            if (norm(k) > 2.0 + 1e-12) continue;
            const double re = normal(rng);
            const double im = normal(rng);
            terms.push_back({k, Complex{re, im}});
        }
    }
    WaveField out(grid, 1.0);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const Vec x = grid.node(p);
        Complex s{};
        for (const auto& [k, c] : terms) s += c * std::polar(1.0, dot(k, x));
        out.values[p] = std::exp(-0.5 * dot(x, x)) * s;
    }
    return rescale_to_mass(out, 1.0);
}

QuadraticProbe quadratic_lower_bound_probe(int dim, int n_samples, double amplitude, std::uint64_t seed) {
    if (!(amplitude > 0.0) || amplitude > 0.1)
        throw std::invalid_argument("quadratic_lower_bound_probe: amplitude must be in (0, 0.1]");
    if (n_samples < 1) throw std::invalid_argument("quadratic_lower_bound_probe: n_samples must be >= 1");

    const GridSpec grid = variational_grid(dim);
    const WaveField r = profile_R(grid);
    const double m = l2_norm_sq(r);
    const double e_r = energy_unscaled(r);

    QuadraticProbe out{.min_ratio = std::numeric_limits<double>::infinity(),
                       .min_energy_gap = std::numeric_limits<double>::infinity()};
    for (int s = 0; s < n_samples; ++s) {
        const WaveField xi = random_perturbation(grid, seed + static_cast<std::uint64_t>(s));
        WaveField phi = r;
        for (std::size_t i = 0; i < r.size(); ++i) phi.values[i] += amplitude * xi.values[i];
        phi = rescale_to_mass(phi, m);
        const double gap = energy_unscaled(phi) - e_r;
        const double dist = align_to_gausson(phi).dist_h1;
        out.min_energy_gap = std::min(out.min_energy_gap, gap);
        if (dist < 1e-10) continue;
        out.min_ratio = std::min(out.min_ratio, gap / (dist * dist));
        ++out.used_samples;
    }
    return out;
}

} // namespace lognls
