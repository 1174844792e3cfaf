#include "lognls/gausson.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lognls {

double log_profile_sq(const Vec& x, int dim) { return (1.0 + dim) - 2.0 * dot(x, x); }

WaveField profile_R(const GridSpec& grid, double omega) {
    WaveField u(grid, 1.0);
    const int n = grid.dim();
    const double shift = 0.5 * (omega - 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        u.values[i] = std::exp(0.5 * log_profile_sq(grid.node(i), n) + shift);
    }
    return u;
}

WaveField profile_R_derivative(const GridSpec& grid, int axis) {
    WaveField u = profile_R(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) u.values[i] *= -2.0 * grid.node(i)[axis];
    return u;
}

WaveField modulated_gausson(const GridSpec& grid, double eps, const Vec& center, const Vec& velocity,
                            double phase_offset) {
    WaveField u(grid, eps);
    const int n = grid.dim();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec x = grid.node(i);
        const Vec z = (1.0 / eps) * (x - center);
        const double amp = std::exp(0.5 * log_profile_sq(z, n));
        const double phase = (dot(velocity, x) + phase_offset) / eps;
        u.values[i] = std::polar(amp, phase);
    }
    return u;
}

WaveField initial_datum(const GaussonParams& p, const GridSpec& grid) {
    if (auto msg = check_resolution(grid, p.eps)) warn(*msg);
    return modulated_gausson(grid, p.eps, p.x0, p.v0, 0.0);
}

WaveField exact_free_solution(const GaussonParams& p, const GridSpec& grid, double t) {
    const Vec center = p.x0 + t * p.v0;
    const double phase = t - 0.5 * dot(p.v0, p.v0) * t;
    return modulated_gausson(grid, p.eps, center, p.v0, phase);
}

WaveField exact_free_solution_dt(const GaussonParams& p, const GridSpec& grid, double t) {
    // d/dt of exp{i phi/eps} R(z), z = (x - x0 - v0 t)/eps:
    //   i (1 - |v0|^2/2)/eps * u  +  u * (-2 z) . (-v0/eps)
    WaveField u = exact_free_solution(p, grid, t);
    const Vec center = p.x0 + t * p.v0;
    const double dphase = (1.0 - 0.5 * dot(p.v0, p.v0)) / p.eps;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec z = (1.0 / p.eps) * (grid.node(i) - center);
        const double damp = 2.0 * dot(z, p.v0) / p.eps;
        u.values[i] *= Complex{damp, dphase};
    }
    return u;
}

std::vector<RealField> momentum_density(const WaveField& u) {
    const int n = u.grid.dim();
    const double scale = std::pow(u.eps, 1 - n);
    std::vector<RealField> p;
    p.reserve(n);
    for (int a = 0; a < n; ++a) {
        const WaveField d = partial(u, a);
        RealField comp(u.grid);
        for (std::size_t i = 0; i < u.size(); ++i) {
            comp.values[i] = scale * (std::conj(u.values[i]) * d.values[i]).imag();
        }
        p.push_back(std::move(comp));
    }
    return p;
}

Vec total_momentum(const WaveField& u) {
    Vec out{};
    const auto p = momentum_density(u);
    for (std::size_t a = 0; a < p.size(); ++a) out[a] = integrate(p[a]);
    return out;
}

OverlapPeak maximize_overlap(const WaveField& f, double width, Vec start, int max_iter) {
    if (!(width > 0.0)) throw std::invalid_argument("maximize_overlap: width must be positive");
    const GridSpec& g = f.grid;
    const int n = g.dim();
    const double w2 = width * width;
    const double dv = g.cell_volume();

    OverlapPeak peak{.y = start};
    for (int it = 1; it <= max_iter; ++it) {
        peak.iterations = it;
        Complex c{};
        std::array<Complex, kMaxDim> c1{};
        std::array<std::array<Complex, kMaxDim>, kMaxDim> c2{};
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec z = (1.0 / width) * (g.node(i) - peak.y);
            const double z2 = dot(z, z);
            if (z2 > 40.0) continue;
            const Complex tf = std::exp(0.5 * log_profile_sq(z, n)) * f.values[i];
            c += tf;
            for (int a = 0; a < n; ++a) {
                c1[a] += (2.0 * z[a] / width) * tf;
                for (int b = 0; b < n; ++b) c2[a][b] += ((4.0 * z[a] * z[b] - (a == b ? 2.0 : 0.0)) / w2) * tf;
            }
        }
        c *= dv;
        for (int a = 0; a < n; ++a) {
            c1[a] *= dv;
            for (int b = 0; b < n; ++b) c2[a][b] *= dv;
        }
        peak.overlap = c;

        // ascent on |c|^2
        Vec grad{};
        double h[kMaxDim][kMaxDim]{};
        for (int a = 0; a < n; ++a) {
            grad[a] = 2.0 * (std::conj(c) * c1[a]).real();
            for (int b = 0; b < n; ++b) h[a][b] = 2.0 * (std::conj(c1[a]) * c1[b] + std::conj(c) * c2[a][b]).real();
        }
        Vec step{};
        bool newton = false;
        if (n == 1 && h[0][0] < 0.0) {
            step[0] = -grad[0] / h[0][0];
            newton = true;
        } else if (n == 2) {
            const double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
            if (h[0][0] < 0.0 && det > 0.0) {
                step[0] = -(h[1][1] * grad[0] - h[0][1] * grad[1]) / det;
                step[1] = -(-h[1][0] * grad[0] + h[0][0] * grad[1]) / det;
                newton = true;
            }
        }
        if (!newton) {
            const double scale = std::norm(c) > 0.0 ? w2 / (4.0 * std::norm(c)) : 0.0;
            step = scale * grad;
        }
        const double len = norm(step);
        if (len > width) step = (width / len) * step;
        peak.y = peak.y + step;
        if (newton && norm(step) <= 1e-13 * (width + norm(peak.y))) {
            peak.converged = true;
            break;
        }
        if (len == 0.0) {
            peak.converged = std::norm(c) > 0.0;
            break;
        }
    }
    return peak;
}

AnalyticConstants analytic_constants(int dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("analytic_constants: dimension must be 1 or 2");
    const double n = dim;
    const double m = std::exp(n + 1.0) * std::pow(std::numbers::pi / 2.0, n / 2.0);
    return {
        .mass = m,
        .energy = -m,
        .action = 0.5 * m,
        .nehari = 0.0,
        .grad_sq = m * n,
        .x2_moment = m * n / 4.0,
        .log_moment = m * (1.0 + n / 2.0),
    };
}

} // namespace lognls
