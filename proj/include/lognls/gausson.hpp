#pragma once

#include <vector>

#include "lognls/grid.hpp"

namespace lognls {

struct GaussonParams {
    double eps = 0.1;
    Vec x0{};
    Vec v0{};
    double omega = 1.0;
};

/// Log R(x)^2 = (1+N) - 2|x|^2, evaluated without forming R.
double log_profile_sq(const Vec& x, int dim);

/// Samples of e^{(omega-1)/2} R(x), R(x) = e^{(1+N)/2} e^{-|x|^2}, tagged eps = 1.
WaveField profile_R(const GridSpec& grid, double omega = 1.0);

/// Samples of dR/dx_axis = -2 x_axis R(x).
WaveField profile_R_derivative(const GridSpec& grid, int axis);

/// exp{(i/eps)(velocity.x + phase)} R((x - center)/eps), tagged with eps.
WaveField modulated_gausson(const GridSpec& grid, double eps, const Vec& center, const Vec& velocity,
                            double phase);

/// u(x) = e^{(i/eps) x.v0} R((x - x0)/eps). Warns if the grid is under-resolved.
WaveField initial_datum(const GaussonParams& p, const GridSpec& grid);

/**
 * Closed-form boosted Gausson solving the free (V = 0) equation:
 *
 *   u(x,t) = exp{(i/eps)(v0.x - |v0|^2 t/2 + t)} R((x - x0 - v0 t)/eps).
 *
 * Substituting into i eps u_t + (eps^2/2) Lap u + u Log|u|^2 = 0 reduces the
 * equation to -Lap R / 2 + R - R Log R^2 = 0, which R satisfies; see
 * docs/free-gausson.md.
 */
WaveField exact_free_solution(const GaussonParams& p, const GridSpec& grid, double t);

/// Analytic time derivative of exact_free_solution, used by residual checks.
WaveField exact_free_solution_dt(const GaussonParams& p, const GridSpec& grid, double t);

/// p_eps = eps^{1-N} Im(conj(u) grad u), one field per axis.
std::vector<RealField> momentum_density(const WaveField& u);

/// Integral of p_eps over the grid.
Vec total_momentum(const WaveField& u);

struct OverlapPeak {
    Vec y{};
    Complex overlap{};  // int T(x - y) f(x) dx at the optimum
    int iterations = 0;
    bool converged = false;
};

/**
 * Newton ascent of |int T((x - y)/width) f(x) dx|^2 over y, with the real
 * template T(z) = e^{(1+N)/2} e^{-|z|^2}. Steps are clamped to one width.
 */
OverlapPeak maximize_overlap(const WaveField& f, double width, Vec start, int max_iter = 100);

struct AnalyticConstants {
    double mass;        // m = ||R||^2 = e^{N+1} (pi/2)^{N/2}
    double energy;      // E(R) = -m
    double action;      // S(R) = m/2
    double nehari;      // I(R) = 0
    double grad_sq;     // ||grad R||^2 = m N
    double x2_moment;   // int |x|^2 R^2 = m N / 4
    double log_moment;  // int R^2 Log R^2 = m (1 + N/2)
};

AnalyticConstants analytic_constants(int dim);

} // namespace lognls
