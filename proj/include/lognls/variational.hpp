#pragma once

#include <cstdint>
#include <functional>

#include "lognls/grid.hpp"

namespace lognls {

/// Grid used for the unscaled (eps = 1) variational problems.
GridSpec variational_grid(int dim);

struct MinimizeResult {
    WaveField field;
    double energy = 0.0;
    int iterations = 0;
    double aligned_h1_dist = 0.0;
    bool converged = false;
};

/// Called after every accepted iterate with (iteration, field, energy).
using MinimizeObserver = std::function<void(int, const WaveField&, double)>;

/**
 * Normalized gradient descent for inf{E(u) : ||u||^2 = mass_target}:
 * u <- u - tau E'(u), then rescale to the target mass. tau halves until the
 * energy does not increase and grows by 1.5 after each success. Stops when the
 * accepted decrease drops below tol, or when no step down exists above
 * tau = 1e-14. Non-convergence within max_iter is reported, not thrown.
 */
MinimizeResult minimize_energy(const WaveField& init, double mass_target, double tol = 1e-13, int max_iter = 200000,
                               const MinimizeObserver& observer = {});

struct Alignment {
    Vec y{};
    double theta = 0.0;      // in [0, 2 pi)
    double dist_h1 = 0.0;    // ||u - e^{i theta} R(. - y)||_{H^1}
    double overlap = 0.0;    // |int R(x - y) u(x) dx|
    double fw_residual = 0.0;  // max |(w, iR_y)|, |(w, dR_y/dx_j)| for the aligned w
    bool far_from_orbit = false;
};

/// Phase and translation maximizing the L^2 overlap with R; unscaled frame.
Alignment align_to_gausson(const WaveField& u);

/// Rescale u to the given L^2 mass.
WaveField rescale_to_mass(const WaveField& u, double mass);

/**
 * Smooth complex field e^{-|x|^2/2} sum_k c_k e^{i kappa_k . x} with Gaussian
 * coefficients, |kappa| <= 2 on a 0.5 lattice, normalized to unit L^2 norm.
 */
WaveField random_perturbation(const GridSpec& grid, std::uint64_t seed);

struct QuadraticProbe {
    double min_ratio = 0.0;
    double min_energy_gap = 0.0;  // min of E(phi) - E(R) over samples
    int used_samples = 0;
};

/// min over samples of (E(phi) - E(R)) / dist_h1^2 with phi the mass-m
/// rescaling of R + amplitude * perturbation. amplitude must be in (0, 0.1].
QuadraticProbe quadratic_lower_bound_probe(int dim, int n_samples, double amplitude, std::uint64_t seed = 7);

} // namespace lognls
