#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lognls/classical.hpp"
#include "lognls/cutoff.hpp"
#include "lognls/grid.hpp"
#include "lognls/potentials.hpp"
#include "lognls/solver.hpp"

namespace lognls {

struct ModulationFit {
    double t = 0.0;
    Vec y{};
    double theta = 0.0;  // eps * arg(overlap) with arg in [0, 2 pi)
    double overlap_arg = 0.0;  // arg(overlap) in (-pi, pi], for unwrapping in time
    Vec nu_used{};
    double resid_h1eps = 0.0;
    bool lost_lock = false;
};

/**
 * Fit u ~ e^{(i/eps)(nu.x + theta)} e^{(1+N)/2} e^{-|x-y|^2/eps^2}.
 * y starts at the chi-weighted center of mass and is refined by Newton
 * ascent of the overlap with e^{-i nu.x/eps} u. Lock is lost when the
 * overlap falls below 10% of eps^N m.
 */
ModulationFit fit_modulation(const WaveField& u, const Vec& nu, const Cutoff& chi, double t = 0.0);

struct TrackingSample {
    double t = 0.0;
    Vec sigma{};       // int p_eps - m nu(t)
    double lambda = 0.0;  // m V(x(t)) - eps^{-N} int chi V |u|^2
    Vec gamma{};       // m x(t) - eps^{-N} int x chi |u|^2
    double center_gap = 0.0;  // |x(t) - y(t)|
    double tail = 0.0;  // eps^{-N} int (1 - chi) V |u|^2
    double energy_psi = 0.0;  // E of the boosted, recentred field
    double energy_gap = 0.0;  // E(psi) - E(R)
    double mass_psi = 0.0;
    double eps = 0.0;
    ModulationFit fit;
};

/// Tracking quantities at one sample; `state` is the classical point at u's time.
TrackingSample tracking_sample(const WaveField& u, const Potential& V, const ClassicalState& state, const Cutoff& chi,
                               double t);

struct TrackingSeries {
    std::vector<double> times;
    std::vector<Vec> sigma;
    std::vector<double> lambda;
    std::vector<Vec> gamma;
    std::vector<double> center_gap;
    std::vector<double> resid;
    std::vector<Vec> y;
    std::vector<double> theta;            // in [0, 2 pi eps)
    std::vector<double> theta_unwrapped;  // continuous in t
    std::vector<double> energy_gap;       // E(psi) - E(R)
    std::vector<double> mass_psi;
    std::vector<double> tail;
    std::vector<Vec> nu;

    void push(const TrackingSample& s);
    std::size_t size() const { return times.size(); }
};

struct SandwichCheck {
    double k_fit = 0.0;  // K used, 10x the t = 0 fit
    double worst_lower = 0.0;  // min of E(psi) - E(R)
    double worst_upper_margin = 0.0;  // min of upper - (E(psi) - E(R))
    bool holds = false;
};

/**
 * 0 <= E(psi) - E(R) <= |nu||sigma| + |lambda| + K eps^2 at every sample, with
 * K = 10 (|E(psi_0) - E(R)| + |lambda(0)| + |tail(0)|) / eps^2. Both sides get
 * a 1e-8 m rounding slack.
 */
SandwichCheck energy_sandwich(const TrackingSeries& s, double eps, int dim);

/**
 * Lower bound for the (C^2)* distance between a density and weight * delta_z:
 * max over a fixed dictionary of |int chi f density - weight f(z)|. Members
 * are 1, x_j/w1, x_j x_k/w2, cos(kappa.x)/w3, sin(kappa.x)/w3 with kappa of
 * length 0.5, 1, 2 along the axes (and the diagonal for N = 2); the
 * normalizers are C^2 sup-norm bounds on the ball of radius 2 rho:
 * w1 = r + 1, w2 = r^2 + 2r + 2, w3 = 1 + |kappa| + |kappa|^2.
 */
double dual_norm_proxy(const RealField& density, double weight, const Vec& z, const Cutoff& chi);

/// eps^{-N} |u|^2
RealField scaled_density(const WaveField& u);

struct RunSpec {
    int dim = 1;
    double eps = 0.1;
    double extent = 20.0;
    int points = 0;   // 0: smallest power of two meeting the resolution rule
    Potential potential = Potential::zero(1);
    Vec x0{};
    Vec v0{};
    double t_final = 1.0;
    double dt = 0.0;  // 0: default_time_step(eps)
    double sample_dt = 0.01;
    double margin = 2.0;
    double classical_dt = 1e-3;
};

int resolved_points_for(const RunSpec& spec);
double time_step_for(const RunSpec& spec);

struct RunResult {
    RunSpec spec;
    int points = 0;
    double dt = 0.0;
    Trajectory trajectory;
    double rho = 0.0;
    std::vector<StepDiagnostics> diagnostics{};
    TrackingSeries series{};
    WaveField final_field;
    double mass_drift = 0.0;    // max relative |Q(t) - Q(0)| / Q(0)
    double energy_drift = 0.0;  // max relative |E(t) - E(0)| / |E(0)|
    double sup_resid = 0.0;
    double sup_center_gap = 0.0;
    bool lost_lock = false;
    /// L^2 error against the closed-form solution when V = 0
    std::optional<double> exact_l2_error{};
    double proxy_density0 = 0.0;
    double proxy_momentum0 = 0.0;
    SandwichCheck sandwich{};
};

/// Classical trajectory, cutoff, propagation and tracking at every sample_dt.
RunResult run_tracking(const RunSpec& spec);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingRow {
    double eps = 0.0;
    int points = 0;
    double dt = 0.0;
    double sup_resid = 0.0;
    double sup_center_gap = 0.0;
    double sigma0 = 0.0;
    double lambda0 = 0.0;
    double gamma0 = 0.0;
    double proxy_density0 = 0.0;
    double proxy_momentum0 = 0.0;
    double mass_drift = 0.0;
    double energy_drift = 0.0;
    bool sandwich = false;
    std::string error;  // non-empty when the run failed
};

struct ScalingStudy {
    std::vector<ScalingRow> rows;  // in eps_list order
    double slope_resid = 0.0;
    double slope_center = 0.0;
    bool complete = false;
};

/// One run per eps on a pool of `jobs` threads (0: hardware concurrency).
/// eps_list needs at least 3 strictly decreasing values.
ScalingStudy scaling_study(const RunSpec& base, const std::vector<double>& eps_list, unsigned jobs = 0);

} // namespace lognls
