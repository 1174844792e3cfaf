#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lognls/cutoff.hpp"
#include "lognls/fft.hpp"
#include "lognls/functionals.hpp"
#include "lognls/grid.hpp"
#include "lognls/potentials.hpp"

namespace lognls {

struct SolverConfig {
    double dt = 1e-4;
    double t_final = 1.0;
    double log_floor = kLogFloor;
    int record_every = 1;
    /// Test hook: false drops the Log|u|^2 term (linear Schroedinger flow).
    bool nonlinear = true;
    /// Relative scaled-mass drift that aborts the run.
    double mass_tolerance = 1e-8;
    /// Weight for the center of mass in diagnostics; none means weight 1.
    std::optional<Cutoff> localization;
};

/// Default step min(eps * 1e-3, 1e-4).
double default_time_step(double eps);

struct StepDiagnostics {
    long step = 0;
    double t = 0.0;
    double mass = 0.0;    // Q_eps
    double energy = 0.0;  // E_eps
    Vec momentum{};       // int p_eps
    Vec center{};         // localized center of mass
};

StepDiagnostics compute_diagnostics(const WaveField& u, const Potential& V, const std::optional<Cutoff>& chi,
                                    double t, long step = 0);

class PropagationError : public std::runtime_error {
public:
    PropagationError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

/**
 * Strang splitting for i eps u_t + (eps^2/2) Lap u - V u + u Log|u|^2 = 0.
 *
 * Potential/nonlinear sub-flow over tau is the exact pointwise rotation
 *   u <- exp{-i (tau/eps)(V - Log max(|u|^2, floor))} u,
 * exact because |u| does not change under it. Kinetic sub-flow multiplies
 * Fourier modes by exp{-i eps |k|^2 tau / 2}.
 */
class SplitStepPropagator {
public:
    SplitStepPropagator(const GridSpec& grid, double eps, const Potential& V, const SolverConfig& cfg);

    void nonlinear_flow(std::span<Complex> u, double tau) const;
    void kinetic_flow(std::span<Complex> u, double tau) const;
    /// half nonlinear, full kinetic, half nonlinear
    void strang_step(std::span<Complex> u, double dt) const;

private:
    GridSpec grid_;
    Fft fft_;
    double eps_;
    SolverConfig cfg_;
    std::vector<double> potential_;
    std::vector<double> k_sq_;
    std::vector<Complex> kinetic_dt_;  // multiplier for the configured dt
};

WaveField step_strang(const WaveField& u, const Potential& V, double dt, const SolverConfig& cfg);

using DiagnosticsSink = std::function<void(const StepDiagnostics&, const WaveField&)>;

/**
 * Propagate to cfg.t_final. Emits diagnostics (and the synchronized field)
 * at t = 0, every record_every steps, and at t_final. Half nonlinear steps
 * between unrecorded steps are fused. Throws PropagationError on a
 * non-finite state or when mass drift exceeds cfg.mass_tolerance.
 */
WaveField propagate(const WaveField& u0, const Potential& V, const SolverConfig& cfg, const DiagnosticsSink& sink = {});

struct IdentityResiduals {
    std::vector<double> times;
    std::vector<double> continuity;        // || d_t(|u|^2/eps^N) + div p_eps ||_{L^2}
    std::vector<double> momentum_balance;  // | d/dt int p_eps + int grad V |u|^2 / eps^N |
    double continuity_max = 0.0;
    double momentum_balance_max = 0.0;
};

/// Centered-difference residuals of the continuity and momentum-balance identities
/// at interior samples of a uniformly sampled series.
IdentityResiduals check_identities(std::span<const WaveField> series, const Potential& V, double dt_sample,
                                   double t0 = 0.0);

} // namespace lognls
