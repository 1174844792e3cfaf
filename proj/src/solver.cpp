#include "lognls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lognls/fft.hpp"
#include "lognls/gausson.hpp"

namespace lognls {

double default_time_step(double eps) { return std::min(eps * 1e-3, 1e-4); }

StepDiagnostics compute_diagnostics(const WaveField& u, const Potential& V, const std::optional<Cutoff>& chi,
                                    double t, long step) {
    StepDiagnostics d;
    d.step = step;
    d.t = t;
    d.mass = mass_scaled(u);
    d.energy = energy_scaled(u, V);
    d.momentum = total_momentum(u);

    double weight = 0.0;
    Vec first{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Vec x = u.grid.node(i);
        const double w = (chi ? (*chi)(x) : 1.0) * std::norm(u.values[i]);
        weight += w;
        first = first + w * x;
    }
    if (weight > 0.0) d.center = (1.0 / weight) * first;
    return d;
}

SplitStepPropagator::SplitStepPropagator(const GridSpec& grid, double eps, const Potential& V,
                                         const SolverConfig& cfg)
    : grid_(grid), fft_(grid), eps_(eps), cfg_(cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (!(cfg.t_final > 0.0) || cfg.dt > cfg.t_final)
        throw std::invalid_argument("SolverConfig: need 0 < dt <= t_final");
    if (cfg.record_every < 1) throw std::invalid_argument("SolverConfig: record_every must be >= 1");
    if (V.dim() != grid.dim()) throw std::invalid_argument("propagator: potential and grid dimensions differ");

    potential_ = evaluate(V, grid).values;
    k_sq_.resize(grid.size());
    kinetic_dt_.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        k_sq_[i] = grid.k_squared(i);
        kinetic_dt_[i] = std::polar(1.0, -0.5 * eps_ * k_sq_[i] * cfg.dt);
    }
}

void SplitStepPropagator::nonlinear_flow(std::span<Complex> u, double tau) const {
    const double rate = tau / eps_;
    const double floor = std::max(cfg_.log_floor, std::numeric_limits<double>::min());
    double mass = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r2 = std::norm(u[i]);
        mass += r2;
        double phase_rate = potential_[i];
        if (cfg_.nonlinear && r2 > floor) phase_rate -= std::log(r2);
        u[i] *= std::polar(1.0, -rate * phase_rate);
    }
    if (!std::isfinite(mass)) throw PropagationError("non-finite field", -1);
}

void SplitStepPropagator::kinetic_flow(std::span<Complex> u, double tau) const {
    fft_.forward(u);
    if (tau == cfg_.dt) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] *= kinetic_dt_[i];
    } else {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] *= std::polar(1.0, -0.5 * eps_ * k_sq_[i] * tau);
    }
    fft_.inverse(u);
}

void SplitStepPropagator::strang_step(std::span<Complex> u, double dt) const {
    nonlinear_flow(u, 0.5 * dt);
    kinetic_flow(u, dt);
    nonlinear_flow(u, 0.5 * dt);
}

WaveField step_strang(const WaveField& u, const Potential& V, double dt, const SolverConfig& cfg) {
    SolverConfig local = cfg;
    local.dt = dt;
    local.t_final = std::max(cfg.t_final, dt);
    SplitStepPropagator prop(u.grid, u.eps, V, local);
    WaveField out = u;
    try {
        prop.strang_step(out.values, dt);
    } catch (const PropagationError& e) {
        throw PropagationError(e.what(), 1);
    }
    return out;
}

WaveField propagate(const WaveField& u0, const Potential& V, const SolverConfig& cfg, const DiagnosticsSink& sink) {
    SplitStepPropagator prop(u0.grid, u0.eps, V, cfg);
    const auto n_steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
    const double dt_last = cfg.t_final - static_cast<double>(n_steps - 1) * cfg.dt;

    WaveField u = u0;
    const double q0 = mass_scaled(u0);
    auto emit = [&](long n, double t) {
        if (!sink) return;
        const StepDiagnostics d = compute_diagnostics(u, V, cfg.localization, t, n);
        sink(d, u);
    };
    auto check_mass = [&](long n) {
        const double q = mass_scaled(u);
        if (!(std::abs(q - q0) <= cfg.mass_tolerance * q0)) {
            std::ostringstream msg;
            msg << "mass drift " << std::abs(q - q0) / q0 << " exceeds tolerance " << cfg.mass_tolerance
                << " at step " << n;
            throw PropagationError(msg.str(), n);
        }
    };

    emit(0, 0.0);
    double pending_half = 0.0;
    for (long n = 1; n <= n_steps; ++n) {
        const double h = (n == n_steps) ? dt_last : cfg.dt;
        const bool record = (n % cfg.record_every == 0) || n == n_steps;
        try {
            prop.nonlinear_flow(u.values, pending_half + 0.5 * h);
            prop.kinetic_flow(u.values, h);
            if (record) {
                prop.nonlinear_flow(u.values, 0.5 * h);
                pending_half = 0.0;
            } else {
                pending_half = 0.5 * h;
            }
        } catch (const PropagationError&) {
            std::ostringstream msg;
            msg << "non-finite field at step " << n;
            throw PropagationError(msg.str(), n);
        }
        if (record) {
            check_mass(n);
            const double t = (n == n_steps) ? cfg.t_final : static_cast<double>(n) * cfg.dt;
            emit(n, t);
        }
    }
    return u;
}

IdentityResiduals check_identities(std::span<const WaveField> series, const Potential& V, double dt_sample,
                                   double t0) {
    if (series.size() < 3) throw std::invalid_argument("check_identities: need at least 3 samples");
    if (!(dt_sample > 0.0)) throw std::invalid_argument("check_identities: dt_sample must be positive");

    const GridSpec& g = series.front().grid;
    const int n = g.dim();
    const double scale = std::pow(series.front().eps, -n);

    std::vector<Vec> grad_v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) grad_v[i] = V.grad(g.node(i));

    IdentityResiduals out;
    for (std::size_t s = 1; s + 1 < series.size(); ++s) {
        const auto& prev = series[s - 1];
        const auto& cur = series[s];
        const auto& next = series[s + 1];

        const auto p = momentum_density(cur);
        const RealField div = divergence(p);
        std::vector<double> r(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double drho = scale * (std::norm(next.values[i]) - std::norm(prev.values[i])) / (2.0 * dt_sample);
            r[i] = (drho + div.values[i]) * (drho + div.values[i]);
        }
        const double id1 = std::sqrt(integrate(g, r));

        const Vec dp = (1.0 / (2.0 * dt_sample)) * (total_momentum(next) - total_momentum(prev));
        Vec force{};
        for (std::size_t i = 0; i < g.size(); ++i) force = force + (scale * std::norm(cur.values[i])) * grad_v[i];
        force = g.cell_volume() * force;
        const double id2 = norm(dp + force);

        out.times.push_back(t0 + static_cast<double>(s) * dt_sample);
        out.continuity.push_back(id1);
        out.momentum_balance.push_back(id2);
        out.continuity_max = std::max(out.continuity_max, id1);
        out.momentum_balance_max = std::max(out.momentum_balance_max, id2);
    }
    return out;
}

} // namespace lognls
