#include "lognls/modulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "lognls/functionals.hpp"
#include "lognls/gausson.hpp"

namespace lognls {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double a) {
    double t = std::fmod(a, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t >= kTwoPi ? 0.0 : t;
}

} // namespace

RealField scaled_density(const WaveField& u) {
    RealField out = modulus_sq(u);
    const double s = std::pow(u.eps, -u.grid.dim());
    for (auto& v : out.values) v *= s;
    return out;
}

ModulationFit fit_modulation(const WaveField& u, const Vec& nu, const Cutoff& chi, double t) {
    const GridSpec& g = u.grid;
    const int n = g.dim();
    const double eps = u.eps;

    double weight = 0.0;
    Vec first{};
    WaveField f(g, eps);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec x = g.node(i);
        const double w = chi(x) * std::norm(u.values[i]);
        weight += w;
        first = first + w * x;
        f.values[i] = std::polar(1.0, -dot(nu, x) / eps) * u.values[i];
    }
    const Vec y0 = weight > 0.0 ? (1.0 / weight) * first : Vec{};
    const OverlapPeak peak = maximize_overlap(f, eps, y0);

    ModulationFit fit;
    fit.t = t;
    fit.y = peak.y;
    fit.nu_used = nu;
    fit.overlap_arg = std::arg(peak.overlap);
    // reduce arg first so e^{i theta/eps} still equals the overlap phase
    fit.theta = eps * wrap_2pi(fit.overlap_arg);
    fit.lost_lock = std::abs(peak.overlap) < 0.1 * std::pow(eps, n) * analytic_constants(n).mass;

    const WaveField model = modulated_gausson(g, eps, fit.y, nu, fit.theta);
    WaveField w = u;
    for (std::size_t i = 0; i < g.size(); ++i) w.values[i] -= model.values[i];
    fit.resid_h1eps = std::sqrt(h1_eps_norm_sq(w));
    return fit;
}

TrackingSample tracking_sample(const WaveField& u, const Potential& V, const ClassicalState& state, const Cutoff& chi,
                               double t) {
    const GridSpec& g = u.grid;
    const int n = g.dim();
    const double eps = u.eps;
    const double scale = std::pow(eps, -n);
    const double m = analytic_constants(n).mass;
    const double dv = g.cell_volume();

    TrackingSample s;
    s.t = t;
    s.fit = fit_modulation(u, state.nu, chi, t);
    s.center_gap = norm(state.x - s.fit.y);

    double chi_v = 0.0;
    double tail = 0.0;
    double mass = 0.0;
    double logterm = 0.0;
    Vec first{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec x = g.node(i);
        const double r2 = std::norm(u.values[i]);
        const double c = chi(x);
        const double v = V(x);
        chi_v += c * v * r2;
        tail += (1.0 - c) * v * r2;
        first = first + (c * r2) * x;
        mass += r2;
        if (r2 > kLogFloor) logterm += r2 * std::log(r2);
    }
    s.lambda = m * V(state.x) - scale * dv * chi_v;
    s.gamma = m * state.x - (scale * dv) * first;
    s.tail = scale * dv * tail;

    const auto grad = gradient(u);
    double kinetic = 0.0;
    Vec momentum{};
    for (int a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            kinetic += std::norm(grad[a].values[i]);
            momentum[a] += (std::conj(u.values[i]) * grad[a].values[i]).imag();
        }
    }
    kinetic *= dv;
    momentum = (std::pow(eps, 1 - n) * dv) * momentum;
    s.sigma = momentum - m * state.nu;

    // psi(z) = e^{-i nu.(x(t) + eps z)/eps} u(x(t) + eps z), unscaled frame
    const double q = scale * dv * mass;
    s.mass_psi = q;
    s.energy_psi = 0.5 * std::pow(eps, 2 - n) * kinetic + 0.5 * dot(state.nu, state.nu) * q -
                   scale * dv * logterm - dot(state.nu, momentum);
    s.energy_gap = s.energy_psi - analytic_constants(n).energy;
    s.eps = eps;
    return s;
}

void TrackingSeries::push(const TrackingSample& s) {
    double unwrapped = s.eps * s.fit.overlap_arg;
    if (!theta_unwrapped.empty()) {
        // shift by whole turns of the overlap argument to stay continuous
        const double step = s.eps * kTwoPi;
        const double prev = theta_unwrapped.back();
        unwrapped += step * std::round((prev - unwrapped) / step);
    }
    times.push_back(s.t);
    sigma.push_back(s.sigma);
    lambda.push_back(s.lambda);
    gamma.push_back(s.gamma);
    center_gap.push_back(s.center_gap);
    resid.push_back(s.fit.resid_h1eps);
    y.push_back(s.fit.y);
    theta.push_back(s.fit.theta);
    theta_unwrapped.push_back(unwrapped);
    energy_gap.push_back(s.energy_gap);
    mass_psi.push_back(s.mass_psi);
    tail.push_back(s.tail);
    nu.push_back(s.fit.nu_used);
}

SandwichCheck energy_sandwich(const TrackingSeries& s, double eps, int dim) {
    if (s.size() == 0) throw std::invalid_argument("energy_sandwich: empty series");
    const double m = analytic_constants(dim).mass;
    const double slack = 1e-8 * m;
    const double eps2 = eps * eps;

    SandwichCheck out;
    out.k_fit = 10.0 * (std::abs(s.energy_gap[0]) + std::abs(s.lambda[0]) + std::abs(s.tail[0])) / eps2;
    out.worst_lower = std::numeric_limits<double>::infinity();
    out.worst_upper_margin = std::numeric_limits<double>::infinity();
    out.holds = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double gap = s.energy_gap[i];
        const double upper = norm(s.nu[i]) * norm(s.sigma[i]) + std::abs(s.lambda[i]) + out.k_fit * eps2;
        out.worst_lower = std::min(out.worst_lower, gap);
        out.worst_upper_margin = std::min(out.worst_upper_margin, upper - gap);
        if (gap < -slack || gap > upper + slack) out.holds = false;
    }
    return out;
}

double dual_norm_proxy(const RealField& density, double weight, const Vec& z, const Cutoff& chi) {
    const GridSpec& g = density.grid;
    const int n = g.dim();
    const double r = 2.0 * chi.rho();
    const double w1 = r + 1.0;
    const double w2 = r * r + 2.0 * r + 2.0;

    std::vector<std::function<double(const Vec&)>> dict;
    dict.push_back([](const Vec&) { return 1.0; });
    for (int a = 0; a < n; ++a) dict.push_back([a, w1](const Vec& x) { return x[a] / w1; });
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) dict.push_back([a, b, w2](const Vec& x) { return x[a] * x[b] / w2; });
    }
    std::vector<Vec> dirs{{1.0, 0.0}};
    if (n == 2) {
        dirs.push_back({0.0, 1.0});
        dirs.push_back({std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0});
    }
    for (const Vec& d : dirs) {
        for (double len : {0.5, 1.0, 2.0}) {
            const Vec k = len * d;
            const double w3 = 1.0 + len + len * len;
            dict.push_back([k, w3](const Vec& x) { return std::cos(dot(k, x)) / w3; });
            dict.push_back([k, w3](const Vec& x) { return std::sin(dot(k, x)) / w3; });
        }
    }

    std::vector<double> cx(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) cx[i] = chi(g.node(i)) * density.values[i];
    double best = 0.0;
    for (const auto& f : dict) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (cx[i] != 0.0) s += f(g.node(i)) * cx[i];
        }
        best = std::max(best, std::abs(s * g.cell_volume() - weight * f(z)));
    }
    return best;
}

int resolved_points_for(const RunSpec& spec) {
    return spec.points > 0 ? spec.points : resolved_points(spec.extent, spec.eps);
}

double time_step_for(const RunSpec& spec) { return spec.dt > 0.0 ? spec.dt : default_time_step(spec.eps); }

RunResult run_tracking(const RunSpec& spec) {
    if (spec.potential.dim() != spec.dim) throw std::invalid_argument("run: potential dimension differs from N");
    if (!(spec.sample_dt > 0.0)) throw std::invalid_argument("run: sample_dt must be positive");
    const int points = resolved_points_for(spec);
    const double dt = time_step_for(spec);
    const GridSpec grid(spec.dim, spec.extent, points);
    const int n = spec.dim;
    const double m = analytic_constants(n).mass;

    const ClassicalState s0{.x = spec.x0, .nu = spec.v0, .t = 0.0};
    Trajectory traj = solve(s0, spec.potential, spec.t_final, spec.classical_dt);
    const Cutoff chi = make_cutoff(traj, spec.margin, grid);

    RunResult res{.spec = spec, .points = points, .dt = dt, .trajectory = traj, .rho = chi.rho(),
                  .final_field = WaveField(grid, spec.eps)};

    const GaussonParams gp{.eps = spec.eps, .x0 = spec.x0, .v0 = spec.v0};
    const WaveField u0 = initial_datum(gp, grid);
    {
        const RealField rho0 = scaled_density(u0);
        res.proxy_density0 = dual_norm_proxy(rho0, m, spec.x0, chi);
        const auto p0 = momentum_density(u0);
        for (int a = 0; a < n; ++a)
            res.proxy_momentum0 = std::max(res.proxy_momentum0, dual_norm_proxy(p0[a], m * spec.v0[a], spec.x0, chi));
    }

    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_final = spec.t_final;
    cfg.record_every = std::max(1, static_cast<int>(std::lround(spec.sample_dt / dt)));
    cfg.localization = chi;

    auto sink = [&](const StepDiagnostics& d, const WaveField& u) {
        res.diagnostics.push_back(d);
        const TrackingSample ts = tracking_sample(u, spec.potential, traj.at(d.t), chi, d.t);
        res.series.push(ts);
        res.lost_lock = res.lost_lock || ts.fit.lost_lock;
    };
    res.final_field = propagate(u0, spec.potential, cfg, sink);

    const auto& d0 = res.diagnostics.front();
    for (const auto& d : res.diagnostics) {
        res.mass_drift = std::max(res.mass_drift, std::abs(d.mass - d0.mass) / d0.mass);
        res.energy_drift = std::max(res.energy_drift, std::abs(d.energy - d0.energy) / std::abs(d0.energy));
    }
    for (std::size_t i = 0; i < res.series.size(); ++i) {
        res.sup_resid = std::max(res.sup_resid, res.series.resid[i]);
        res.sup_center_gap = std::max(res.sup_center_gap, res.series.center_gap[i]);
    }
    res.sandwich = energy_sandwich(res.series, spec.eps, n);

    if (spec.potential.kind() == PotentialKind::zero) {
        WaveField exact = exact_free_solution(gp, grid, spec.t_final);
        const Complex shift_phase = std::polar(1.0, -spec.potential.shift() * spec.t_final / spec.eps);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            err += std::norm(res.final_field.values[i] - shift_phase * exact.values[i]);
        res.exact_l2_error = std::sqrt(err * grid.cell_volume());
    }
    return res;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 paired values");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double k = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ScalingStudy scaling_study(const RunSpec& base, const std::vector<double>& eps_list, unsigned jobs) {
    if (eps_list.size() < 3) throw std::invalid_argument("scaling_study: eps_list needs at least 3 values");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw std::invalid_argument("scaling_study: eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("scaling_study: eps_list must be strictly decreasing");
    }
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(eps_list.size()));

    ScalingStudy study;
    study.rows.resize(eps_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < eps_list.size(); i = next++) {
            ScalingRow& row = study.rows[i];
            row.eps = eps_list[i];
            RunSpec spec = base;
            spec.eps = eps_list[i];
            spec.points = 0;
            spec.dt = 0.0;
            try {
                const RunResult r = run_tracking(spec);
                row.points = r.points;
                row.dt = r.dt;
                row.sup_resid = r.sup_resid;
                row.sup_center_gap = r.sup_center_gap;
                row.sigma0 = norm(r.series.sigma.front());
                row.lambda0 = std::abs(r.series.lambda.front());
                row.gamma0 = norm(r.series.gamma.front());
                row.proxy_density0 = r.proxy_density0;
                row.proxy_momentum0 = r.proxy_momentum0;
                row.mass_drift = r.mass_drift;
                row.energy_drift = r.energy_drift;
                row.sandwich = r.sandwich.holds;
            } catch (const std::exception& e) {
                row.error = e.what();
                if (row.error.empty()) row.error = "unknown failure";
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    study.complete = std::all_of(study.rows.begin(), study.rows.end(), [](const ScalingRow& r) { return r.error.empty(); });
    if (study.complete) {
        std::vector<double> e, res, gap;
        for (const auto& r : study.rows) {
            e.push_back(r.eps);
            res.push_back(r.sup_resid);
            gap.push_back(r.sup_center_gap);
        }
        study.slope_resid = loglog_slope(e, res);
        study.slope_center = loglog_slope(e, gap);
    } else {
        study.slope_resid = std::numeric_limits<double>::quiet_NaN();
        study.slope_center = std::numeric_limits<double>::quiet_NaN();
    }
    return study;
}

} // namespace lognls
