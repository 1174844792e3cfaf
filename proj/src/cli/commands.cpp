#include "lognls/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lognls/cli/output.hpp"
#include "lognls/cli/selftest.hpp"
#include "lognls/functionals.hpp"
#include "lognls/gausson.hpp"
#include "lognls/linearized.hpp"
#include "lognls/modulation.hpp"
#include "lognls/variational.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace lognls::cli {

namespace {

constexpr double kMassDriftMax = 1e-12;
constexpr double kEnergyDriftMax = 1e-6;
constexpr double kExactErrorMax = 1e-4;
constexpr double kSlopeResidMin = 0.8;
constexpr double kSlopeCenterMin = 1.6;

json vec_json(const Vec& v, int dim) {
    json a = json::array();
    for (int i = 0; i < dim; ++i) a.push_back(v[i]);
    return a;
}

json eigen_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

// The 2 rho cutoff ball must fit in the box; reported against L.
void check_box(const Scenario& sc, const RunSpec& spec) {
    const GridSpec grid(spec.dim, spec.extent, resolved_points_for(spec));
    const Trajectory traj = solve(ClassicalState{.x = spec.x0, .nu = spec.v0}, spec.potential, spec.t_final,
                                  spec.classical_dt);
    try {
        (void)make_cutoff(traj, spec.margin, grid);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("L", std::string(e.what()) + " (trajectory leaves the box for L = " +
                                   format_real(sc.extent) + ")");
    }
}

void write_trajectory(const fs::path& path, const Scenario& sc, const Trajectory& traj, const Potential& V) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# " << version_string() << '\n';
    out << "# scenario " << sc.name << " hash " << sc.hash() << '\n';
    traj.write_csv(out, V);
}

json check(bool pass, double measured, double threshold, const char* relation) {
    json j;
    j["measured"] = measured;
    j["threshold"] = threshold;
    j["relation"] = relation;
    j["pass"] = pass;
    return j;
}

} // namespace

fs::path resolve_output_dir(const Scenario& sc, const std::optional<fs::path>& out_flag) {
    if (out_flag) return *out_flag;
    if (const char* env = std::getenv("LOGNLS_OUT"); env && *env) return fs::path(env);
    return fs::path(sc.outputs);
}

int cmd_simulate(const Scenario& sc, const fs::path& dir, std::ostream& log) {
    if (!sc.eps) throw ConfigError("eps", "simulate needs a single eps (eps_list is for sweep)");
    const RunSpec spec = sc.run_spec(*sc.eps);
    check_box(sc, spec);
    const RunResult r = run_tracking(spec);
    const int n = sc.dim;
    const auto axes = axis_names(n);
    fs::create_directories(dir);

    std::vector<std::string> cols{"step", "t", "mass", "energy"};
    for (const auto& a : axes) cols.push_back("momentum_" + a);
    for (const auto& a : axes) cols.push_back("center_" + a);
    CsvTable diag(cols);
    for (const auto& d : r.diagnostics) {
        std::vector<double> row{static_cast<double>(d.step), d.t, d.mass, d.energy};
        for (int a = 0; a < n; ++a) row.push_back(d.momentum[a]);
        for (int a = 0; a < n; ++a) row.push_back(d.center[a]);
        diag.add_row(row);
    }
    diag.write(dir / "diagnostics.csv", sc);

    cols = {"t"};
    for (const auto& a : axes) cols.push_back("y_" + a);
    cols.insert(cols.end(), {"theta", "theta_unwrapped", "resid_h1eps", "center_gap"});
    for (const auto& a : axes) cols.push_back("sigma_" + a);
    cols.push_back("lambda");
    for (const auto& a : axes) cols.push_back("gamma_" + a);
    cols.insert(cols.end(), {"energy_gap", "mass_psi"});
    CsvTable track(cols);
    const auto& s = r.series;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<double> row{s.times[i]};
        for (int a = 0; a < n; ++a) row.push_back(s.y[i][a]);
        row.insert(row.end(), {s.theta[i], s.theta_unwrapped[i], s.resid[i], s.center_gap[i]});
        for (int a = 0; a < n; ++a) row.push_back(s.sigma[i][a]);
        row.push_back(s.lambda[i]);
        for (int a = 0; a < n; ++a) row.push_back(s.gamma[i][a]);
        row.insert(row.end(), {s.energy_gap[i], s.mass_psi[i]});
        track.add_row(row);
    }
    track.write(dir / "tracking.csv", sc);
    write_trajectory(dir / "trajectory.csv", sc, r.trajectory, spec.potential);

    const auto report = functional_report(r.final_field, spec.potential);
    const auto& last = r.diagnostics.back();
    json j = json_header(sc);
    j["command"] = "simulate";
    j["N"] = n;
    j["eps"] = *sc.eps;
    j["L"] = sc.extent;
    j["M"] = r.points;
    j["dt"] = r.dt;
    j["T"] = sc.t_final;
    j["rho"] = r.rho;
    j["samples"] = s.size();
    j["final"] = {{"t", last.t},
                  {"mass_scaled", report.mass_scaled},
                  {"energy_scaled", report.energy_scaled},
                  {"momentum", vec_json(last.momentum, n)},
                  {"y", vec_json(s.y.back(), n)},
                  {"theta", s.theta.back()},
                  {"resid_h1eps", s.resid.back()},
                  {"center_gap", s.center_gap.back()},
                  {"x_classical", vec_json(r.trajectory.at(last.t).x, n)}};
    j["mass_drift"] = r.mass_drift;
    j["energy_drift"] = r.energy_drift;
    j["sup_resid_h1eps"] = r.sup_resid;
    j["sup_center_gap"] = r.sup_center_gap;
    j["lost_lock"] = r.lost_lock;
    j["proxy_density_t0"] = r.proxy_density0;
    j["proxy_momentum_t0"] = r.proxy_momentum0;
    j["energy_sandwich"] = {{"K", r.sandwich.k_fit},
                            {"min_gap", r.sandwich.worst_lower},
                            {"min_upper_margin", r.sandwich.worst_upper_margin},
                            {"holds", r.sandwich.holds}};

    bool ok = true;
    json checks;
    checks["mass_drift"] = check(r.mass_drift < kMassDriftMax, r.mass_drift, kMassDriftMax, "<");
    checks["energy_drift"] = check(r.energy_drift < kEnergyDriftMax, r.energy_drift, kEnergyDriftMax, "<");
    checks["energy_sandwich"] = check(r.sandwich.holds, r.sandwich.worst_upper_margin, 0.0, ">= -slack");
    checks["lock"] = check(!r.lost_lock, r.lost_lock ? 1.0 : 0.0, 0.0, "==");
    ok = !r.lost_lock && r.sandwich.holds && r.mass_drift < kMassDriftMax && r.energy_drift < kEnergyDriftMax;
    if (r.exact_l2_error) {
        j["exact_l2_error"] = *r.exact_l2_error;
        checks["exact_l2_error"] = check(*r.exact_l2_error < kExactErrorMax, *r.exact_l2_error, kExactErrorMax, "<");
        ok = ok && *r.exact_l2_error < kExactErrorMax;
    }
    j["checks"] = checks;
    j["pass"] = ok;
    write_json(dir / "summary.json", j);

    log << "simulate " << sc.name << ": eps=" << *sc.eps << " M=" << r.points << " dt=" << r.dt << " samples=" << s.size()
        << "\n  mass drift " << r.mass_drift << ", energy drift " << r.energy_drift << ", sup resid "
        << r.sup_resid << ", sup |x-y| " << r.sup_center_gap;
    if (r.exact_l2_error) log << ", exact L2 error " << *r.exact_l2_error;
    log << "\n  " << (ok ? "PASS" : "FAIL") << ", outputs in " << dir.string() << '\n';
    return ok ? exit_ok : exit_invariant;
}

int cmd_sweep(const Scenario& sc, const fs::path& dir, unsigned jobs, std::ostream& log) {
    if (sc.eps_list.size() < 3) throw ConfigError("eps_list", "sweep needs at least 3 eps values");
    for (std::size_t i = 1; i < sc.eps_list.size(); ++i) {
        if (!(sc.eps_list[i] < sc.eps_list[i - 1])) throw ConfigError("eps_list", "values must be strictly decreasing");
    }
    RunSpec base = sc.run_spec(sc.eps_list.front());
    base.points = 0;
    base.dt = 0.0;
    check_box(sc, base);
    const ScalingStudy study = scaling_study(base, sc.eps_list, jobs);
    fs::create_directories(dir);

    CsvTable table({"eps", "M", "dt", "sup_resid_h1eps", "sup_center_gap", "sigma0", "lambda0", "gamma0",
                    "proxy_density0", "proxy_momentum0", "mass_drift", "energy_drift", "sandwich", "failed"});
    json rows = json::array();
    for (const auto& r : study.rows) {
        table.add_row({r.eps, static_cast<double>(r.points), r.dt, r.sup_resid, r.sup_center_gap, r.sigma0, r.lambda0,
                       r.gamma0, r.proxy_density0, r.proxy_momentum0, r.mass_drift, r.energy_drift,
                       r.sandwich ? 1.0 : 0.0, r.error.empty() ? 0.0 : 1.0});
        json jr{{"eps", r.eps}};
        if (!r.error.empty()) jr["error"] = r.error;
        rows.push_back(jr);
    }
    table.write(dir / "sweep.csv", sc);

    const bool free = sc.potential.kind == PotentialKind::zero;
    json j = json_header(sc);
    j["command"] = "sweep";
    j["eps_list"] = sc.eps_list;
    j["slope_resid"] = study.slope_resid;
    j["slope_center"] = study.slope_center;
    j["threshold_resid"] = kSlopeResidMin;
    j["threshold_center"] = kSlopeCenterMin;
    j["runs"] = rows;

    int code = exit_ok;
    std::string verdict;
    if (!study.complete) {
        verdict = "incomplete";
        code = exit_runtime;
    } else if (free) {
        double worst = 0.0;
        for (const auto& r : study.rows) worst = std::max(worst, r.sup_resid);
        verdict = "exact-soliton: residual floor";
        j["residual_floor"] = worst;
        j["residual_floor_threshold"] = kExactErrorMax;
        if (!(worst < kExactErrorMax)) code = exit_invariant;
    } else {
        const bool pass = study.slope_resid >= kSlopeResidMin && study.slope_center >= kSlopeCenterMin;
        verdict = pass ? "pass" : "fail";
        if (!pass) code = exit_invariant;
    }
    j["verdict"] = verdict;
    j["pass"] = code == exit_ok;
    write_json(dir / "sweep.json", j);

    log << "sweep " << sc.name << ": " << study.rows.size() << " runs\n";
    for (const auto& r : study.rows) {
        log << "  eps " << r.eps;
        if (!r.error.empty()) {
            log << " FAILED: " << r.error << '\n';
            continue;
        }
        log << "  M " << r.points << "  sup resid " << r.sup_resid << "  sup |x-y| " << r.sup_center_gap << '\n';
    }
    log << "  slope_resid " << study.slope_resid << " (>= " << kSlopeResidMin << "), slope_center "
        << study.slope_center << " (>= " << kSlopeCenterMin << ")\n  verdict: " << verdict << '\n';
    return code;
}

int cmd_spectrum(const Scenario& sc, const fs::path& dir, std::ostream& log) {
    const int n = sc.dim;
    Basis basis = n == 1 ? Basis::finite_difference_1d : Basis::hermite_tensor;
    if (sc.spectrum.basis == "hermite_tensor") basis = Basis::hermite_tensor;
    if (sc.spectrum.basis == "finite_difference_1d") basis = Basis::finite_difference_1d;
    const OperatorGridSpec grid{.points = sc.spectrum.points, .extent = sc.spectrum.extent, .modes = sc.spectrum.modes};

    json j = json_header(sc);
    j["command"] = "spectrum";
    j["N"] = n;
    j["basis"] = std::string(to_string(basis));
    j["points"] = grid.points;
    j["extent"] = grid.extent;
    if (basis == Basis::hermite_tensor) j["modes"] = grid.modes;

    bool ok = true;
    for (Branch b : {Branch::plus, Branch::minus}) {
        const SymOperator op = build_L(b, n, basis, grid);
        const int k = std::min<int>(sc.spectrum.k, static_cast<int>(op.size()));
        const SpectrumReport rep = spectrum(op, k);
        int negative = 0, zero = 0;
        double worst_resid = 0.0;
        for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
            const double lam = rep.eigenvalues(i);
            if (std::abs(lam) < 1e-3) ++zero;
            else if (lam < 0.0) ++negative;
            worst_resid = std::max(worst_resid, rep.residuals(i) / (1.0 + std::abs(lam)));
        }
        const std::string key = b == Branch::plus ? "L_plus" : "L_minus";
        j[key] = {{"eigenvalues", eigen_json(rep.eigenvalues)},
                  {"residuals", eigen_json(rep.residuals)},
                  {"negative_count", negative},
                  {"zero_count", zero}};
        const int want_neg = b == Branch::plus ? 1 : 0;
        const int want_zero = b == Branch::plus ? n : 1;
        ok = ok && negative == want_neg && zero == want_zero && worst_resid < 1e-8;

        log << "L" << (b == Branch::plus ? '+' : '-') << " (N=" << n << ", " << to_string(basis) << "):";
        log << std::fixed << std::setprecision(6);
        for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) log << ' ' << rep.eigenvalues(i);
        log << std::defaultfloat << std::setprecision(6) << "\n";
    }
    const auto cm = coercivity(CoercivityTarget::Lminus, n, basis, grid);
    const auto cp = coercivity(CoercivityTarget::Lplus, n, basis, grid);
    j["coercivity"] = {{"L_minus_perp_R", {{"delta_L2", cm.delta_L2}, {"delta_sigma", cm.delta_sigma}}},
                       {"L_plus_perp_R_dR", {{"delta_L2", cp.delta_L2}, {"delta_sigma", cp.delta_sigma}}}};
    ok = ok && cm.delta_sigma > 0.0 && cp.delta_sigma > 0.0;
    j["pass"] = ok;
    fs::create_directories(dir);
    write_json(dir / "spectrum.json", j);
    log << "constrained minima: L- " << cm.delta_L2 << " (sigma " << cm.delta_sigma << "), L+ " << cp.delta_L2
        << " (sigma " << cp.delta_sigma << ")\n" << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? exit_ok : exit_invariant;
}

int cmd_minimize(const Scenario& sc, const fs::path& dir, std::ostream& log) {
    const int n = sc.dim;
    const GridSpec grid = variational_grid(n);
    const double m = analytic_constants(n).mass;
    WaveField init = profile_R(grid);
    if (sc.minimize.init == "perturbed") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            init.values[i] *= 1.0 + sc.minimize.amplitude * std::cos(grid.node(i)[0]);
    } else if (sc.minimize.init == "broad") {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Vec x = grid.node(i);
            init.values[i] = std::exp(-dot(x, x) / 8.0);
        }
    }
    const MinimizeResult r = minimize_energy(init, m, sc.minimize.tol, sc.minimize.max_iter);
    const Alignment al = align_to_gausson(r.field);
    const double err = std::abs(r.energy + m);
    const bool ok = r.converged && err <= 1e-6 * m && r.aligned_h1_dist < 1e-3;

    json j = json_header(sc);
    j["command"] = "minimize";
    j["N"] = n;
    j["init"] = sc.minimize.init;
    j["mass_target"] = m;
    j["energy"] = r.energy;
    j["energy_target"] = -m;
    j["energy_error"] = err;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["aligned_h1_dist"] = r.aligned_h1_dist;
    j["alignment"] = {{"y", vec_json(al.y, n)}, {"theta", al.theta}};
    j["pass"] = ok;
    fs::create_directories(dir);
    write_json(dir / "minimize.json", j);
    log << "minimize (" << sc.minimize.init << ", N=" << n << "): E = " << std::setprecision(12) << r.energy
        << " (target " << -m << "), " << r.iterations << " iterations, aligned H1 distance " << std::setprecision(6)
        << r.aligned_h1_dist << "\n" << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? exit_ok : exit_invariant;
}

int cmd_selftest(const Scenario& sc, const fs::path& dir, std::ostream& log) {
    const auto rows = run_selftest();
    bool ok = true;
    json arr = json::array();
    log << std::left << std::setw(14) << "suite" << std::setw(46) << "check" << std::setw(14) << "measured"
        << std::setw(12) << "threshold" << "result\n";
    for (const auto& r : rows) {
        ok = ok && r.pass;
        std::ostringstream measured, threshold;
        measured << std::setprecision(4) << r.measured;
        threshold << std::setprecision(4) << r.threshold;
        log << std::setw(14) << r.suite << std::setw(46) << r.check << std::setw(14) << measured.str() << std::setw(12)
            << threshold.str() << (r.pass ? "PASS" : "FAIL") << '\n';
        arr.push_back({{"suite", r.suite},
                       {"check", r.check},
                       {"measured", r.measured},
                       {"threshold", r.threshold},
                       {"pass", r.pass}});
    }
    json j = json_header(sc);
    j["command"] = "selftest";
    j["checks"] = arr;
    j["pass"] = ok;
    fs::create_directories(dir);
    write_json(dir / "selftest.json", j);
    log << (ok ? "all suites green" : "FAILED") << '\n';
    return ok ? exit_ok : exit_invariant;
}

int run_command(std::string_view command, const CommandOptions& opts, std::ostream& log, std::ostream& err) {
    auto report = [&](const char* kind, const std::string& field, const std::string& message, int code) {
        json e;
        e["error"] = {{"kind", kind}, {"message", message}};
        if (!field.empty()) e["error"]["field"] = field;
        e["exit_code"] = code;
        err << e.dump() << '\n';
        return code;
    };
    try {
        const Scenario sc = opts.config ? load_scenario(*opts.config, opts.overrides) : parse_scenario("", opts.overrides);
        const fs::path dir = resolve_output_dir(sc, opts.out);
        if (command == "simulate") return cmd_simulate(sc, dir, log);
        if (command == "sweep") return cmd_sweep(sc, dir, opts.jobs, log);
        if (command == "spectrum") return cmd_spectrum(sc, dir, log);
        if (command == "minimize") return cmd_minimize(sc, dir, log);
        if (command == "selftest") return cmd_selftest(sc, dir, log);
        return report("config", "command", "unknown command '" + std::string(command) + "'", exit_config);
    } catch (const ConfigError& e) {
        return report("config", e.field(), e.what(), exit_config);
    } catch (const PropagationError& e) {
        return report("runtime", "", e.what(), exit_runtime);
    } catch (const std::exception& e) {
        return report("runtime", "", e.what(), exit_runtime);
    }
}

} // namespace lognls::cli
