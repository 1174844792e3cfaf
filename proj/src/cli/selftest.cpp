#include "lognls/cli/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lognls/classical.hpp"
#include "lognls/cutoff.hpp"
#include "lognls/functionals.hpp"
#include "lognls/gausson.hpp"
#include "lognls/linearized.hpp"
#include "lognls/modulation.hpp"
#include "lognls/variational.hpp"

namespace lognls::cli {

namespace {

class Table {
public:
    void below(const std::string& suite, const std::string& check, double measured, double threshold) {
        rows_.push_back({suite, check, measured, threshold, measured < threshold});
    }
    void above(const std::string& suite, const std::string& check, double measured, double threshold) {
        rows_.push_back({suite, check, measured, threshold, measured >= threshold});
    }
    std::vector<SelftestRow> take() { return std::move(rows_); }

private:
    std::vector<SelftestRow> rows_;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void lattice_suite(Table& t) {
    const GridSpec g(1, 20.0, 256);
    WaveField u(g, 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.node(i)[0];
        u.values[i] = std::exp(-x * x);
    }
    const WaveField du = partial(u, 0);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.node(i)[0];
        err = std::max(err, std::abs(du.values[i] - Complex(-2.0 * x * std::exp(-x * x))));
    }
    t.below("lattice", "spectral derivative of e^{-x^2}", err, 1e-10);
    t.below("lattice", "quadrature of e^{-2x^2} (rel)", rel(l2_norm_sq(u), std::sqrt(std::numbers::pi / 2.0)), 1e-12);
}

void potentials_suite(Table& t) {
    double worst = 0.0;
    for (int n : {1, 2}) {
        worst = std::max(worst, check_gradient(Potential::gaussian_bump(n, 1.0, Vec{0.5, -0.3}, 0.8), 50));
        worst = std::max(worst, check_gradient(Potential::cosine(n, 0.5, Vec{1.0, 2.0}), 50));
    }
    t.below("potentials", "analytic vs finite-difference gradient", worst, 1e-6);
}

void gausson_suite(Table& t) {
    for (int n : {1, 2}) {
        const GridSpec g = n == 1 ? GridSpec(1, 20.0, 256) : GridSpec(2, 16.0, 128);
        const WaveField r = profile_R(g);
        const auto c = analytic_constants(n);
        const std::string tag = " (N=" + std::to_string(n) + ")";
        t.below("gausson", "mass vs e^{N+1}(pi/2)^{N/2}" + tag, rel(l2_norm_sq(r), c.mass), 1e-9);
        t.below("gausson", "E(R) = -m" + tag, rel(energy_unscaled(r), c.energy), 1e-9);
        t.below("gausson", "S(R) = m/2" + tag, rel(action_S(r), c.action), 1e-9);
        t.below("gausson", "|I(R)| / m" + tag, std::abs(nehari_I(r)) / c.mass, 1e-9);
        t.below("gausson", "||grad R||^2 = mN" + tag, rel(kinetic_integral(r), c.grad_sq), 1e-9);

        const WaveField lap = laplacian(r);
        double res = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double l = log_profile_sq(g.node(i), n);
            res = std::max(res, std::abs(-0.5 * lap.values[i] + r.values[i] - r.values[i] * l));
        }
        t.below("gausson", "profile equation residual" + tag, res, 1e-8);
    }
}

void functionals_suite(Table& t) {
    const GridSpec g(1, 20.0, 256);
    double gap_min = 1e300;
    double nehari_err = 0.0;
    for (int s = 0; s < 20; ++s) {
        WaveField u = random_perturbation(g, 100 + s);
        for (auto& z : u.values) z *= 1.0 + 0.5 * s;
        for (double a : {0.5, 1.0, 2.0}) gap_min = std::min(gap_min, log_sobolev_gap(u, a));

        const double lam = nehari_scale(u);
        WaveField v = u;
        for (auto& z : v.values) z *= lam;
        nehari_err = std::max(nehari_err, std::abs(nehari_I(v)) / (1.0 + std::abs(nehari_I(u))));
    }
    t.above("functionals", "min log-Sobolev gap (20 fields x 3 alpha)", gap_min, -1e-10);
    t.below("functionals", "|log-Sobolev gap| at R, alpha^2 = pi/2",
            std::abs(log_sobolev_gap(profile_R(g), std::sqrt(std::numbers::pi / 2.0))), 1e-8);
    t.below("functionals", "|I(lambda* u)| / (1 + |I(u)|)", nehari_err, 1e-8);
}

void classical_suite(Table& t) {
    double worst = 0.0;
    for (const Potential& v : {Potential::zero(1), Potential::gaussian_bump(1, 1.0, Vec{2.0, 0.0}, 1.0),
                               Potential::cosine(1, 0.5, Vec{1.0, 0.0}),
                               Potential::cosine(2, 0.5, Vec{1.0, 1.0})}) {
        const Vec nu = v.dim() == 1 ? Vec{1.0, 0.0} : Vec{1.0, 0.5};
        const Trajectory tr = solve(ClassicalState{.x = {0.0, 0.0}, .nu = nu}, v, 10.0);
        worst = std::max(worst, tr.hamiltonian_drift(v));
    }
    t.below("classical_ode", "Hamiltonian drift over T=10", worst, 1e-9);
}

void solver_suite(Table& t) {
    RunSpec spec;
    spec.eps = 0.2;
    spec.v0 = {1.0, 0.0};
    spec.t_final = 0.2;
    spec.sample_dt = 0.05;
    const RunResult r = run_tracking(spec);
    t.below("nls_solver", "free Gausson L2 error at T=0.2", r.exact_l2_error.value_or(1.0), 1e-6);
    t.below("nls_solver", "scaled mass drift", r.mass_drift, 1e-12);
    t.below("nls_solver", "scaled energy drift", r.energy_drift, 1e-6);
    t.below("modulation", "propagated fit residual (H1_eps)", r.sup_resid, 1e-5);
    const GridSpec g(1, 20.0, 1024);
    constexpr double eps = 0.2;
    const WaveField exact = exact_free_solution(GaussonParams{.eps = eps, .x0 = {}, .v0 = {1.0, 0.0}}, g, 0.5);
    const ModulationFit fit = fit_modulation(exact, Vec{1.0, 0.0}, Cutoff(3.0), 0.5);
    t.below("modulation", "exact free Gausson fit residual (H1_eps)", fit.resid_h1eps, 1e-6);
    t.below("modulation", "free Gausson center gap", r.sup_center_gap, 1e-6);
    t.above("modulation", "energy sandwich holds", r.sandwich.holds ? 1.0 : 0.0, 1.0);
}

void linearized_suite(Table& t) {
    const auto plus = spectrum(build_L(Branch::plus, 1, Basis::finite_difference_1d), 4);
    const double want[] = {-2.0, 0.0, 2.0, 4.0};
    double err = 0.0;
    for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(plus.eigenvalues(i) - want[i]));
    t.below("linearized", "L+ lowest four vs {-2,0,2,4}", err, 1e-4);
    const auto minus = spectrum(build_L(Branch::minus, 1, Basis::finite_difference_1d), 2);
    t.below("linearized", "L- lowest two vs {0,2}",
            std::max(std::abs(minus.eigenvalues(0)), std::abs(minus.eigenvalues(1) - 2.0)), 1e-4);
    const auto plus2 = spectrum(build_L(Branch::plus, 2, Basis::hermite_tensor), 4);
    t.below("linearized", "L+ (N=2) zero modes vs 0", std::max(std::abs(plus2.eigenvalues(1)), std::abs(plus2.eigenvalues(2))),
            1e-3);
    const auto c = coercivity(CoercivityTarget::full, 1, Basis::finite_difference_1d);
    t.below("linearized", "constrained minimum vs 2", std::abs(c.delta_L2 - 2.0), 1e-3);
    t.above("linearized", "Sigma-coercivity constant > 0", c.delta_sigma, 1e-12);
}

void variational_suite(Table& t) {
    const GridSpec g = variational_grid(1);
    const double m = analytic_constants(1).mass;
    WaveField init = profile_R(g);
    for (std::size_t i = 0; i < g.size(); ++i) init.values[i] *= 1.0 + 0.1 * std::cos(g.node(i)[0]);
    const MinimizeResult r = minimize_energy(init, m);
    t.below("variational", "|E(min) + m| / m", std::abs(r.energy + m) / m, 1e-6);
    t.below("variational", "aligned H1 distance of minimizer", r.aligned_h1_dist, 1e-3);
    t.above("variational", "quadratic probe min ratio (20 samples)", quadratic_lower_bound_probe(1, 20, 0.01).min_ratio,
            1e-12);
}

} // namespace

std::vector<SelftestRow> run_selftest() {
    Table t;
    lattice_suite(t);
    potentials_suite(t);
    gausson_suite(t);
    functionals_suite(t);
    classical_suite(t);
    solver_suite(t);
    linearized_suite(t);
    variational_suite(t);
    return t.take();
}

} // namespace lognls::cli
