#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lognls/functionals.hpp"
#include "lognls/gausson.hpp"
#include "oracles.hpp"

using namespace lognls;

namespace {

// i eps u_t + (eps^2/2) Lap u + u Log|u|^2 with u_t supplied analytically
double free_residual(const GaussonParams& p, const GridSpec& g, double t) {
    const WaveField u = exact_free_solution(p, g, t);
    const WaveField ut = exact_free_solution_dt(p, g, t);
    const WaveField lap = laplacian(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double rho = std::norm(u.values[i]);
        const Complex nl = rho > 1e-250 ? u.values[i] * std::log(rho) : Complex{};
        const Complex r = Complex(0.0, p.eps) * ut.values[i] + 0.5 * p.eps * p.eps * lap.values[i] + nl;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double max_diff(const WaveField& a, const WaveField& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

} // namespace

TEST_CASE("profile values") {
    const GridSpec g1(1, 16.0, 16);  // nodes at integers
    const WaveField r1 = profile_R(g1);
    CHECK(r1.values[8].real() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(r1.values[9].real() == doctest::Approx(1.0).epsilon(1e-15));
    const GridSpec g2(2, 16.0, 16);
    CHECK(profile_R(g2).values[8 * 16 + 8].real() == doctest::Approx(std::exp(1.5)).epsilon(1e-15));
}

TEST_CASE("analytic constants against independent quadrature") {
    for (int n : {1, 2}) {
        const auto c = analytic_constants(n);
        const double m = oracle::gausson_mass(n);
        CHECK(std::abs(c.mass - m) / m < 1e-12);
        CHECK(c.energy == doctest::Approx(-m).epsilon(1e-12));
        CHECK(c.action == doctest::Approx(m / 2.0).epsilon(1e-12));
        CHECK(c.nehari == 0.0);
        CHECK(c.grad_sq == doctest::Approx(m * n).epsilon(1e-12));
        CHECK(c.log_moment == doctest::Approx(m * (1.0 + n / 2.0)).epsilon(1e-12));
    }
    CHECK(analytic_constants(1).mass == doctest::Approx(9.26080).epsilon(1e-5));
    CHECK(analytic_constants(2).mass == doctest::Approx(31.55030).epsilon(1e-6));

    // second moment of R^2 via 1-D quadrature
    const double x2 = std::exp(2.0) *
                      oracle::adaptive_simpson([](double x) { return x * x * std::exp(-2.0 * x * x); }, -12.0, 12.0);
    CHECK(std::abs(analytic_constants(1).x2_moment - x2) / x2 < 1e-10);
}

TEST_CASE("profile equation residual for omega in {0.5, 1, 2}") {
    for (int n : {1, 2}) {
        const GridSpec g = n == 1 ? GridSpec(1, 20.0, 512) : GridSpec(2, 16.0, 128);
        for (double omega : {0.5, 1.0, 2.0}) {
            const WaveField phi = profile_R(g, omega);
            const WaveField lap = laplacian(phi);
            double sq = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double l = log_profile_sq(g.node(i), n) + (omega - 1.0);
                sq += std::norm(-0.5 * lap.values[i] + omega * phi.values[i] - phi.values[i] * l);
            }
            CHECK(std::sqrt(sq * g.cell_volume()) < 1e-8);
        }
    }
}

TEST_CASE("initial datum") {
    const GridSpec g(1, 20.0, 8192);
    const double m = oracle::gausson_mass(1);
    const WaveField still = initial_datum(GaussonParams{.eps = 0.1}, g);
    CHECK(std::abs(oracle::mass(still) / 0.1 - m) / m < 1e-10);
    for (const auto& z : still.values) {
        CHECK(z.imag() == 0.0);
        CHECK(z.real() >= 0.0);
    }

    const WaveField moving = initial_datum(GaussonParams{.eps = 0.1, .v0 = {1.0, 0.0}}, g);
    CHECK(std::abs(total_momentum(moving)[0] - m) / m < 1e-8);

    for (double eps : {0.4, 0.2, 0.1}) {
        const WaveField u = initial_datum(GaussonParams{.eps = eps, .x0 = {0.3, 0.0}}, g);
        CHECK(std::abs(mass_scaled(u) - m) / m < 1e-10);
    }
}

TEST_CASE("resolution warning") {
    std::string seen;
    set_warning_handler([&seen](std::string_view msg) { seen = msg; });
    (void)initial_datum(GaussonParams{.eps = 0.1}, GridSpec(1, 20.0, 512));
    set_warning_handler({});
    CHECK_FALSE(seen.empty());
}

TEST_CASE("exact free solution") {
    const GridSpec g(1, 20.0, 8192);
    const GaussonParams p{.eps = 0.1, .x0 = {-1.0, 0.0}, .v0 = {1.0, 0.0}};
    CHECK(max_diff(exact_free_solution(p, g, 0.0), initial_datum(p, g)) < 1e-14);

    // standing Gausson rotates rigidly
    const GaussonParams still{.eps = 0.1};
    const WaveField u0 = initial_datum(still, g);
    const WaveField ut = exact_free_solution(still, g, 0.37);
    double d = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(std::abs(ut.values[i]) - std::abs(u0.values[i])));
    CHECK(d < 1e-14);

    CHECK(free_residual(GaussonParams{.eps = 0.1, .v0 = {1.0, 0.0}}, g, 0.5) < 1e-6);
    CHECK(free_residual(GaussonParams{.eps = 0.2, .x0 = {0.5, 0.0}, .v0 = {-0.7, 0.0}}, g, 0.8) < 1e-6);

    const GridSpec g2(2, 8.0, 256);
    CHECK(free_residual(GaussonParams{.eps = 0.5, .v0 = {0.5, 0.25}}, g2, 0.3) < 1e-6);

    const Potential V = Potential::zero(1);
    const WaveField a = exact_free_solution(p, g, 0.0);
    const double q0 = mass_scaled(a);
    const double e0 = energy_scaled(a, V);
    for (double t : {0.5, 1.0}) {
        const WaveField b = exact_free_solution(p, g, t);
        CHECK(std::abs(mass_scaled(b) - q0) / q0 < 1e-10);
        CHECK(std::abs(energy_scaled(b, V) - e0) / std::abs(e0) < 1e-10);
    }
}

TEST_CASE("momentum density") {
    const GridSpec g(1, 20.0, 1024);
    for (const auto& field : momentum_density(profile_R(g)))
        for (double v : field.values) CHECK(std::abs(v) < 1e-13);

    // e^{ikx} g(x): int p = eps^{1-N} k ||g||^2
    const double k = 2.0 * std::numbers::pi / 20.0 * 5.0;
    for (double eps : {1.0, 0.5}) {
        WaveField u(g, eps);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.node(i)[0];
            u.values[i] = std::polar(std::exp(-x * x / 2.0), k * x);
        }
        const double gsq = std::sqrt(std::numbers::pi);
        CHECK(total_momentum(u)[0] == doctest::Approx(k * gsq).epsilon(1e-12));
    }
}

TEST_CASE("overlap peak recovers a shifted template") {
    const GridSpec g(2, 16.0, 128);
    WaveField f(g, 1.0);
    const Vec y{1.3, -0.4};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec x = g.node(i);
        f.values[i] = std::polar(std::exp(1.5 - 0.8 * dot(x - y, x - y)), 0.7);
    }
    const OverlapPeak pk = maximize_overlap(f, 1.0, Vec{0.5, 0.0});
    CHECK(pk.converged);
    CHECK(std::abs(pk.y[0] - y[0]) < 1e-9);
    CHECK(std::abs(pk.y[1] - y[1]) < 1e-9);
    CHECK(std::arg(pk.overlap) == doctest::Approx(0.7).epsilon(1e-12));
}
