#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lognls/functionals.hpp"
#include "lognls/gausson.hpp"
#include "lognls/variational.hpp"
#include "oracles.hpp"

using namespace lognls;

namespace {

const GridSpec kGrid = variational_grid(1);
const double kMass = analytic_constants(1).mass;

WaveField shifted_gausson(double y, double theta) {
    WaveField u(kGrid, 1.0);
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
        const double x = kGrid.node(i)[0] - y;
        u.values[i] = std::polar(std::exp(1.0 - x * x), theta);
    }
    return u;
}

void remove_component(WaveField& u, const WaveField& d) {
    const double c = real_inner(u, d) / real_inner(d, d);
    for (std::size_t i = 0; i < u.size(); ++i) u.values[i] -= c * d.values[i];
}

} // namespace

TEST_CASE("minimizer from R") {
    const MinimizeResult r = minimize_energy(profile_R(kGrid), kMass);
    CHECK(r.converged);
    CHECK(r.iterations <= 2);
    CHECK(std::abs(r.energy + kMass) < 1e-8 * kMass);
}

TEST_CASE("minimizer from perturbed and broad starts") {
    WaveField bumpy = profile_R(kGrid);
    for (std::size_t i = 0; i < kGrid.size(); ++i) bumpy.values[i] *= 1.0 + 0.1 * std::cos(kGrid.node(i)[0]);
    WaveField broad(kGrid, 1.0);
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
        const double x = kGrid.node(i)[0];
        broad.values[i] = std::exp(-x * x / 8.0);
    }
    for (const WaveField& init : {bumpy, rescale_to_mass(broad, kMass)}) {
        double last = 1e300, s_min = 1e300;
        bool monotone = true;
        const MinimizeResult r = minimize_energy(init, kMass, 1e-13, 200000, [&](int, const WaveField& u, double e) {
            monotone = monotone && e <= last;
            last = e;
            WaveField v = u;
            const double lam = nehari_scale(u);
            for (auto& z : v.values) z *= lam;
            s_min = std::min(s_min, action_S(v));
        });
        CHECK(monotone);
        CHECK(std::abs(r.energy + kMass) < 1e-6 * kMass);
        CHECK(r.aligned_h1_dist < 1e-3);
        CHECK(std::abs(oracle::mass(r.field) - kMass) / kMass < 1e-12);
        CHECK(s_min >= kMass / 2.0 - 1e-8);
    }
}

TEST_CASE("minimizer from a 2-D start") {
    const GridSpec g = variational_grid(2);
    const double m = analytic_constants(2).mass;
    WaveField init = profile_R(g);
    for (std::size_t i = 0; i < g.size(); ++i) init.values[i] *= 1.0 + 0.1 * std::cos(g.node(i)[0]);
    const MinimizeResult r = minimize_energy(init, m);
    CHECK(std::abs(r.energy + m) < 1e-6 * m);
    CHECK(r.aligned_h1_dist < 1e-3);
}

TEST_CASE("the Gausson has the least energy at its mass") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const WaveField u = rescale_to_mass(oracle::random_field(kGrid, 70 + s), kMass);
        CHECK(energy_unscaled(u) >= -kMass - 1e-8 * kMass);
    }
}

TEST_CASE("alignment") {
    const Alignment a0 = align_to_gausson(profile_R(kGrid));
    CHECK(std::abs(a0.y[0]) < 1e-10);
    CHECK(std::min(a0.theta, 2.0 * std::numbers::pi - a0.theta) < 1e-10);
    CHECK(a0.dist_h1 < 1e-10);

    const Alignment a = align_to_gausson(shifted_gausson(1.5, 0.3));
    CHECK(std::abs(a.y[0] - 1.5) < 1e-6);
    CHECK(std::abs(a.theta - 0.3) < 1e-6);
    CHECK(a.dist_h1 < 1e-6);
    CHECK_FALSE(a.far_from_orbit);

    // first-order stability: a perturbation transverse to the orbit survives alignment
    const WaveField r = profile_R(kGrid);
    WaveField ir = r;
    for (auto& z : ir.values) z *= Complex(0.0, 1.0);
    const WaveField dr = partial(r, 0);
    for (std::uint64_t s = 0; s < 5; ++s) {
        WaveField p = oracle::random_field(kGrid, 40 + s);
        remove_component(p, ir);
        remove_component(p, dr);
        WaveField u = r;
        for (std::size_t i = 0; i < u.size(); ++i) u.values[i] += 0.01 * p.values[i];
        WaveField small = p;
        for (auto& z : small.values) z *= 0.01;
        const double expect = std::sqrt(h1_eps_norm_sq(small));
        const Alignment al = align_to_gausson(u);
        CHECK(al.dist_h1 == doctest::Approx(expect).epsilon(0.2));
        CHECK(al.fw_residual < 1e-6 * kMass);
    }

    WaveField far = shifted_gausson(8.0, 0.0);
    for (auto& z : far.values) z *= 0.01;
    CHECK(align_to_gausson(far).far_from_orbit);
}

TEST_CASE("quadratic lower bound probe") {
    CHECK_THROWS(quadratic_lower_bound_probe(1, 10, 0.0));
    CHECK_THROWS(quadratic_lower_bound_probe(1, 10, 0.2));
    const QuadraticProbe q = quadratic_lower_bound_probe(1, 100, 0.01);
    CHECK(q.used_samples > 90);
    CHECK(q.min_ratio > 0.0);
    CHECK(q.min_energy_gap >= -1e-8 * kMass);
}

TEST_CASE("random perturbation") {
    const WaveField p = random_perturbation(kGrid, 3);
    CHECK(l2_norm_sq(p) == doctest::Approx(1.0).epsilon(1e-12));
    const WaveField q = random_perturbation(kGrid, 3);
    CHECK(p.values == q.values);
    CHECK(random_perturbation(kGrid, 4).values != p.values);
}
