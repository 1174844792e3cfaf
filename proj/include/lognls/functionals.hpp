#pragma once

#include "lognls/grid.hpp"
#include "lognls/potentials.hpp"

namespace lognls {

/// Squared-modulus floor below which |u|^2 Log|u|^2 is taken as exactly 0.
inline constexpr double kLogFloor = 1e-300;

/// |u|^2 Log|u|^2 pointwise; 0 where |u|^2 <= floor.
RealField log_density(const WaveField& u, double floor = kLogFloor);
double log_integral(const WaveField& u, double floor = kLogFloor);

/// int |grad u|^2
double kinetic_integral(const WaveField& u);

/// E_eps(u) = eps^{2-N}/2 int|grad u|^2 + eps^{-N} int V|u|^2 - eps^{-N} int |u|^2 Log|u|^2
double energy_scaled(const WaveField& u, const Potential& V);
/// Q_eps(u) = eps^{-N} int |u|^2
double mass_scaled(const WaveField& u);

/// Unscaled functionals (the grid frame, u.eps ignored).
double energy_unscaled(const WaveField& u);  // 1/2 K - L
double action_S(const WaveField& u);         // 1/4 K + Q - 1/2 L
double nehari_I(const WaveField& u);         // 1/2 K + Q - L

/// lambda* with I(lambda* u) = 0, from I(l u) = l^2 (I(u) - Log(l^2) ||u||^2).
/// Throws std::domain_error("undefined Nehari scaling") on a zero field.
double nehari_scale(const WaveField& u);

struct FunctionalReport {
    double energy_unscaled;
    double energy_scaled;
    double mass_scaled;
    double action;
    double nehari;
    double kinetic;
    double mass;
    double logterm;
};

FunctionalReport functional_report(const WaveField& u, const Potential& V);

/// First variation of the unscaled energy: -Lap u - 2u Log|u|^2 - 2u,
/// so that dE(u)[w] = (E'(u), w)_{L^2}.
WaveField energy_gradient(const WaveField& u, double floor = kLogFloor);

/// Young function: -s^2 Log s^2 on [0, e^-3], 3s^2 + 4e^-3 s - e^-6 beyond.
double phi_young(double s);
/// Psi = F + Phi with F(s) = s^2 Log s^2.
double psi_fn(double s);

/// inf{k > 0 : int Phi(|u|/k) <= 1}, by bracketing bisection.
double luxemburg_norm(const WaveField& u);

/// RHS - LHS of the logarithmic Sobolev inequality
///   int |v|^2 Log|v|^2 <= a^2/pi ||grad v||^2 + (Log||v||^2 - N(1 + Log a)) ||v||^2.
double log_sobolev_gap(const WaveField& u, double alpha);

} // namespace lognls
