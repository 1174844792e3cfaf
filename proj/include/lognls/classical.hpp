#pragma once

#include <iosfwd>
#include <vector>

#include "lognls/grid.hpp"
#include "lognls/potentials.hpp"

namespace lognls {

/// Phase-space point of x' = nu, nu' = -grad V(x).
struct ClassicalState {
    Vec x{};
    Vec nu{};
    double t = 0.0;
};

/// H = |nu|^2 / 2 + V(x)
double classical_hamiltonian(const ClassicalState& s, const Potential& V);

/// One kick-drift-kick velocity-Verlet step.
ClassicalState step_verlet(const ClassicalState& s, const Potential& V, double dt);

/// Yoshida triple-jump composition of three Verlet steps; symplectic, order 4.
ClassicalState step_yoshida4(const ClassicalState& s, const Potential& V, double dt);

enum class ClassicalScheme { verlet, yoshida4 };

class Trajectory {
public:
    Trajectory(std::vector<ClassicalState> states, double dt, int dim);

    const std::vector<ClassicalState>& states() const { return states_; }
    double dt() const { return dt_; }
    int dim() const { return dim_; }
    double t_begin() const { return states_.front().t; }
    double t_end() const { return states_.back().t; }

    /// Linear interpolation in t; clamps to the covered interval.
    ClassicalState at(double t) const;

    /// max |H(t) - H(0)| / (1 + |H(0)|)
    double hamiltonian_drift(const Potential& V) const;

    /// sup_t |x(t)|
    double max_radius() const;

    /// CSV columns t, x..., nu..., H
    void write_csv(std::ostream& os, const Potential& V) const;

private:
    std::vector<ClassicalState> states_;
    double dt_;
    int dim_;
};

/// Integrate on [0, T] with uniform step. Throws std::runtime_error on a non-finite state.
Trajectory solve(const ClassicalState& s0, const Potential& V, double T, double dt = 1e-3,
                 ClassicalScheme scheme = ClassicalScheme::yoshida4);

} // namespace lognls
