#include "lognls/classical.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lognls {

double classical_hamiltonian(const ClassicalState& s, const Potential& V) { return 0.5 * dot(s.nu, s.nu) + V(s.x); }

ClassicalState step_verlet(const ClassicalState& s, const Potential& V, double dt) {
    ClassicalState out = s;
    out.nu = out.nu - (0.5 * dt) * V.grad(out.x);
    out.x = out.x + dt * out.nu;
    out.nu = out.nu - (0.5 * dt) * V.grad(out.x);
    out.t = s.t + dt;
    return out;
}

ClassicalState step_yoshida4(const ClassicalState& s, const Potential& V, double dt) {
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 * w1;
    ClassicalState out = step_verlet(s, V, w1 * dt);
    out = step_verlet(out, V, w0 * dt);
    out = step_verlet(out, V, w1 * dt);
    out.t = s.t + dt;
    return out;
}

Trajectory::Trajectory(std::vector<ClassicalState> states, double dt, int dim)
    : states_(std::move(states)), dt_(dt), dim_(dim) {
    if (states_.empty()) throw std::invalid_argument("Trajectory: no states");
    for (std::size_t i = 1; i < states_.size(); ++i) {
        if (!(states_[i].t > states_[i - 1].t)) throw std::invalid_argument("Trajectory: times must increase");
    }
}

ClassicalState Trajectory::at(double t) const {
    if (t <= t_begin()) return states_.front();
    if (t >= t_end()) return states_.back();
    auto idx = static_cast<std::size_t>((t - t_begin()) / dt_);
    idx = std::min(idx, states_.size() - 2);
    const auto& a = states_[idx];
    const auto& b = states_[idx + 1];
    const double w = (t - a.t) / (b.t - a.t);
    ClassicalState s;
    s.x = (1.0 - w) * a.x + w * b.x;
    s.nu = (1.0 - w) * a.nu + w * b.nu;
    s.t = t;
    return s;
}

double Trajectory::hamiltonian_drift(const Potential& V) const {
    const double h0 = classical_hamiltonian(states_.front(), V);
    double worst = 0.0;
    for (const auto& s : states_) worst = std::max(worst, std::abs(classical_hamiltonian(s, V) - h0));
    return worst / (1.0 + std::abs(h0));
}

double Trajectory::max_radius() const {
    double r = 0.0;
    for (const auto& s : states_) r = std::max(r, norm(s.x));
    return r;
}

void Trajectory::write_csv(std::ostream& os, const Potential& V) const {
    const char* axes = "xy";
    os << "t";
    for (int a = 0; a < dim_; ++a) os << ",x" << axes[a];
    for (int a = 0; a < dim_; ++a) os << ",nu" << axes[a];
    os << ",H\n";
    os << std::setprecision(17);
    for (const auto& s : states_) {
        os << s.t;
        for (int a = 0; a < dim_; ++a) os << ',' << s.x[a];
        for (int a = 0; a < dim_; ++a) os << ',' << s.nu[a];
        os << ',' << classical_hamiltonian(s, V) << '\n';
    }
}

Trajectory solve(const ClassicalState& s0, const Potential& V, double T, double dt, ClassicalScheme scheme) {
    if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("solve: T and dt must be positive");
    const auto steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    std::vector<ClassicalState> states;
    states.reserve(static_cast<std::size_t>(steps) + 1);
    ClassicalState s = s0;
    s.t = 0.0;
    states.push_back(s);
    for (long n = 1; n <= steps; ++n) {
        s = (scheme == ClassicalScheme::verlet) ? step_verlet(s, V, dt) : step_yoshida4(s, V, dt);
        // recompute t from the step index so spacing stays uniform
        s.t = static_cast<double>(n) * dt;
        for (int a = 0; a < kMaxDim; ++a) {
            if (!std::isfinite(s.x[a]) || !std::isfinite(s.nu[a])) {
                std::ostringstream msg;
                msg << "classical solve: non-finite state at step " << n << " (t = " << s.t << ")";
                throw std::runtime_error(msg.str());
            }
        }
        states.push_back(s);
    }
    return Trajectory(std::move(states), dt, V.dim());
}

} // namespace lognls
