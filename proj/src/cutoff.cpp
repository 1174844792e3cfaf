#include "lognls/cutoff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lognls {

Cutoff::Cutoff(double rho) : rho_(rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("Cutoff: rho must be positive");
}

double Cutoff::operator()(const Vec& x) const {
    const double r = norm(x);
    if (r <= rho_) return 1.0;
    if (r >= 2.0 * rho_) return 0.0;
    const double s = (r - rho_) / rho_;
    return std::max(0.0, 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s));
}

RealField Cutoff::sample(const GridSpec& grid) const {
    RealField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = (*this)(grid.node(i));
    return out;
}

Cutoff make_cutoff(const Trajectory& traj, double margin) {
    if (traj.states().empty()) throw std::invalid_argument("make_cutoff: empty trajectory");
    return Cutoff(traj.max_radius() + margin);
}

Cutoff make_cutoff(const Trajectory& traj, double margin, const GridSpec& grid) {
    Cutoff c = make_cutoff(traj, margin);
    for (int a = 0; a < grid.dim(); ++a) {
        if (2.0 * c.rho() > 0.5 * grid.extent(a)) {
            std::ostringstream msg;
            msg << "cutoff support 2*rho = " << 2.0 * c.rho() << " does not fit inside the box half-extent "
                << 0.5 * grid.extent(a);
            throw std::invalid_argument(msg.str());
        }
    }
    return c;
}

} // namespace lognls
