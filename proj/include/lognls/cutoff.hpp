#pragma once

#include "lognls/classical.hpp"
#include "lognls/grid.hpp"

namespace lognls {

/// Radial cutoff: 1 on |x| <= rho, 0 on |x| >= 2 rho, quintic smoothstep (C^2) between.
class Cutoff {
public:
    explicit Cutoff(double rho);

    double rho() const { return rho_; }
    double operator()(const Vec& x) const;
    RealField sample(const GridSpec& grid) const;

private:
    double rho_;
};

/**
 * rho = sup_t |x(t)| + margin. The constants of the dual-norm comparison
 * that fix rho in theory are non-constructive; the margin stands in for
 * them. Throws std::invalid_argument if the 2 rho ball leaves the box.
 */
Cutoff make_cutoff(const Trajectory& traj, double margin, const GridSpec& grid);
Cutoff make_cutoff(const Trajectory& traj, double margin = 2.0);

} // namespace lognls
