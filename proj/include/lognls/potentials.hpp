#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lognls/grid.hpp"

namespace lognls {

enum class PotentialKind { zero, gaussian_bump, cosine };

std::string_view to_string(PotentialKind kind);
PotentialKind parse_potential_kind(std::string_view name);

/**
 * Bounded smooth external potential with closed-form gradient.
 *
 *   zero:          V = shift
 *   gaussian_bump: V = shift + A exp(-|x-c|^2 / (2 s^2))
 *   cosine:        V = shift + A sum_j cos(kappa_j x_j)
 *
 * The shift is fixed at construction as max(0, -inf V) + offset so V >= 0
 * everywhere. Shifting V only multiplies solutions by exp(-i shift t / eps).
 */
class Potential {
public:
    static Potential zero(int dim, double offset = 0.0);
    static Potential gaussian_bump(int dim, double amplitude, Vec center, double width, double offset = 0.0);
    static Potential cosine(int dim, double amplitude, Vec wavevector, double offset = 0.0);

    PotentialKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double amplitude() const { return amplitude_; }
    const Vec& center() const { return center_; }
    double width() const { return width_; }
    const Vec& wavevector() const { return wavevector_; }
    double offset() const { return offset_; }
    double shift() const { return shift_; }

    double operator()(const Vec& x) const;
    Vec grad(const Vec& x) const;

    /// Analytic sup of |V| over R^N.
    double sup_value() const;
    /// Analytic sup of |grad V| over R^N.
    double sup_gradient() const;

private:
    Potential(PotentialKind kind, int dim, double amplitude, Vec center, double width, Vec wavevector, double offset);

    PotentialKind kind_;
    int dim_;
    double amplitude_ = 0.0;
    Vec center_{};
    double width_ = 1.0;
    Vec wavevector_{};
    double offset_ = 0.0;
    double shift_ = 0.0;
};

RealField evaluate(const Potential& V, const GridSpec& grid);

/**
 * Max relative error of the analytic gradient against 4th-order central
 * differences (step 1e-3) at uniformly random points in [-10, 10]^N.
 * The error is measured relative to max(|grad V|, A * g) where g is the
 * natural gradient scale of the closed form (1/s or |kappa|).
 */
double check_gradient(const Potential& V, int samples, std::uint64_t seed = 20240611);

} // namespace lognls
