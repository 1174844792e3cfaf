#include "lognls/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lognls {

std::string_view to_string(PotentialKind kind) {
    switch (kind) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::gaussian_bump: return "gaussian_bump";
    case PotentialKind::cosine: return "cosine";
    }
    return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name) {
    if (name == "zero") return PotentialKind::zero;
    if (name == "gaussian_bump") return PotentialKind::gaussian_bump;
    if (name == "cosine") return PotentialKind::cosine;
    throw std::invalid_argument("unknown potential kind '" + std::string(name) + "'");
}

Potential::Potential(PotentialKind kind, int dim, double amplitude, Vec center, double width, Vec wavevector,
                     double offset)
    : kind_(kind), dim_(dim), amplitude_(amplitude), center_(center), width_(width), wavevector_(wavevector),
      offset_(offset) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Potential: dimension must be 1 or 2");
    if (!(width > 0.0)) throw std::invalid_argument("Potential: width must be positive");
    for (int a = dim; a < kMaxDim; ++a) {
        center_[a] = 0.0;
        wavevector_[a] = 0.0;
    }

    double inf = 0.0;
    switch (kind) {
    case PotentialKind::zero: inf = 0.0; break;
    case PotentialKind::gaussian_bump: inf = std::min(0.0, amplitude); break;
    case PotentialKind::cosine:
        for (int a = 0; a < dim; ++a) inf += (wavevector_[a] != 0.0) ? -std::abs(amplitude) : amplitude;
        break;
    }
    shift_ = std::max(0.0, -inf) + offset;
}

Potential Potential::zero(int dim, double offset) {
    return {PotentialKind::zero, dim, 0.0, Vec{}, 1.0, Vec{}, offset};
}

Potential Potential::gaussian_bump(int dim, double amplitude, Vec center, double width, double offset) {
    return {PotentialKind::gaussian_bump, dim, amplitude, center, width, Vec{}, offset};
}

Potential Potential::cosine(int dim, double amplitude, Vec wavevector, double offset) {
    return {PotentialKind::cosine, dim, amplitude, Vec{}, 1.0, wavevector, offset};
}

double Potential::operator()(const Vec& x) const {
    switch (kind_) {
    case PotentialKind::zero: return shift_;
    case PotentialKind::gaussian_bump: {
        double r2 = 0.0;
        for (int a = 0; a < dim_; ++a) r2 += (x[a] - center_[a]) * (x[a] - center_[a]);
        return shift_ + amplitude_ * std::exp(-r2 / (2.0 * width_ * width_));
    }
    case PotentialKind::cosine: {
        double s = 0.0;
        for (int a = 0; a < dim_; ++a) s += std::cos(wavevector_[a] * x[a]);
        return shift_ + amplitude_ * s;
    }
    }
    return shift_;
}

Vec Potential::grad(const Vec& x) const {
    Vec g{};
    switch (kind_) {
    case PotentialKind::zero: break;
    case PotentialKind::gaussian_bump: {
        Vec d{};
        for (int a = 0; a < dim_; ++a) d[a] = x[a] - center_[a];
        const double s2 = width_ * width_;
        const double e = amplitude_ * std::exp(-dot(d, d) / (2.0 * s2));
        for (int a = 0; a < dim_; ++a) g[a] = -d[a] / s2 * e;
        break;
    }
    case PotentialKind::cosine:
        for (int a = 0; a < dim_; ++a) g[a] = -amplitude_ * wavevector_[a] * std::sin(wavevector_[a] * x[a]);
        break;
    }
    return g;
}

double Potential::sup_value() const {
    switch (kind_) {
    case PotentialKind::zero: return std::abs(shift_);
    case PotentialKind::gaussian_bump: return std::abs(shift_) + std::abs(amplitude_);
    case PotentialKind::cosine: return std::abs(shift_) + dim_ * std::abs(amplitude_);
    }
    return 0.0;
}

double Potential::sup_gradient() const {
    switch (kind_) {
    case PotentialKind::zero: return 0.0;
    // max over r of (r / s^2) exp(-r^2 / 2 s^2) is attained at r = s
    case PotentialKind::gaussian_bump: return std::abs(amplitude_) / width_ * std::exp(-0.5);
    case PotentialKind::cosine: return std::abs(amplitude_) * norm(wavevector_);
    }
    return 0.0;
}

RealField evaluate(const Potential& V, const GridSpec& grid) {
    if (V.dim() != grid.dim()) throw std::invalid_argument("evaluate: potential and grid dimensions differ");
    RealField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = V(grid.node(i));
    return out;
}

double check_gradient(const Potential& V, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("check_gradient: samples must be >= 1");
    double scale = 0.0;
    switch (V.kind()) {
    case PotentialKind::zero: scale = 0.0; break;
    case PotentialKind::gaussian_bump: scale = std::abs(V.amplitude()) / V.width(); break;
    case PotentialKind::cosine: scale = std::abs(V.amplitude()) * norm(V.wavevector()); break;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    const double h = 1e-3;
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        Vec x{};
        for (int a = 0; a < V.dim(); ++a) x[a] = coord(rng);
        const Vec g = V.grad(x);
        Vec fd{};
        for (int a = 0; a < V.dim(); ++a) {
            auto at = [&](double off) {
                Vec y = x;
                y[a] += off;
                return V(y);
            };
            fd[a] = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
        }
        const double denom = std::max(norm(g), 1e-3 * scale);
        const double err = norm(g - fd);
        if (denom > 0.0) worst = std::max(worst, err / denom);
        else worst = std::max(worst, err);
    }
    return worst;
}

} // namespace lognls
