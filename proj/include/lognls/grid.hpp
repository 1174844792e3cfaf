#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lognls {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 2;

/// Point or vector in R^N, N <= 2. Unused trailing components stay zero.
using Vec = std::array<double, kMaxDim>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& a);

/**
 * Periodic tensor grid on the box [-L/2, L/2)^N.
 *
 * Node i on axis j sits at -L_j/2 + i*h_j. Spectral wavenumbers follow the
 * FFT ordering 0, 1, ..., M/2-1, -M/2, ..., -1 scaled by 2*pi/L; the single
 * Nyquist mode -M/2 has no positive partner.
 */
class GridSpec {
public:
    GridSpec(int dim, double extent, int points);
    GridSpec(int dim, Vec extent, std::array<int, kMaxDim> points);

    int dim() const { return dim_; }
    double extent(int axis) const { return extent_[axis]; }
    int points(int axis) const { return points_[axis]; }
    double spacing(int axis) const { return extent_[axis] / points_[axis]; }
    std::size_t size() const { return size_; }
    double cell_volume() const;

    double coord(int axis, int i) const { return -0.5 * extent_[axis] + i * spacing(axis); }
    /// Physical position of the flat (row-major, axis 0 slowest) index.
    Vec node(std::size_t flat) const;

    std::span<const double> wavenumbers(int axis) const { return wavenumbers_[axis]; }
    /// |k|^2 at flat spectral index.
    double k_squared(std::size_t flat) const;
    std::size_t nyquist_index(int axis) const { return static_cast<std::size_t>(points_[axis] / 2); }

    bool operator==(const GridSpec& other) const;

private:
    int dim_;
    Vec extent_{};
    std::array<int, kMaxDim> points_{1, 1};
    std::size_t size_;
    std::array<std::vector<double>, kMaxDim> wavenumbers_;
};

/// Complex samples of a function on a grid, tagged with the semiclassical parameter.
struct WaveField {
    WaveField(GridSpec grid, double eps);
    WaveField(GridSpec grid, double eps, std::vector<Complex> values);

    GridSpec grid;
    double eps;
    std::vector<Complex> values;

    std::size_t size() const { return values.size(); }
};

struct RealField {
    explicit RealField(GridSpec grid);
    RealField(GridSpec grid, std::vector<double> values);

    GridSpec grid;
    std::vector<double> values;
};

/// Riemann sum h^N * sum(values).
double integrate(const RealField& f);
double integrate(const GridSpec& grid, std::span<const double> values);

/// Spectral partial derivative along one axis. The Nyquist mode is dropped.
WaveField partial(const WaveField& u, int axis);
std::vector<WaveField> gradient(const WaveField& u);
/// Spectral Laplacian, multiplier -|k|^2 including the Nyquist mode.
WaveField laplacian(const WaveField& u);
/// Spectral divergence of a real vector field.
RealField divergence(std::span<const RealField> components);

double l2_norm_sq(const WaveField& u);
/// eps^{2-N} ||grad u||^2 + eps^{-N} ||u||^2 using u.eps.
double h1_eps_norm_sq(const WaveField& u);
/// Unscaled Sigma norm: int |grad u|^2 + |x|^2 |u|^2 + |u|^2.
double sigma_norm_sq(const WaveField& u);
/// Real L^2 inner product Re int u conj(v).
double real_inner(const WaveField& u, const WaveField& v);
/// Complex overlap int conj(a) b.
Complex overlap(const WaveField& a, const WaveField& b);

RealField modulus_sq(const WaveField& u);

/**
 * Resolution rule: points per axis >= 32 * L / eps so that a Gausson of
 * width eps is spanned by ~32 nodes. Returns a message when violated.
 */
std::optional<std::string> check_resolution(const GridSpec& grid, double eps);

/// Smallest power of two satisfying the resolution rule on a box of extent L.
int resolved_points(double extent, double eps);

void set_warning_handler(std::function<void(std::string_view)> handler);
void warn(std::string_view message);

} // namespace lognls
