#include "lognls/grid.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lognls/fft.hpp"

namespace lognls {

double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1]}; }
Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1]}; }
Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1]}; }

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

GridSpec::GridSpec(int dim, double extent, int points)
    : GridSpec(dim, Vec{extent, dim > 1 ? extent : 0.0}, {points, dim > 1 ? points : 1}) {}

GridSpec::GridSpec(int dim, Vec extent, std::array<int, kMaxDim> points) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("GridSpec: dimension must be 1 or 2");
    size_ = 1;
    for (int a = 0; a < dim; ++a) {
        if (!(extent[a] > 0.0)) throw std::invalid_argument("GridSpec: extent must be positive");
        if (!is_power_of_two(points[a]) || points[a] < 2)
            throw std::invalid_argument("GridSpec: points per axis must be a power of two >= 2");
        extent_[a] = extent[a];
        points_[a] = points[a];
        size_ *= static_cast<std::size_t>(points[a]);

        const int m = points[a];
        auto& k = wavenumbers_[a];
        k.resize(m);
        const double dk = 2.0 * std::numbers::pi / extent[a];
        for (int j = 0; j < m; ++j) k[j] = dk * (j < m / 2 ? j : j - m);
    }
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= spacing(a);
    return v;
}

Vec GridSpec::node(std::size_t flat) const {
    if (dim_ == 1) return {coord(0, static_cast<int>(flat)), 0.0};
    const auto m1 = static_cast<std::size_t>(points_[1]);
    return {coord(0, static_cast<int>(flat / m1)), coord(1, static_cast<int>(flat % m1))};
}

double GridSpec::k_squared(std::size_t flat) const {
    if (dim_ == 1) {
        const double k = wavenumbers_[0][flat];
        return k * k;
    }
    const auto m1 = static_cast<std::size_t>(points_[1]);
    const double k0 = wavenumbers_[0][flat / m1];
    const double k1 = wavenumbers_[1][flat % m1];
    return k0 * k0 + k1 * k1;
}

bool GridSpec::operator==(const GridSpec& other) const {
    return dim_ == other.dim_ && extent_ == other.extent_ && points_ == other.points_;
}

WaveField::WaveField(GridSpec g, double e) : WaveField(std::move(g), e, {}) {}

WaveField::WaveField(GridSpec g, double e, std::vector<Complex> v)
    : grid(std::move(g)), eps(e), values(std::move(v)) {
    if (!(eps > 0.0)) throw std::invalid_argument("WaveField: eps must be positive");
    if (values.empty()) values.assign(grid.size(), Complex{});
    if (values.size() != grid.size()) throw std::invalid_argument("WaveField: values length does not match grid");
}

RealField::RealField(GridSpec g) : grid(std::move(g)), values(grid.size(), 0.0) {}

RealField::RealField(GridSpec g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) throw std::invalid_argument("RealField: values length does not match grid");
}

double integrate(const GridSpec& grid, std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return grid.cell_volume() * sum;
}

double integrate(const RealField& f) { return integrate(f.grid, f.values); }

WaveField partial(const WaveField& u, int axis) {
    const auto& g = u.grid;
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("partial: axis out of range");
    Fft fft(g);
    WaveField out = u;
    fft.forward(out.values);
    const auto k = g.wavenumbers(axis);
    const std::size_t nyq = g.nyquist_index(axis);
    const std::size_t m1 = g.dim() > 1 ? static_cast<std::size_t>(g.points(1)) : 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t j = (axis == 0) ? i / m1 : i % m1;
        out.values[i] *= (j == nyq) ? Complex{} : Complex{0.0, k[j]};
    }
    fft.inverse(out.values);
    return out;
}

std::vector<WaveField> gradient(const WaveField& u) {
    std::vector<WaveField> grad;
    grad.reserve(u.grid.dim());
    for (int a = 0; a < u.grid.dim(); ++a) grad.push_back(partial(u, a));
    return grad;
}

WaveField laplacian(const WaveField& u) {
    Fft fft(u.grid);
    WaveField out = u;
    fft.forward(out.values);
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= -u.grid.k_squared(i);
    fft.inverse(out.values);
    return out;
}

RealField divergence(std::span<const RealField> components) {
    if (components.empty()) throw std::invalid_argument("divergence: no components");
    const GridSpec& g = components.front().grid;
    if (static_cast<int>(components.size()) != g.dim())
        throw std::invalid_argument("divergence: component count must equal dimension");
    RealField out(g);
    for (int a = 0; a < g.dim(); ++a) {
        WaveField c(g, 1.0);
        for (std::size_t i = 0; i < g.size(); ++i) c.values[i] = components[a].values[i];
        const WaveField d = partial(c, a);
        for (std::size_t i = 0; i < g.size(); ++i) out.values[i] += d.values[i].real();
    }
    return out;
}

namespace {

double sum_sq(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

double grad_sq(const WaveField& u) {
    double s = 0.0;
    for (const auto& d : gradient(u)) s += sum_sq(d.values);
    return s * u.grid.cell_volume();
}

} // namespace

double l2_norm_sq(const WaveField& u) { return sum_sq(u.values) * u.grid.cell_volume(); }

double h1_eps_norm_sq(const WaveField& u) {
    const int n = u.grid.dim();
    return std::pow(u.eps, 2 - n) * grad_sq(u) + std::pow(u.eps, -n) * l2_norm_sq(u);
}

double sigma_norm_sq(const WaveField& u) {
    double weighted = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Vec x = u.grid.node(i);
        weighted += (1.0 + dot(x, x)) * std::norm(u.values[i]);
    }
    return grad_sq(u) + weighted * u.grid.cell_volume();
}

double real_inner(const WaveField& u, const WaveField& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += (u.values[i] * std::conj(v.values[i])).real();
    return s * u.grid.cell_volume();
}

Complex overlap(const WaveField& a, const WaveField& b) {
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
    return s * a.grid.cell_volume();
}

RealField modulus_sq(const WaveField& u) {
    RealField out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) out.values[i] = std::norm(u.values[i]);
    return out;
}

std::optional<std::string> check_resolution(const GridSpec& grid, double eps) {
    for (int a = 0; a < grid.dim(); ++a) {
        const double required = 32.0 * grid.extent(a) / eps;
        if (grid.points(a) < required) {
            std::ostringstream msg;
            msg << "grid under-resolved on axis " << a << ": " << grid.points(a) << " points, rule M >= 32*L/eps requires "
                << static_cast<long>(std::ceil(required));
            return msg.str();
        }
    }
    return std::nullopt;
}

int resolved_points(double extent, double eps) {
    const double required = 32.0 * extent / eps;
    int m = 2;
    while (m < required) m *= 2;
    return m;
}

namespace {

std::mutex& warn_mutex() {
    static std::mutex m;
    return m;
}

std::function<void(std::string_view)>& warn_handler() {
    static std::function<void(std::string_view)> h = [](std::string_view msg) {
        std::clog << "warning: " << msg << '\n';
    };
    return h;
}

} // namespace

void set_warning_handler(std::function<void(std::string_view)> handler) {
    std::lock_guard lock(warn_mutex());
    warn_handler() = std::move(handler);
}

void warn(std::string_view message) {
    std::lock_guard lock(warn_mutex());
    if (warn_handler()) warn_handler()(message);
}

} // namespace lognls
