#include "lognls/linearized.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lognls/gausson.hpp"

namespace lognls {

std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

std::string_view to_string(Basis b) {
    return b == Basis::finite_difference_1d ? "finite_difference_1d" : "hermite_tensor";
}

Eigen::MatrixXd spectral_second_derivative(int points, double extent) {
    const int m = points;
    std::vector<double> column(m, 0.0);
    const double dk = 2.0 * std::numbers::pi / extent;
    for (int d = 0; d < m; ++d) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
            const double k = dk * (j < m / 2 ? j : j - m);
            s -= k * k * std::cos(2.0 * std::numbers::pi * j * d / m);
        }
        column[d] = s / m;
    }
    Eigen::MatrixXd d2(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) d2(a, b) = column[((a - b) % m + m) % m];
    }
    return d2;
}

namespace {

double branch_shift(Branch which, int dim) { return which == Branch::plus ? dim + 2.0 : static_cast<double>(dim); }

std::vector<double> collocation_nodes(const OperatorGridSpec& spec) {
    std::vector<double> x(spec.points);
    const double h = spec.extent / spec.points;
    for (int i = 0; i < spec.points; ++i) x[i] = -0.5 * spec.extent + i * h;
    return x;
}

} // namespace

Eigen::VectorXd SymOperator::coordinates(const std::function<double(const Vec&)>& f) const {
    const int m = static_cast<int>(nodes.size());
    if (basis == Basis::finite_difference_1d) {
        Eigen::VectorXd c(m);
        for (int i = 0; i < m; ++i) c(i) = f(Vec{nodes[i], 0.0});
        return c;
    }
    const double h = spec.extent / spec.points;
    Eigen::VectorXd c(static_cast<Eigen::Index>(tensor_index.size()));
    if (dim == 1) {
        Eigen::VectorXd samples(m);
        for (int i = 0; i < m; ++i) samples(i) = f(Vec{nodes[i], 0.0});
        const Eigen::VectorXd proj = h * modes1d.transpose() * samples;
        for (std::size_t n = 0; n < tensor_index.size(); ++n) c(static_cast<Eigen::Index>(n)) = proj(tensor_index[n][0]);
        return c;
    }
    Eigen::MatrixXd samples(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) samples(a, b) = f(Vec{nodes[a], nodes[b]});
    }
    const Eigen::MatrixXd proj = h * h * modes1d.transpose() * samples * modes1d;
    for (std::size_t n = 0; n < tensor_index.size(); ++n) {
        c(static_cast<Eigen::Index>(n)) = proj(tensor_index[n][0], tensor_index[n][1]);
    }
    return c;
}

SymOperator build_L(Branch which, int dim, Basis basis, const OperatorGridSpec& spec) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("build_L: dimension must be 1 or 2");
    if (basis == Basis::finite_difference_1d && dim != 1)
        throw std::invalid_argument("build_L: finite_difference_1d supports N = 1 only");
    if (spec.points < 8 || spec.points % 2 != 0) throw std::invalid_argument("build_L: points must be even and >= 8");

    SymOperator op{.which = which, .dim = dim, .basis = basis, .spec = spec};
    op.nodes = collocation_nodes(spec);
    const int m = spec.points;
    const double h = spec.extent / m;
    const double shift = branch_shift(which, dim);
    const Eigen::MatrixXd d2 = spectral_second_derivative(m, spec.extent);

    Eigen::VectorXd x2(m);
    for (int i = 0; i < m; ++i) x2(i) = op.nodes[i] * op.nodes[i];

    if (basis == Basis::finite_difference_1d) {
        op.weight = h;
        op.matrix = -0.5 * d2;
        op.matrix.diagonal().array() += 2.0 * x2.array() - shift;
        op.sigma = -d2;
        op.sigma.diagonal().array() += x2.array() + 1.0;
        return op;
    }

    if (spec.modes < 2 || spec.modes > m) throw std::invalid_argument("build_L: modes out of range");
    Eigen::MatrixXd oscillator = -0.5 * d2;
    oscillator.diagonal() += 2.0 * x2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oscillator);
    const int k = spec.modes;
    const Eigen::VectorXd levels = eig.eigenvalues().head(k);
    op.modes1d = eig.eigenvectors().leftCols(k) / std::sqrt(h);

    // Galerkin matrix of -d^2 + x^2 in the 1-D modes
    Eigen::MatrixXd sig1 = -d2;
    sig1.diagonal() += x2;
    const Eigen::MatrixXd b = h * op.modes1d.transpose() * sig1 * op.modes1d;

    if (dim == 1) {
        for (int i = 0; i < k; ++i) op.tensor_index.push_back({i, 0});
    } else {
        for (int total = 0; total < k; ++total) {
            for (int i = total; i >= 0; --i) op.tensor_index.push_back({i, total - i});
        }
    }
    const auto n = static_cast<Eigen::Index>(op.tensor_index.size());
    op.weight = 1.0;
    op.matrix = Eigen::MatrixXd::Zero(n, n);
    op.sigma = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto [i, j] = op.tensor_index[r];
        op.matrix(r, r) = levels(i) + (dim == 2 ? levels(j) : 0.0) - shift;
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto [p, q] = op.tensor_index[c];
            double v = 0.0;
            if (dim == 1) {
                v = b(i, p) + (i == p ? 1.0 : 0.0);
            } else {
                if (j == q) v += b(i, p);
                if (i == p) v += b(j, q);
                if (i == p && j == q) v += 1.0;
            }
            op.sigma(r, c) = v;
        }
    }
    op.sigma = 0.5 * (op.sigma + op.sigma.transpose());
    return op;
}

SpectrumReport spectrum(const SymOperator& A, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > A.size()) throw std::invalid_argument("spectrum: k out of range");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A.matrix);
    if (eig.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
    SpectrumReport rep;
    rep.eigenvalues = eig.eigenvalues().head(k);
    rep.eigenvectors = eig.eigenvectors().leftCols(k) / std::sqrt(A.weight);
    rep.residuals.resize(k);
    for (int i = 0; i < k; ++i) {
        const Eigen::VectorXd phi = rep.eigenvectors.col(i);
        const Eigen::VectorXd r = A.matrix * phi - rep.eigenvalues(i) * phi;
        rep.residuals(i) = std::sqrt(A.inner(r, r));
    }
    return rep;
}

double s2_form(const SymOperator& lplus, const SymOperator& lminus, const Eigen::VectorXd& u,
               const Eigen::VectorXd& v) {
    if (lplus.which != Branch::plus || lminus.which != Branch::minus)
        throw std::invalid_argument("s2_form: expects (L+, L-)");
    return lplus.form(u) + lminus.form(v);
}

Eigen::MatrixXd complement_basis(const Eigen::MatrixXd& constraints) {
    const Eigen::Index n = constraints.rows();
    const Eigen::Index c = constraints.cols();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(constraints);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    return q.rightCols(n - c);
}

Eigen::MatrixXd constraint_vectors(const SymOperator& A, bool include_derivatives) {
    const int cols = 1 + (include_derivatives ? A.dim : 0);
    Eigen::MatrixXd c(static_cast<Eigen::Index>(A.size()), cols);
    const int n = A.dim;
    c.col(0) = A.coordinates([n](const Vec& x) { return std::exp(0.5 * log_profile_sq(x, n)); });
    if (include_derivatives) {
        for (int a = 0; a < n; ++a) {
            c.col(1 + a) = A.coordinates(
                [n, a](const Vec& x) { return -2.0 * x[a] * std::exp(0.5 * log_profile_sq(x, n)); });
        }
    }
    return c;
}

namespace {

CoercivityReport constrained_minima(const SymOperator& A, bool include_derivatives) {
    const Eigen::MatrixXd q = complement_basis(constraint_vectors(A, include_derivatives));
    const Eigen::MatrixXd a = q.transpose() * A.matrix * q;
    const Eigen::MatrixXd b = q.transpose() * A.sigma * q;
    const Eigen::MatrixXd as = 0.5 * (a + a.transpose());
    const Eigen::MatrixXd bs = 0.5 * (b + b.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> l2(as, Eigen::EigenvaluesOnly);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> sig(as, bs, Eigen::EigenvaluesOnly);
    if (l2.info() != Eigen::Success || sig.info() != Eigen::Success)
        throw std::runtime_error("coercivity: eigensolver failed");
    return {l2.eigenvalues()(0), sig.eigenvalues()(0)};
}

} // namespace

CoercivityReport coercivity(CoercivityTarget target, int dim, Basis basis, const OperatorGridSpec& spec) {
    switch (target) {
    case CoercivityTarget::Lminus: return constrained_minima(build_L(Branch::minus, dim, basis, spec), false);
    case CoercivityTarget::Lplus: return constrained_minima(build_L(Branch::plus, dim, basis, spec), true);
    case CoercivityTarget::full: {
        // (w,R) = (w,iR) = (w,dR/dx_j) = 0 splits into u _|_ R, dR/dx_j and v _|_ R
        const auto p = constrained_minima(build_L(Branch::plus, dim, basis, spec), true);
        const auto m = constrained_minima(build_L(Branch::minus, dim, basis, spec), false);
        return {std::min(p.delta_L2, m.delta_L2), std::min(p.delta_sigma, m.delta_sigma)};
    }
    }
    throw std::invalid_argument("coercivity: unknown target");
}

} // namespace lognls
