#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "lognls/grid.hpp"

namespace lognls {

/// L+ u = -Lap u / 2 + 2|x|^2 u - (N+2) u ;  L- v = -Lap v / 2 + 2|x|^2 v - N v
enum class Branch { plus, minus };

/**
 * finite_difference_1d: collocation on a uniform periodic grid over
 * [-L/2, L/2) with the Fourier second-derivative stencil (N = 1 only).
 * hermite_tensor: Galerkin basis of tensor products of 1-D oscillator
 * eigenfunctions, truncated to total degree < modes; the operator is
 * diagonal there because the oscillator separates.
 */
enum class Basis { finite_difference_1d, hermite_tensor };

std::string_view to_string(Branch b);
std::string_view to_string(Basis b);

struct OperatorGridSpec {
    int points = 256;
    double extent = 16.0;
    int modes = 12;  // hermite_tensor truncation
};

/// Dense symmetric operator together with the data needed to map functions
/// on R^N to its coordinates.
class SymOperator {
public:
    Branch which;
    int dim;
    Basis basis;
    OperatorGridSpec spec;

    /// Operator matrix in coordinates; the L^2 inner product is weight * a.b.
    Eigen::MatrixXd matrix{};
    /// Sigma-norm Gram operator (-Lap + |x|^2 + 1) in the same coordinates.
    Eigen::MatrixXd sigma{};
    double weight = 1.0;

    /// 1-D collocation nodes and, for hermite_tensor, the 1-D modes (columns,
    /// L^2-normalized) and the (i, j) degree pair of each coordinate.
    std::vector<double> nodes{};
    Eigen::MatrixXd modes1d{};
    std::vector<std::array<int, 2>> tensor_index{};

    std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
    double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return weight * a.dot(b); }
    Eigen::VectorXd apply(const Eigen::VectorXd& a) const { return matrix * a; }
    double form(const Eigen::VectorXd& a) const { return inner(matrix * a, a); }

    /// Coordinates of a real function on R^N (sampling, or L^2 projection).
    Eigen::VectorXd coordinates(const std::function<double(const Vec&)>& f) const;
};

SymOperator build_L(Branch which, int dim, Basis basis, const OperatorGridSpec& spec = {});

/// Fourier-collocation second-derivative matrix on a periodic grid of the given extent.
Eigen::MatrixXd spectral_second_derivative(int points, double extent);

struct SpectrumReport {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // columns, L^2-normalized
    Eigen::VectorXd residuals;     // ||A phi - lambda phi||_{L^2}
};

SpectrumReport spectrum(const SymOperator& A, int k);

/// <S''(R) w, w> = <L+ u, u> + <L- v, v>, w = u + i v in operator coordinates.
double s2_form(const SymOperator& lplus, const SymOperator& lminus, const Eigen::VectorXd& u,
               const Eigen::VectorXd& v);

enum class CoercivityTarget { full, Lminus, Lplus };

struct CoercivityReport {
    double delta_L2;
    double delta_sigma;
};

/// Orthonormal (in the operator inner product) basis of the complement of `constraints`.
Eigen::MatrixXd complement_basis(const Eigen::MatrixXd& constraints);

/// Minimal Rayleigh quotients of the constrained operator (P A P on the
/// complement of the orthogonality constraints) against L^2 and Sigma.
CoercivityReport coercivity(CoercivityTarget target, int dim, Basis basis, const OperatorGridSpec& spec = {});

/// Constraint vectors R and dR/dx_j in the operator's coordinates.
Eigen::MatrixXd constraint_vectors(const SymOperator& A, bool include_derivatives);

} // namespace lognls
