#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace sprecov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024310;
inline constexpr double kLn2 = 0.6931471805599453094172321214581765681;

// Dense kernels only; everything here assumes desk-scale problems.
inline constexpr Eigen::Index kMaxDenseDim = 512;

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// ln C(a, b) for 0 <= b <= a, computed in log space.
double log_binomial(std::int64_t a, std::int64_t b);

/// Eigenvalues of a symmetric matrix, sorted ascending.
/// Rejects matrices that are not symmetric within 1e-10 relative.
Vector symmetric_eigenvalues(const Eigen::Ref<const Matrix>& m);

/// ln det of a symmetric positive-definite matrix via Cholesky.
/// Throws std::domain_error if a pivot falls below 1e-12 * max|M|.
double spd_log_det(const Eigen::Ref<const Matrix>& m);

struct LeastSquaresResult {
    Vector coefficients;   // minimum-norm solution when rank-deficient
    double residual_sq;    // min over nu of |y - A nu|^2
};

/// Least squares via complete orthogonal decomposition
/// (rank threshold 1e-10 relative).
LeastSquaresResult least_squares(const Eigen::Ref<const Matrix>& a,
                                 const Eigen::Ref<const Vector>& y);

/// (1/2pi) * integral over [0, 2pi) of a function tabulated on the
/// uniform grid omega_j = 2pi j / N. Exact for trigonometric
/// polynomials of degree < N/2.
double integrate_periodic(const Eigen::Ref<const Vector>& values);

/// Same, with the grid supplied explicitly; rejects non-uniform grids.
double integrate_periodic(const Eigen::Ref<const Vector>& omega_grid,
                          const Eigen::Ref<const Vector>& values);

}  // namespace sprecov
