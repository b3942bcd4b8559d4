#include "sprecov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sprecov {

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: requires x > 0");
    }
    return std::lgamma(x);
}

double digamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("digamma: requires x > 0");
    }
    // Recurrence up to x >= 10, then the Bernoulli asymptotic series.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n})
    double series = -1.0 / 12.0;
    double p = inv2;
    double tail = series * p;
    p *= inv2; tail += (1.0 / 120.0) * p;
    p *= inv2; tail += (-1.0 / 252.0) * p;
    p *= inv2; tail += (1.0 / 240.0) * p;
    p *= inv2; tail += (-1.0 / 132.0) * p;
    p *= inv2; tail += (691.0 / 32760.0) * p;
    p *= inv2; tail += (-1.0 / 12.0) * p;
    return acc + std::log(x) - 0.5 * inv + tail;
}

double log_binomial(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0 || b > a) {
        throw std::domain_error("log_binomial: requires 0 <= b <= a");
    }
    if (b == 0 || b == a) return 0.0;
    // Canonical argument order keeps C(a, b) == C(a, a-b) bit-exact.
    const std::int64_t lo = std::min(b, a - b);
    return std::lgamma(static_cast<double>(a) + 1.0) -
           std::lgamma(static_cast<double>(lo) + 1.0) -
           std::lgamma(static_cast<double>(a - lo) + 1.0);
}

namespace {

void check_square_symmetric(const Eigen::Ref<const Matrix>& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
    if (m.rows() > kMaxDenseDim) {
        throw std::invalid_argument(std::string(who) + ": dimension cap 512 exceeded");
    }
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
    }
}

}  // namespace

Vector symmetric_eigenvalues(const Eigen::Ref<const Matrix>& m) {
    check_square_symmetric(m, "symmetric_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric_eigenvalues: eigensolver failed");
    }
    return solver.eigenvalues();  // ascending
}

double spd_log_det(const Eigen::Ref<const Matrix>& m) {
    check_square_symmetric(m, "spd_log_det");
    const Eigen::Index n = m.rows();
    const double tol = 1e-12 * std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    Matrix l = m;
    double log_det = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = l(j, j);
        for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= tol) {
            throw std::domain_error("spd_log_det: matrix not positive definite");
        }
        const double root = std::sqrt(d);
        l(j, j) = root;
        log_det += 2.0 * std::log(root);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = l(i, j);
            for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / root;
        }
    }
    return log_det;
}

LeastSquaresResult least_squares(const Eigen::Ref<const Matrix>& a,
                                 const Eigen::Ref<const Vector>& y) {
    if (a.rows() != y.size()) {
        throw std::invalid_argument("least_squares: dimension mismatch");
    }
    if (a.rows() < 1 || a.cols() < 1) {
        throw std::invalid_argument("least_squares: empty system");
    }
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a.rows(), a.cols());
    cod.setThreshold(1e-10);
    cod.compute(a);
    LeastSquaresResult out;
    out.coefficients = cod.solve(y);
    out.residual_sq = (y - a * out.coefficients).squaredNorm();
    return out;
}

double integrate_periodic(const Eigen::Ref<const Vector>& values) {
    if (values.size() < 16) {
        throw std::invalid_argument("integrate_periodic: need at least 16 grid points");
    }
    // Periodic trapezoid on a uniform grid collapses to the sample mean.
    return values.mean();
}

double integrate_periodic(const Eigen::Ref<const Vector>& omega_grid,
                          const Eigen::Ref<const Vector>& values) {
    if (omega_grid.size() != values.size()) {
        throw std::invalid_argument("integrate_periodic: grid/value size mismatch");
    }
    const Eigen::Index n = omega_grid.size();
    if (n < 16) {
        throw std::invalid_argument("integrate_periodic: need at least 16 grid points");
    }
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(omega_grid[j] - step * static_cast<double>(j)) > 1e-9) {
            throw std::invalid_argument(
                "integrate_periodic: grid must be uniform on [0, 2pi)");
        }
    }
    return values.mean();
}

}  // namespace sprecov
