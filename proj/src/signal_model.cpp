#include "sprecov/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace sprecov {

void ReducedProblem::validate() const {
    if (!(1 <= m && m <= k && k <= p)) {
        throw std::invalid_argument("ReducedProblem: requires 1 <= m <= k <= p");
    }
    if (n < 1) {
        throw std::invalid_argument("ReducedProblem: requires n >= 1");
    }
}

void SignalModel::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("SignalModel: requires lambda >= 0");
    }
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw std::invalid_argument("SignalModel: requires xi in [0, 1]");
    }
}

double autocorrelation(const ReducedProblem& rp, const SignalModel& sm, int tau) {
    const int pp = rp.p_prime();
    const double q = rp.q();
    const int lag = std::abs(tau);
    if (lag == 0) return q * sm.lambda_sq();
    if (lag >= pp) return 0.0;
    const double triangle = static_cast<double>(pp - lag) / pp;
    return triangle * q * q * sm.lambda_sq() * sm.sign_factor();
}

Matrix toeplitz_autocorrelation(const ReducedProblem& rp, const SignalModel& sm) {
    const int pp = rp.p_prime();
    if (pp > kMaxDenseDim) {
        throw std::invalid_argument("toeplitz_autocorrelation: dimension cap 512 exceeded");
    }
    Vector first_row(pp);
    for (int tau = 0; tau < pp; ++tau) first_row[tau] = autocorrelation(rp, sm, tau);
    Matrix r(pp, pp);
    for (int i = 0; i < pp; ++i)
        for (int j = 0; j < pp; ++j) r(i, j) = first_row[std::abs(i - j)];
    return r;
}

namespace {

double dtft_at(const ReducedProblem& rp, const SignalModel& sm, double omega) {
    const int pp = rp.p_prime();
    double s = autocorrelation(rp, sm, 0);
    for (int tau = 1; tau < pp; ++tau) {
        s += 2.0 * autocorrelation(rp, sm, tau) * std::cos(omega * tau);
    }
    return s;
}

}  // namespace

Vector spectrum_kernel_zeros(int p_prime) {
    if (p_prime < 2) return Vector(0);
    Vector zeros(p_prime - 1);
    for (int j = 1; j < p_prime; ++j) {
        zeros[j - 1] = 2.0 * std::numbers::pi * j / p_prime;
    }
    return zeros;
}

SpectrumSummary power_spectrum_dtft(const ReducedProblem& rp, const SignalModel& sm,
                                    const Eigen::Ref<const Vector>& omega_grid) {
    SpectrumSummary out;
    out.omega_grid = omega_grid;
    out.values.resize(omega_grid.size());
    double g_inf = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < omega_grid.size(); ++i) {
        // The exact sum can dip a hair below zero at the kernel zeros when
        // the analytic infimum is 0; clamp roundoff only.
        const double raw = dtft_at(rp, sm, omega_grid[i]);
        out.values[i] = std::max(raw, 0.0);
        g_inf = std::min(g_inf, out.values[i]);
    }
    const Vector zeros = spectrum_kernel_zeros(rp.p_prime());
    for (Eigen::Index i = 0; i < zeros.size(); ++i) {
        g_inf = std::min(g_inf, std::max(dtft_at(rp, sm, zeros[i]), 0.0));
    }
    out.g_inf = g_inf;
    if ((out.values.array() > 0.0).all()) {
        out.g_log = integrate_periodic(out.values.array().log().matrix());
    } else {
        out.g_log = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

SpectrumSummary power_spectrum_dtft(const ReducedProblem& rp, const SignalModel& sm,
                                    int min_grid_size) {
    const int pp = rp.p_prime();
    const int blocks = (min_grid_size + pp - 1) / pp;
    const Eigen::Index n = static_cast<Eigen::Index>(blocks) * pp;
    Vector grid(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        grid[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    }
    return power_spectrum_dtft(rp, sm, grid);
}

double power_spectrum_dirichlet(const ReducedProblem& rp, const SignalModel& sm,
                                double omega) {
    const int pp = rp.p_prime();
    const double q = rp.q();
    const double c = q * q * sm.lambda_sq() * sm.sign_factor();
    const double denom = std::sin(omega / 2.0);
    double kernel;
    if (std::abs(denom) < 1e-9) {
        const double order = 2.0 * pp + 1.0;
        kernel = order * order;
    } else {
        const double ratio = std::sin(omega * (pp + 0.5)) / denom;
        kernel = ratio * ratio;
    }
    return kernel * c + q * sm.lambda_sq() - c;
}

double sigma_min_bound(const ReducedProblem& rp, const SignalModel& sm) {
    const double q = rp.q();
    return (q - q * q * sm.sign_factor()) * sm.lambda_sq();
}

double sigma_min_bound_unipolar(const ReducedProblem& rp, double lambda) {
    const double q = rp.q();
    return (1.0 - q) * q * lambda * lambda;
}

SparseVector sample_sparse_vector(const ReducedProblem& rp, const SignalModel& sm,
                                  RandomStream& rs) {
    const int pp = rp.p_prime();
    const int m = rp.m;
    std::vector<int> indices(pp);
    std::iota(indices.begin(), indices.end(), 0);
    // Partial Fisher-Yates: the first m entries are a uniform m-subset.
    for (int i = 0; i < m; ++i) {
        const int j = i + static_cast<int>(rs.uniform_below(pp - i));
        std::swap(indices[i], indices[j]);
    }
    SparseVector sv;
    sv.support.assign(indices.begin(), indices.begin() + m);
    std::sort(sv.support.begin(), sv.support.end());
    sv.values = Vector::Zero(pp);
    for (int idx : sv.support) {
        sv.values[idx] = (rs.uniform01() < sm.xi) ? -sm.lambda : sm.lambda;
    }
    return sv;
}

}  // namespace sprecov
