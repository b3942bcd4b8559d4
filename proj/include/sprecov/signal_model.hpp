#pragma once

#include "sprecov/numerics.hpp"
#include "sprecov/random_stream.hpp"

#include <vector>

namespace sprecov {

/// Reduced support-detection game: of the k nonzero locations, k - m are
/// revealed, so the decoder chooses among C(p - k + m, m) candidate
/// supports over the reduced dimension p' = p - k + m.
struct ReducedProblem {
    int p = 0;  // ambient dimension
    int k = 0;  // sparsity level
    int m = 0;  // unknown nonzero locations, 1 <= m <= k
    int n = 0;  // measurement count

    int p_prime() const { return p - k + m; }
    double q() const { return static_cast<double>(m) / p_prime(); }

    void validate() const;
};

/// Worst-case sparse source: every nonzero has magnitude lambda and is
/// negative with probability xi, independently across positions.
/// lambda = 0 is admitted for degenerate (pure-noise) experiments.
struct SignalModel {
    double lambda = 1.0;
    double xi = 0.0;

    double lambda_sq() const { return lambda * lambda; }
    /// (1 - 2 xi)^2 = 4 xi^2 - 4 xi + 1, the sign-correlation factor.
    double sign_factor() const { return (1.0 - 2.0 * xi) * (1.0 - 2.0 * xi); }
    /// Full-problem SNR = k lambda^2 (unit noise variance).
    double snr(const ReducedProblem& rp) const { return rp.k * lambda_sq(); }

    void validate() const;
};

struct SparseVector {
    Vector values;             // length p'
    std::vector<int> support;  // ascending, |support| = m
};

/// Tabulated power spectrum on a uniform grid over [0, 2pi).
struct SpectrumSummary {
    Vector omega_grid;
    Vector values;   // S(omega) >= 0
    double g_inf = 0.0;   // infimum over grid plus kernel-zero refinement
    double g_log = 0.0;   // Szego log-average (1/2pi) int ln S; NaN if any S <= 0
};

/// Autocorrelation of the reduced sparse source at integer lag tau:
/// r(0) = q lambda^2, r(tau) = ((p'-|tau|)/p') q^2 lambda^2 (1-2xi)^2 for
/// 0 < |tau| < p', and 0 beyond.
double autocorrelation(const ReducedProblem& rp, const SignalModel& sm, int tau);

/// Symmetric Toeplitz matrix with first row r(0..p'-1).
Matrix toeplitz_autocorrelation(const ReducedProblem& rp, const SignalModel& sm);

/// Exact finite Fourier sum S(w) = sum_tau r(tau) cos(w tau) on the given
/// grid; g_inf additionally refines at the analytic minimizers 2pi j / p'.
SpectrumSummary power_spectrum_dtft(const ReducedProblem& rp, const SignalModel& sm,
                                    const Eigen::Ref<const Vector>& omega_grid);

/// Default grid: uniform with size a multiple of p' and >= min_grid_size,
/// so the kernel zeros land exactly on grid points.
SpectrumSummary power_spectrum_dtft(const ReducedProblem& rp, const SignalModel& sm,
                                    int min_grid_size = 4096);

/// Closed form built on the squared Dirichlet-type kernel
/// [sin(w(p'+1/2))/sin(w/2)]^2; kept for discrepancy reporting against
/// the exact sum, which differs off the kernel zeros by roughly a factor
/// of p' (the closed form drops the 1/p' Fejer normalization).
double power_spectrum_dirichlet(const ReducedProblem& rp, const SignalModel& sm,
                                double omega);

/// Spectrum infimum in closed form: [q - q^2 (1-2xi)^2] lambda^2.
double sigma_min_bound(const ReducedProblem& rp, const SignalModel& sm);

/// Worst case over signs (xi in {0,1}): (1 - q) q lambda^2.
double sigma_min_bound_unipolar(const ReducedProblem& rp, double lambda);

/// Support uniform over all C(p', m) subsets; each nonzero is -lambda with
/// probability xi, +lambda otherwise.
SparseVector sample_sparse_vector(const ReducedProblem& rp, const SignalModel& sm,
                                  RandomStream& rs);

/// The analytic minimizers 2pi j / p', j = 1..p'-1 (empty for p' = 1).
Vector spectrum_kernel_zeros(int p_prime);

}  // namespace sprecov
