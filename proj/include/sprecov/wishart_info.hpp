#pragma once

#include "sprecov/numerics.hpp"
#include "sprecov/random_stream.hpp"

#include <cstdint>
#include <string>

namespace sprecov {

/// Which expression produced the Wishart expected log-determinant "a".
/// harmonic and binomial follow the complex-Wishart convention; real_exact
/// is the exact real-Gaussian expectation used as the validating oracle.
enum class WishartVariant {
    harmonic,
    binomial,
    asymptotic_product,
    real_exact,
    monte_carlo,
};

std::string to_string(WishartVariant v);

/// a = -n*gamma + sum_{j=1..n} sum_{l=1..p'-j} 1/l  (harmonic-sum form,
/// equal to sum_j psi(p'-j+1)). Requires 1 <= n <= p'-1.
double wishart_logdet_harmonic(int p_prime, int n);

/// a = ln C(p'-1, n-1) + ln Gamma(n). Requires 1 <= n <= p'-1.
double wishart_logdet_binomial(int p_prime, int n);

/// a = sum_{j=1..n} ln(p'-j), the asymptotic product form; differs from
/// the binomial form by exactly ln(p'-n).
double wishart_logdet_asymptotic_product(int p_prime, int n);

/// Exact E ln det(X X^T) for X n-by-p' real standard Gaussian:
/// sum_{j=1..n} [psi((p'-j+1)/2) + ln 2]. Requires 1 <= n <= p'.
double wishart_logdet_real(int p_prime, int n);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int trials = 0;
};

/// Monte Carlo E ln det(X X^T) over per-trial streams
/// (master_seed, stream_id = trial index). Requires trials >= 100.
McEstimate mc_wishart_logdet(int p_prime, int n, int trials, std::uint64_t master_seed);

struct MutualInformationForms {
    double observation_form = 0.0;  // (1/2) ln det(I_n + X R X^T)
    double signal_form = 0.0;       // (1/2) ln det(I_p' + X^T X R)
};

/// Both determinant routes; they agree identically in exact arithmetic.
MutualInformationForms mutual_information_forms(const Eigen::Ref<const Matrix>& x,
                                                const Eigen::Ref<const Matrix>& r);

/// Exact mutual information (1/2) ln det(I_n + X R X^T); evaluates both
/// determinant routes and throws if they disagree beyond 1e-8 relative.
double exact_mutual_information(const Eigen::Ref<const Matrix>& x,
                                const Eigen::Ref<const Matrix>& r);

struct InfoRateBound {
    double a = 0.0;  // expected log eigenvalue-product, Wishart factor (nats)
    double b = 0.0;  // log eigenvalue-product bound, autocorrelation factor (nats)
    int n = 0;
    double value = 0.0;  // L = (n/2) ln(1 + exp((a+b)/n)), always >= 0
    WishartVariant variant = WishartVariant::real_exact;
};

/// Jensen + Minkowski information-rate lower bound
/// L = (n/2) ln(1 + exp((a+b)/n)).
InfoRateBound jensen_minkowski_bound(double a, double b, int n,
                                     WishartVariant variant = WishartVariant::real_exact);

}  // namespace sprecov
