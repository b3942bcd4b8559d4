#include "sprecov/wishart_info.hpp"

#include <cmath>

namespace sprecov {

std::string to_string(WishartVariant v) {
    switch (v) {
        case WishartVariant::harmonic: return "harmonic";
        case WishartVariant::binomial: return "binomial";
        case WishartVariant::asymptotic_product: return "asymptotic_product";
        case WishartVariant::real_exact: return "real_exact";
        case WishartVariant::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

namespace {

void check_domain(int p_prime, int n, int n_max, const char* who) {
    if (n < 1 || n > n_max) {
        throw std::domain_error(std::string(who) + ": n outside [1, " +
                                std::to_string(n_max) + "] for p' = " +
                                std::to_string(p_prime));
    }
}

}  // namespace

double wishart_logdet_harmonic(int p_prime, int n) {
    check_domain(p_prime, n, p_prime - 1, "wishart_logdet_harmonic");
    // Running harmonic sum H_d, consumed for d = p'-1 down to p'-n.
    double h = 0.0;
    for (int l = 1; l <= p_prime - 1; ++l) h += 1.0 / l;
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        total += h;                      // H_{p'-j}
        h -= 1.0 / (p_prime - j);        // prepare H_{p'-j-1}
    }
    return -static_cast<double>(n) * kEulerGamma + total;
}

double wishart_logdet_binomial(int p_prime, int n) {
    check_domain(p_prime, n, p_prime - 1, "wishart_logdet_binomial");
    return log_binomial(p_prime - 1, n - 1) + log_gamma(n);
}

double wishart_logdet_asymptotic_product(int p_prime, int n) {
    check_domain(p_prime, n, p_prime - 1, "wishart_logdet_asymptotic_product");
    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += std::log(static_cast<double>(p_prime - j));
    return total;
}

double wishart_logdet_real(int p_prime, int n) {
    check_domain(p_prime, n, p_prime, "wishart_logdet_real");
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        total += digamma(0.5 * (p_prime - j + 1)) + kLn2;
    }
    return total;
}

McEstimate mc_wishart_logdet(int p_prime, int n, int trials, std::uint64_t master_seed) {
    if (n < 1 || n > p_prime) {
        throw std::domain_error("mc_wishart_logdet: requires 1 <= n <= p'");
    }
    if (trials < 100) {
        throw std::domain_error("mc_wishart_logdet: requires trials >= 100");
    }
    double mean = 0.0;
    double m2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        RandomStream rs(master_seed, static_cast<std::uint64_t>(t));
        const Matrix x = gaussian_matrix(n, p_prime, rs);
        Matrix gram = x * x.transpose();
        double ld;
        try {
            ld = spd_log_det(gram);
        } catch (const std::domain_error&) {
            // Singular draw has probability zero; jitter and retry once.
            gram.diagonal().array() += 1e-12;
            ld = spd_log_det(gram);
        }
        const double delta = ld - mean;
        mean += delta / (t + 1);
        m2 += delta * (ld - mean);
    }
    McEstimate out;
    out.mean = mean;
    out.std_error = std::sqrt(m2 / (static_cast<double>(trials) - 1.0) / trials);
    out.trials = trials;
    return out;
}

MutualInformationForms mutual_information_forms(const Eigen::Ref<const Matrix>& x,
                                                const Eigen::Ref<const Matrix>& r) {
    const Eigen::Index n = x.rows();
    const Eigen::Index pp = x.cols();
    if (r.rows() != pp || r.cols() != pp) {
        throw std::invalid_argument("mutual_information_forms: dimension mismatch");
    }
    MutualInformationForms out;

    Matrix obs = Matrix::Identity(n, n) + x * r * x.transpose();
    obs = 0.5 * (obs + obs.transpose().eval());  // scrub roundoff asymmetry
    out.observation_form = 0.5 * spd_log_det(obs);

    // The p'-dimensional route is not symmetric; use an LU determinant.
    const Matrix sig = Matrix::Identity(pp, pp) + x.transpose() * x * r;
    Eigen::PartialPivLU<Matrix> lu(sig);
    double log_abs = 0.0;
    double sign = static_cast<double>(lu.permutationP().determinant());
    for (Eigen::Index i = 0; i < pp; ++i) {
        const double d = lu.matrixLU()(i, i);
        log_abs += std::log(std::abs(d));
        if (d < 0) sign = -sign;
    }
    if (sign <= 0) {
        throw std::runtime_error("mutual_information_forms: non-positive determinant");
    }
    out.signal_form = 0.5 * log_abs;
    return out;
}

double exact_mutual_information(const Eigen::Ref<const Matrix>& x,
                                const Eigen::Ref<const Matrix>& r) {
    const MutualInformationForms forms = mutual_information_forms(x, r);
    const double tol = 1e-8 * std::max(1.0, std::abs(forms.observation_form));
    if (std::abs(forms.observation_form - forms.signal_form) > tol) {
        throw std::runtime_error(
            "exact_mutual_information: determinant identity violated beyond tolerance");
    }
    return forms.observation_form;
}

InfoRateBound jensen_minkowski_bound(double a, double b, int n, WishartVariant variant) {
    if (n < 1) {
        throw std::domain_error("jensen_minkowski_bound: requires n >= 1");
    }
    InfoRateBound out;
    out.a = a;
    out.b = b;
    out.n = n;
    out.variant = variant;
    const double t = (a + b) / n;
    // softplus(t) = ln(1 + e^t), overflow-safe
    const double softplus = t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
    out.value = 0.5 * n * softplus;
    return out;
}

}  // namespace sprecov
