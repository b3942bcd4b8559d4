#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sprecov/signal_model.hpp"
#include "sprecov/wishart_info.hpp"

#include <cmath>

using namespace sprecov;

TEST_CASE("wishart_logdet_harmonic: digamma reference values") {
    // single term: psi(p')
    CHECK(wishart_logdet_harmonic(5, 1) ==
          doctest::Approx(1.5061176684318004727268212432509309023).epsilon(1e-13));
    CHECK(wishart_logdet_harmonic(2, 1) ==
          doctest::Approx(1.0 - kEulerGamma).epsilon(1e-13));
    // psi(8) + psi(7) + psi(6)
    CHECK(wishart_logdet_harmonic(8, 3) ==
          doctest::Approx(5.5945434814858776086566542059432688974).epsilon(1e-13));
    CHECK_THROWS_AS(wishart_logdet_harmonic(5, 5), std::domain_error);
    CHECK_THROWS_AS(wishart_logdet_harmonic(5, 0), std::domain_error);
}

TEST_CASE("harmonic form equals a digamma sum on a grid") {
    for (int pp = 3; pp <= 64; pp += 3) {
        for (int n = 2; n < pp; n += std::max(1, pp / 6)) {
            double psi_sum = 0.0;
            for (int j = 1; j <= n; ++j) psi_sum += digamma(pp - j + 1);
            CHECK(std::abs(wishart_logdet_harmonic(pp, n) - psi_sum) <= 1e-10);
        }
    }
}

TEST_CASE("wishart_logdet_binomial and the asymptotic product") {
    // p'=5, n=1: ln C(4,0) + ln Gamma(1) = 0; product = ln 4
    CHECK(wishart_logdet_binomial(5, 1) == doctest::Approx(0.0));
    CHECK(wishart_logdet_asymptotic_product(5, 1) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-13));
    // p'=10, n=4: ln(9*8*7*6) = ln 3024
    CHECK(wishart_logdet_asymptotic_product(10, 4) ==
          doctest::Approx(std::log(3024.0)).epsilon(1e-13));
    // the two lines differ by exactly ln(p'-n)
    for (int pp = 2; pp <= 96; ++pp) {
        for (int n = 1; n < pp; n += std::max(1, pp / 9)) {
            const double diff = wishart_logdet_asymptotic_product(pp, n) -
                                wishart_logdet_binomial(pp, n);
            CHECK(std::abs(diff - std::log(static_cast<double>(pp - n))) <= 1e-10);
        }
    }
}

TEST_CASE("wishart_logdet_real: reference values") {
    // psi(5/2) + ln 2
    CHECK(wishart_logdet_real(5, 1) ==
          doctest::Approx(1.3963038212051884966429224551260876675).epsilon(1e-13));
    // psi(1) + ln 2 = ln 2 - gamma
    CHECK(wishart_logdet_real(2, 1) ==
          doctest::Approx(0.1159315156584124488107200313757741370).epsilon(1e-13));
    // n = p' is inside the real-Wishart domain
    CHECK_NOTHROW(wishart_logdet_real(4, 4));
    CHECK_THROWS_AS(wishart_logdet_real(4, 5), std::domain_error);
}

TEST_CASE("mc_wishart_logdet: scalar chi-square case") {
    // p'=1, n=1: E ln chi^2_1 = psi(1/2) + ln 2 = -gamma - 2 ln 2 + ln 2
    const McEstimate mc = mc_wishart_logdet(1, 1, 20000, 7);
    const double exact = -kEulerGamma - kLn2;
    CHECK(std::abs(mc.mean - exact) <= 3.0 * mc.std_error);
    CHECK(mc.std_error > 0.0);
    CHECK(mc.std_error < 0.05);
}

TEST_CASE("mc_wishart_logdet: deterministic given seeds") {
    const McEstimate a = mc_wishart_logdet(8, 3, 500, 99);
    const McEstimate b = mc_wishart_logdet(8, 3, 500, 99);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const McEstimate c = mc_wishart_logdet(8, 3, 500, 100);
    CHECK(a.mean != c.mean);
}

TEST_CASE("mc_wishart_logdet agrees with the real-Wishart oracle") {
    const McEstimate mc = mc_wishart_logdet(16, 4, 10000, 2024);
    CHECK(std::abs(mc.mean - wishart_logdet_real(16, 4)) <= 3.0 * mc.std_error);
    CHECK_THROWS_AS(mc_wishart_logdet(8, 3, 50, 1), std::domain_error);
    CHECK_THROWS_AS(mc_wishart_logdet(4, 5, 1000, 1), std::domain_error);
}

TEST_CASE("exact_mutual_information: closed forms") {
    RandomStream rs(5, 0);
    const Matrix x = gaussian_matrix(3, 6, rs);
    CHECK(exact_mutual_information(x, Matrix::Zero(6, 6)) == doctest::Approx(0.0));

    // n=1, X = e_i^T, R diagonal: (1/2) ln(1 + r_ii)
    Matrix e(1, 6);
    e.setZero();
    e(0, 2) = 1.0;
    Matrix r = Matrix::Zero(6, 6);
    r(2, 2) = 3.0;
    CHECK(exact_mutual_information(e, r) ==
          doctest::Approx(0.5 * std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("determinant identity holds across random instances") {
    for (int i = 0; i < 25; ++i) {
        RandomStream rs(31, i);
        const int pp = 2 + static_cast<int>(rs.uniform_below(31));
        const int n = 1 + static_cast<int>(rs.uniform_below(pp));
        const int m = 1 + static_cast<int>(rs.uniform_below(pp));
        const ReducedProblem rp{pp, m, m, n};
        const SignalModel sm{1.0 + rs.uniform01(), 0.0};
        const Matrix x = gaussian_matrix(n, pp, rs);
        const Matrix r = toeplitz_autocorrelation(rp, sm);
        const MutualInformationForms forms = mutual_information_forms(x, r);
        const double rel = std::abs(forms.observation_form - forms.signal_form) /
                           std::max(std::abs(forms.observation_form), 1e-300);
        CHECK(rel <= 1e-8);
        CHECK(forms.observation_form >= 0.0);
    }
}

TEST_CASE("jensen_minkowski_bound: closed forms") {
    // a + b = 0: L = (n/2) ln 2
    CHECK(jensen_minkowski_bound(1.5, -1.5, 4).value ==
          doctest::Approx(2.0 * kLn2).epsilon(1e-13));
    // n=1, a = ln 4, b = ln(1/4): (1/2) ln 2
    CHECK(jensen_minkowski_bound(std::log(4.0), std::log(0.25), 1).value ==
          doctest::Approx(0.5 * kLn2).epsilon(1e-13));
    // large argument stays finite and linearized
    const InfoRateBound big = jensen_minkowski_bound(5000.0, 3000.0, 4);
    CHECK(std::isfinite(big.value));
    CHECK(big.value == doctest::Approx(0.5 * 4 * (8000.0 / 4)).epsilon(1e-12));
    CHECK(jensen_minkowski_bound(-100.0, -300.0, 2).value >= 0.0);
    CHECK_THROWS_AS(jensen_minkowski_bound(0.0, 0.0, 0), std::domain_error);
}

TEST_CASE("Monte Carlo MI dominates the Jensen-Minkowski bound") {
    const int pp = 16, n = 4, m = 4;
    const ReducedProblem rp{pp, m, m, n};
    const SignalModel sm{2.0, 0.0};
    const Matrix r = toeplitz_autocorrelation(rp, sm);
    const double sigma_min = symmetric_eigenvalues(r)[0];
    const InfoRateBound bound = jensen_minkowski_bound(
        wishart_logdet_real(pp, n), n * std::log(sigma_min), n);
    double mean = 0.0, m2 = 0.0;
    const int draws = 1000;
    for (int t = 0; t < draws; ++t) {
        RandomStream rs(77, t);
        const double mi = exact_mutual_information(gaussian_matrix(n, pp, rs), r);
        const double delta = mi - mean;
        mean += delta / (t + 1);
        m2 += delta * (mi - mean);
    }
    const double se = std::sqrt(m2 / (draws - 1.0) / draws);
    CHECK(mean >= bound.value - 3.0 * se);
}

TEST_CASE("variant labels serialize") {
    CHECK(to_string(WishartVariant::harmonic) == "harmonic");
    CHECK(to_string(WishartVariant::real_exact) == "real_exact");
}
