#pragma once

// Test-only oracles, deliberately independent of the library code paths
// they are used to check.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracles {

// Arbitrary-precision unsigned integer (base 2^32), just enough for exact
// binomial coefficients and their natural log.
class BigUint {
public:
    explicit BigUint(std::uint64_t value = 0) {
        while (value) {
            limbs_.push_back(static_cast<std::uint32_t>(value & 0xffffffffULL));
            value >>= 32;
        }
    }

    void multiply(std::uint32_t factor) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            const std::uint64_t product = static_cast<std::uint64_t>(limb) * factor + carry;
            limb = static_cast<std::uint32_t>(product & 0xffffffffULL);
            carry = product >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffULL));
            carry >>= 32;
        }
    }

    void divide_exact(std::uint32_t divisor) {
        std::uint64_t remainder = 0;
        for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
            const std::uint64_t value = (remainder << 32) | *it;
            *it = static_cast<std::uint32_t>(value / divisor);
            remainder = value % divisor;
        }
        if (remainder != 0) throw std::logic_error("divide_exact: nonzero remainder");
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    // Natural log via the top 96 bits plus the binary exponent.
    double log() const {
        if (limbs_.empty()) throw std::domain_error("log of zero");
        long double mantissa = 0.0L;
        const int top = static_cast<int>(limbs_.size()) - 1;
        for (int i = top; i >= 0 && i >= top - 2; --i) {
            mantissa = mantissa * 4294967296.0L + limbs_[i];
        }
        const int dropped = top >= 3 ? top - 2 : 0;
        return static_cast<double>(std::log(mantissa) + dropped * 32.0L * std::log(2.0L));
    }

private:
    std::vector<std::uint32_t> limbs_;
};

// Exact ln C(a, b) through big-integer arithmetic.
inline double exact_log_binomial(std::uint32_t a, std::uint32_t b) {
    if (b > a - b) b = a - b;
    BigUint acc(1);
    for (std::uint32_t i = 0; i < b; ++i) {
        acc.multiply(a - i);
        acc.divide_exact(i + 1);  // C(a, i+1) stays integral
    }
    return acc.log();
}

// Eigenvalues of a symmetric matrix by Sylvester-inertia bisection:
// the number of negative pivots of the LDL^T factorization of M - x I
// counts eigenvalues below x. No eigensolver involved.
inline int eigenvalues_below(const Eigen::MatrixXd& m, double x) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd a = m - x * Eigen::MatrixXd::Identity(n, n);
    int negative = 0;
    // Unpivoted Gaussian elimination; the pivot signs carry the inertia.
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j);
        if (d == 0.0) d = 1e-300;  // probe points are generic; keep going
        if (d < 0) ++negative;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double factor = a(i, j) / d;
            for (Eigen::Index c = j + 1; c < n; ++c) a(i, c) -= factor * a(j, c);
        }
    }
    return negative;
}

inline std::vector<double> bisection_eigenvalues(const Eigen::MatrixXd& m,
                                                 double tol = 1e-10) {
    const int n = static_cast<int>(m.rows());
    // Gershgorin bound
    double radius = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(m(i, j));
        radius = std::max(radius, row);
    }
    std::vector<double> eigenvalues(n);
    for (int idx = 0; idx < n; ++idx) {
        double lo = -radius - 1.0;
        double hi = radius + 1.0;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (eigenvalues_below(m, mid) <= idx) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        eigenvalues[idx] = 0.5 * (lo + hi);
    }
    return eigenvalues;
}

}  // namespace oracles
