#include "sprecov/recovery_sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace sprecov {

std::string to_string(ErrorMetric metric) {
    return metric == ErrorMetric::exact_support ? "exact_support" : "top_k";
}

EnumerationCapExceeded::EnumerationCapExceeded(std::uint64_t required, std::uint64_t cap)
    : std::runtime_error("exhaustive_ml_decode: " + std::to_string(required) +
                         " candidate supports exceed the cap of " + std::to_string(cap) +
                         "; rerun with enumeration cap >= " + std::to_string(required)),
      required_(required) {}

namespace {

// Exact C(a, b), saturating at UINT64_MAX.
std::uint64_t binomial_count_saturating(int a, int b) {
    if (b > a - b) b = a - b;
    if (log_binomial(a, b) >= 62.0 * kLn2) return UINT64_MAX;
    unsigned __int128 count = 1;
    for (int i = 1; i <= b; ++i) {
        count = count * static_cast<unsigned>(a - b + i) / static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(count);
}

}  // namespace

void ExperimentConfig::validate() const {
    reduced().validate();
    signal().validate();
    if (!(noise_std > 0.0)) {
        throw std::invalid_argument("ExperimentConfig: requires noise_std > 0");
    }
    if (trials < 1) {
        throw std::invalid_argument("ExperimentConfig: requires trials >= 1");
    }
    if (tail_magnitude < 0.0) {
        throw std::invalid_argument("ExperimentConfig: requires tail_magnitude >= 0");
    }
    const std::uint64_t count = binomial_count_saturating(p_prime(), m);
    if (count > enumeration_cap) {
        throw EnumerationCapExceeded(count, enumeration_cap);
    }
}

std::uint64_t ExperimentConfig::hash() const {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "p=%d;k=%d;m=%d;n=%d;lambda=%.17g;xi=%.17g;noise=%.17g;tail=%.17g;"
                  "trials=%d;seed=%llu;metric=%s;cap=%llu",
                  p, k, m, n, lambda, xi, noise_std, tail_magnitude, trials,
                  static_cast<unsigned long long>(master_seed),
                  to_string(metric).c_str(),
                  static_cast<unsigned long long>(enumeration_cap));
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (const char* c = buf; *c; ++c) {
        h ^= static_cast<unsigned char>(*c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

Instance generate_instance(const ExperimentConfig& cfg, RandomStream& rs) {
    const int pp = cfg.p_prime();
    Instance inst;
    inst.x = gaussian_matrix(cfg.n, pp, rs);
    inst.beta = sample_sparse_vector(cfg.reduced(), cfg.signal(), rs);
    if (cfg.tail_magnitude > 0.0) {
        std::vector<bool> on_support(pp, false);
        for (int idx : inst.beta.support) on_support[idx] = true;
        for (int i = 0; i < pp; ++i) {
            if (!on_support[i]) {
                inst.beta.values[i] = (2.0 * rs.uniform01() - 1.0) * cfg.tail_magnitude;
            }
        }
    }
    inst.y = inst.x * inst.beta.values + cfg.noise_std * gaussian_vector(cfg.n, rs);
    return inst;
}

std::vector<int> exhaustive_ml_decode(const Eigen::Ref<const Matrix>& x,
                                      const Eigen::Ref<const Vector>& y, int m,
                                      int k_effective, std::uint64_t enumeration_cap) {
    const int total_cols = static_cast<int>(x.cols());
    const int known = k_effective - m;
    if (m < 1 || known < 0 || known >= total_cols) {
        throw std::invalid_argument("exhaustive_ml_decode: bad m / k_effective");
    }
    const int candidates = total_cols - known;
    if (m > candidates) {
        throw std::invalid_argument("exhaustive_ml_decode: m exceeds candidate columns");
    }
    const std::uint64_t count = binomial_count_saturating(candidates, m);
    if (count > enumeration_cap) {
        throw EnumerationCapExceeded(count, enumeration_cap);
    }

    Matrix design(x.rows(), k_effective);
    design.rightCols(known) = x.rightCols(known);

    std::vector<int> comb(m);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<int> best;
    double best_residual = std::numeric_limits<double>::infinity();
    while (true) {
        for (int i = 0; i < m; ++i) design.col(i) = x.col(comb[i]);
        const double residual = least_squares(design, y).residual_sq;
        if (residual < best_residual - 1e-12) {
            best_residual = residual;
            best = comb;
        }
        // next lexicographic combination
        int i = m - 1;
        while (i >= 0 && comb[i] == candidates - m + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
    }
    return best;
}

WilsonInterval wilson_interval(int failures, int trials) {
    constexpr double z = 1.959963984540054;  // 95%
    const double n = trials;
    const double p_hat = failures / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval w;
    // The score interval contains p_hat analytically; clamp roundoff so the
    // reported invariant 0 <= low <= p_hat <= high <= 1 holds exactly.
    w.low = std::min(std::max(0.0, center - half), p_hat);
    w.high = std::max(std::min(1.0, center + half), p_hat);
    return w;
}

SimReport estimate_perr(const ExperimentConfig& cfg, std::vector<TrialOutcome>* outcomes) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();
    int failures = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        RandomStream rs(cfg.master_seed, static_cast<std::uint64_t>(t));
        const Instance inst = generate_instance(cfg, rs);
        const std::vector<int> decoded =
            exhaustive_ml_decode(inst.x, inst.y, cfg.m, cfg.m, cfg.enumeration_cap);
        bool success;
        if (cfg.metric == ErrorMetric::exact_support) {
            success = decoded == inst.beta.support;
        } else {
            success = top_k_match(decoded, inst.beta.values, cfg.m);
        }
        if (!success) ++failures;
        if (outcomes) {
            outcomes->push_back(TrialOutcome{t, inst.beta.support, decoded, success});
        }
    }
    SimReport report;
    report.config_hash = cfg.hash();
    report.master_seed = cfg.master_seed;
    report.trials = cfg.trials;
    report.failures = failures;
    report.p_err_hat = static_cast<double>(failures) / cfg.trials;
    const WilsonInterval ci = wilson_interval(failures, cfg.trials);
    report.ci_low = ci.low;
    report.ci_high = ci.high;
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

bool top_k_match(const std::vector<int>& decoded, const Eigen::Ref<const Vector>& beta,
                 int kk) {
    if (static_cast<Eigen::Index>(kk) > beta.size()) {
        throw std::invalid_argument("top_k_match: k exceeds vector length");
    }
    std::vector<int> order(beta.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&beta](int a, int b) {
        const double ma = std::abs(beta[a]);
        const double mb = std::abs(beta[b]);
        if (ma != mb) return ma > mb;
        return a < b;  // magnitude ties toward the lower index
    });
    std::vector<int> top(order.begin(), order.begin() + kk);
    std::sort(top.begin(), top.end());
    return decoded == top;
}

SweepResult sweep_n(const ExperimentConfig& base, const std::vector<int>& n_values,
                    double epsilon) {
    if (!std::is_sorted(n_values.begin(), n_values.end())) {
        throw std::invalid_argument("sweep_n: n_range must be ascending");
    }
    SweepResult out;
    for (int n : n_values) {
        ExperimentConfig cfg = base;
        cfg.n = n;
        SweepPoint point;
        point.n = n;
        point.report = estimate_perr(cfg);
        if (!out.n_star && point.report.ci_high <= epsilon) out.n_star = n;
        out.curve.push_back(point);
    }
    return out;
}

}  // namespace sprecov
