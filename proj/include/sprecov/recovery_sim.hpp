#pragma once

#include "sprecov/signal_model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sprecov {

enum class ErrorMetric { exact_support, top_k };

std::string to_string(ErrorMetric metric);

/// Thrown when the exhaustive decoder would have to enumerate more than
/// the configured cap of candidate supports.
class EnumerationCapExceeded : public std::runtime_error {
public:
    EnumerationCapExceeded(std::uint64_t required, std::uint64_t cap);
    std::uint64_t required_cap() const { return required_; }

private:
    std::uint64_t required_;
};

struct ExperimentConfig {
    int p = 0;
    int k = 0;
    int m = 0;  // unknown-support size; m = k means no side information
    int n = 0;
    double lambda = 1.0;
    double xi = 0.0;
    double noise_std = 1.0;
    /// Off-support entries drawn uniform in (-tail, tail); 0 keeps the
    /// signal strictly sparse. Used with the top_k metric.
    double tail_magnitude = 0.0;
    int trials = 0;
    std::uint64_t master_seed = 0;
    ErrorMetric metric = ErrorMetric::exact_support;
    std::uint64_t enumeration_cap = 200000;

    int p_prime() const { return p - k + m; }
    ReducedProblem reduced() const { return ReducedProblem{p, k, m, n}; }
    SignalModel signal() const { return SignalModel{lambda, xi}; }

    void validate() const;

    /// FNV-1a over the canonical parameter string; identifies the run.
    std::uint64_t hash() const;
};

struct Instance {
    Matrix x;           // n x p', i.i.d. N(0,1)
    SparseVector beta;  // m nonzeros of +-lambda (plus optional tail)
    Vector y;           // X beta + noise
};

/// Draws one reduced-game instance from the stream:
/// X row-by-row, then support, signs, tail, and finally the noise vector.
Instance generate_instance(const ExperimentConfig& cfg, RandomStream& rs);

/// Exhaustive maximum-likelihood support decoder. Enumerates all size-m
/// subsets of the candidate columns in lexicographic order, scoring each
/// by least-squares residual; ties within 1e-12 go to the earliest
/// (lexicographically smallest) subset.
///
/// The decoder fits k_effective coefficients per candidate: the trailing
/// k_effective - m columns of x are side information included in every
/// regression; the leading columns are the candidates.
std::vector<int> exhaustive_ml_decode(const Eigen::Ref<const Matrix>& x,
                                      const Eigen::Ref<const Vector>& y, int m,
                                      int k_effective,
                                      std::uint64_t enumeration_cap = 200000);

struct TrialOutcome {
    int trial_index = 0;
    std::vector<int> true_support;
    std::vector<int> decoded_support;
    bool success = false;
};

struct SimReport {
    std::uint64_t config_hash = 0;
    std::uint64_t master_seed = 0;
    int trials = 0;
    int failures = 0;
    double p_err_hat = 0.0;
    double ci_low = 0.0;   // Wilson 95%
    double ci_high = 0.0;
    double wall_time_s = 0.0;  // excluded from determinism comparisons
};

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

WilsonInterval wilson_interval(int failures, int trials);

/// Estimates the average detection error over cfg.trials independent
/// trials, per-trial stream_id = trial index. Support averaging is
/// realized by uniform sampling per trial.
SimReport estimate_perr(const ExperimentConfig& cfg,
                        std::vector<TrialOutcome>* outcomes = nullptr);

/// True when decoded equals the index set of the kk largest-magnitude
/// entries of beta (magnitude ties break toward the lower index).
bool top_k_match(const std::vector<int>& decoded,
                 const Eigen::Ref<const Vector>& beta, int kk);

struct SweepPoint {
    int n = 0;
    SimReport report;
};

struct SweepResult {
    std::vector<SweepPoint> curve;
    std::optional<int> n_star;  // smallest n with ci_high <= epsilon
};

SweepResult sweep_n(const ExperimentConfig& base, const std::vector<int>& n_values,
                    double epsilon);

}  // namespace sprecov
