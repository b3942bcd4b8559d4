#pragma once

#include "sprecov/signal_model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sprecov {

/// The recovery conditions this library evaluates. The CLI tokens for
/// these are thm1 / cor1 / wang / thm3 / cor2 respectively.
enum class ConditionKind {
    tight_sufficient,      // exact-Wishart sufficient condition
    relaxed_sufficient,    // Stirling-relaxed sufficient condition (f_m form)
    wang_necessary,        // Wang et al. necessary condition (f_m form)
    spectrum_sufficient,   // sufficient condition from a spectrum infimum G
    szego_sufficient,      // same RHS with G from the Szego log-average
};

std::string to_string(ConditionKind kind);

/// Per-m detail of a condition evaluation. For the RHS-style conditions
/// lhs/rhs are the two sides of the Fano inequality at the reported n;
/// for the f_m-style conditions lhs holds f_m and rhs is NaN.
struct PerM {
    int m = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool vacuous = false;    // C(p', m) <= 2: constraint trivially true, skipped
    bool in_domain = true;   // n <= p' - 1 for the RHS-style conditions
};

struct BoundResult {
    ConditionKind kind = ConditionKind::tight_sufficient;
    int p = 0;
    int k = 0;
    double lambda_sq = 0.0;          // NaN for spectrum-driven results
    double spectral_g = 0.0;         // NaN unless spectrum-driven
    double slack = 1.0;              // Fano additive constant (nats)
    std::optional<int> n_min;        // nullopt: unsatisfiable in domain
    std::vector<PerM> per_m;         // detail at n_min (or per-m f values)

    bool satisfiable() const { return n_min.has_value(); }
};

/// ln(C(p', m) - 1) - slack, the Fano left-hand side.
double fano_lhs(int p_prime, int m, double slack);

/// True when C(p', m) <= 2 and the m-constraint is skipped as vacuous.
bool vacuous_m(int p_prime, int m);

/// L = (n/2) ln(1 + G (Gamma(n) C(p'-1, n-1))^{1/n}), computed in log
/// space. Requires G >= 0 and 1 <= n <= p'-1.
double spectrum_sufficient_rhs(const ReducedProblem& rp, double g);

/// Tight sufficient RHS with G = q(1-q) lambda^2.
double tight_sufficient_rhs(const ReducedProblem& rp, const SignalModel& sm);

/// Whether the tight sufficient condition holds at measurement count n
/// for every non-vacuous m in 1..k (an m outside the n-domain fails).
bool tight_sufficient_holds(int p, int k, int n, const SignalModel& sm,
                            double slack = 1.0, std::vector<PerM>* detail = nullptr);

/// Smallest n in 1..p-1 satisfying the tight sufficient condition
/// (ascending exhaustive scan).
BoundResult tight_sufficient_min_n(int p, int k, const SignalModel& sm,
                                   double slack = 1.0);

/// f_m of the relaxed sufficient condition; +inf when the denominator
/// vanishes (lambda = 0 or m = p').
double relaxed_sufficient_f(const ReducedProblem& rp, const SignalModel& sm,
                            double slack = 1.0);

/// n_min = floor(max{f_1..f_k, k}) + 1 over non-vacuous m.
BoundResult relaxed_sufficient_min_n(int p, int k, const SignalModel& sm,
                                     double slack = 1.0);

double wang_necessary_f(const ReducedProblem& rp, const SignalModel& sm,
                        double slack = 1.0);

BoundResult wang_necessary_min_n(int p, int k, const SignalModel& sm,
                                 double slack = 1.0);

/// Spectrum-driven sufficient condition with a fixed G.
BoundResult spectrum_sufficient_min_n(int p, int k, double g, double slack = 1.0,
                                      ConditionKind kind = ConditionKind::spectrum_sufficient);

/// Variant with a per-reduced-problem G (used by the pipeline-consistency
/// check, where the modeled spectrum depends on m).
BoundResult spectrum_sufficient_min_n(
    int p, int k, const std::function<double(const ReducedProblem&)>& g_of_m,
    double slack = 1.0, ConditionKind kind = ConditionKind::spectrum_sufficient);

/// Szego log-average (1/2pi) int ln S(w) dw; requires S > 0 on the grid.
double szego_log_average(const SpectrumSummary& spectrum);

/// Lower bound on the sum of the n smallest log-eigenvalues of R:
/// (d - n) ln((d - n)/snr) + ln det R, d = dim(R).
double merikoski_b_bound(const Eigen::Ref<const Matrix>& r, int n, double snr);

struct MerikoskiSlack {
    double bound = 0.0;
    double true_b = 0.0;  // sum of the n smallest log-eigenvalues
    double slack = 0.0;   // true_b - bound (negative means violation)
};

MerikoskiSlack merikoski_b_slack(const Eigen::Ref<const Matrix>& r, int n, double snr);

struct RegimeRow {
    int p = 0;
    int k = 0;
    double lambda_sq = 0.0;
    std::optional<int> n_min;
    double growth = 0.0;  // the regime's predicted g(p)
    double ratio = 0.0;   // n_min / g(p)
};

struct RegimeCheck {
    int table_row = 0;
    std::vector<RegimeRow> rows;
    std::vector<double> successive_delta;  // |ratio_{i+1}/ratio_i - 1|
    bool stability_defined = false;        // needs >= 3 ratio points
    bool stable = false;  // last two successive deltas <= 10%
};

/// Scaling-regime check for the tabulated rows 1..6: fixes k(p), lambda^2(p)
/// per row, computes the relaxed sufficient n_min over p_sequence, and
/// reports the stability of n_min / g(p) across successive doublings.
RegimeCheck regime_scaling_check(int table_row, const std::vector<int>& p_sequence);

}  // namespace sprecov
