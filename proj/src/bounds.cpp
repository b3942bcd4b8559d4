#include "sprecov/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sprecov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string to_string(ConditionKind kind) {
    switch (kind) {
        case ConditionKind::tight_sufficient: return "tight_sufficient";
        case ConditionKind::relaxed_sufficient: return "relaxed_sufficient";
        case ConditionKind::wang_necessary: return "wang_necessary";
        case ConditionKind::spectrum_sufficient: return "spectrum_sufficient";
        case ConditionKind::szego_sufficient: return "szego_sufficient";
    }
    return "unknown";
}

bool vacuous_m(int p_prime, int m) {
    return log_binomial(p_prime, m) <= kLn2 + 1e-12;
}

double fano_lhs(int p_prime, int m, double slack) {
    const double lc = log_binomial(p_prime, m);
    // ln(C - 1) = ln C + ln(1 - 1/C), stable for the non-vacuous C > 2.
    return lc + std::log1p(-std::exp(-lc)) - slack;
}

double spectrum_sufficient_rhs(const ReducedProblem& rp, double g) {
    const int pp = rp.p_prime();
    if (rp.n < 1 || rp.n > pp - 1) {
        throw std::domain_error("spectrum_sufficient_rhs: requires 1 <= n <= p' - 1");
    }
    if (!(g >= 0.0)) {
        throw std::domain_error("spectrum_sufficient_rhs: requires G >= 0");
    }
    const double n = rp.n;
    const double root = std::exp((log_gamma(n) + log_binomial(pp - 1, rp.n - 1)) / n);
    return 0.5 * n * std::log1p(g * root);
}

double tight_sufficient_rhs(const ReducedProblem& rp, const SignalModel& sm) {
    const double q = rp.q();
    return spectrum_sufficient_rhs(rp, q * (1.0 - q) * sm.lambda_sq());
}

namespace {

// Shared quantified check for the RHS-style conditions.
bool rhs_condition_holds(int p, int k, int n, double slack,
                         const std::function<double(const ReducedProblem&)>& g_of_m,
                         std::vector<PerM>* detail) {
    bool ok = true;
    for (int m = 1; m <= k; ++m) {
        const ReducedProblem rp{p, k, m, n};
        const int pp = rp.p_prime();
        PerM row;
        row.m = m;
        if (vacuous_m(pp, m)) {
            row.vacuous = true;
            row.lhs = kNaN;
            row.rhs = kNaN;
        } else if (n > pp - 1) {
            row.in_domain = false;
            row.lhs = fano_lhs(pp, m, slack);
            row.rhs = kNaN;
            ok = false;
        } else {
            row.lhs = fano_lhs(pp, m, slack);
            row.rhs = spectrum_sufficient_rhs(rp, g_of_m(rp));
            if (!(row.lhs <= row.rhs)) ok = false;
        }
        if (detail) detail->push_back(row);
        if (!ok && !detail) return false;
    }
    return ok;
}

BoundResult rhs_condition_min_n(int p, int k, double slack,
                                const std::function<double(const ReducedProblem&)>& g_of_m,
                                ConditionKind kind) {
    BoundResult out;
    out.kind = kind;
    out.p = p;
    out.k = k;
    out.lambda_sq = kNaN;
    out.spectral_g = kNaN;
    out.slack = slack;
    for (int n = 1; n <= p - 1; ++n) {
        if (rhs_condition_holds(p, k, n, slack, g_of_m, nullptr)) {
            out.n_min = n;
            rhs_condition_holds(p, k, n, slack, g_of_m, &out.per_m);
            return out;
        }
    }
    return out;  // unsatisfiable-in-domain
}

// n_min for the f_m-style conditions: floor(max{f_m, k}) + 1.
BoundResult f_condition_min_n(int p, int k, const SignalModel& sm, double slack,
                              ConditionKind kind,
                              double (*f)(const ReducedProblem&, const SignalModel&, double)) {
    BoundResult out;
    out.kind = kind;
    out.p = p;
    out.k = k;
    out.lambda_sq = sm.lambda_sq();
    out.spectral_g = kNaN;
    out.slack = slack;
    double best = static_cast<double>(k);
    bool infinite = false;
    for (int m = 1; m <= k; ++m) {
        const ReducedProblem rp{p, k, m, 1};
        PerM row;
        row.m = m;
        row.rhs = kNaN;
        if (vacuous_m(rp.p_prime(), m)) {
            row.vacuous = true;
            row.lhs = kNaN;
        } else {
            row.lhs = f(rp, sm, slack);
            // f = -inf marks an m with a negative Fano numerator: no
            // constraint at all. Only +inf is an unmeetable requirement.
            if (row.lhs == kInf) infinite = true;
            best = std::max(best, row.lhs);
        }
        out.per_m.push_back(row);
    }
    if (!infinite) out.n_min = static_cast<int>(std::floor(best)) + 1;
    return out;
}

}  // namespace

bool tight_sufficient_holds(int p, int k, int n, const SignalModel& sm,
                            double slack, std::vector<PerM>* detail) {
    return rhs_condition_holds(p, k, n, slack,
                               [&sm](const ReducedProblem& rp) {
                                   const double q = rp.q();
                                   return q * (1.0 - q) * sm.lambda_sq();
                               },
                               detail);
}

BoundResult tight_sufficient_min_n(int p, int k, const SignalModel& sm, double slack) {
    BoundResult out = rhs_condition_min_n(p, k, slack,
                                          [&sm](const ReducedProblem& rp) {
                                              const double q = rp.q();
                                              return q * (1.0 - q) * sm.lambda_sq();
                                          },
                                          ConditionKind::tight_sufficient);
    out.lambda_sq = sm.lambda_sq();
    return out;
}

double relaxed_sufficient_f(const ReducedProblem& rp, const SignalModel& sm,
                            double slack) {
    const int pp = rp.p_prime();
    const double q = rp.q();
    const double num = fano_lhs(pp, rp.m, slack);
    const double x = rp.m / std::numbers::e_v<double> * sm.lambda_sq() * (1.0 - q);
    const double den = 0.5 * std::log1p(x);
    if (den <= 0.0) return num < 0.0 ? -kInf : kInf;
    return num / den;
}

BoundResult relaxed_sufficient_min_n(int p, int k, const SignalModel& sm, double slack) {
    return f_condition_min_n(p, k, sm, slack, ConditionKind::relaxed_sufficient,
                             &relaxed_sufficient_f);
}

double wang_necessary_f(const ReducedProblem& rp, const SignalModel& sm, double slack) {
    const int pp = rp.p_prime();
    const double q = rp.q();
    const double num = log_binomial(pp, rp.m) - slack;
    const double x = rp.m * sm.lambda_sq() * (1.0 - q);
    const double den = 0.5 * std::log1p(x);
    if (den <= 0.0) return num < 0.0 ? -kInf : kInf;
    return num / den;
}

BoundResult wang_necessary_min_n(int p, int k, const SignalModel& sm, double slack) {
    return f_condition_min_n(p, k, sm, slack, ConditionKind::wang_necessary,
                             &wang_necessary_f);
}

BoundResult spectrum_sufficient_min_n(int p, int k, double g, double slack,
                                      ConditionKind kind) {
    if (!(g >= 0.0)) {
        throw std::domain_error("spectrum_sufficient_min_n: requires G >= 0");
    }
    BoundResult out = rhs_condition_min_n(p, k, slack,
                                          [g](const ReducedProblem&) { return g; }, kind);
    out.spectral_g = g;
    return out;
}

BoundResult spectrum_sufficient_min_n(
    int p, int k, const std::function<double(const ReducedProblem&)>& g_of_m,
    double slack, ConditionKind kind) {
    return rhs_condition_min_n(p, k, slack, g_of_m, kind);
}

double szego_log_average(const SpectrumSummary& spectrum) {
    if (!(spectrum.values.array() > 0.0).all()) {
        throw std::domain_error("szego_log_average: requires S > 0 on the grid");
    }
    return integrate_periodic(spectrum.omega_grid,
                              spectrum.values.array().log().matrix());
}

double merikoski_b_bound(const Eigen::Ref<const Matrix>& r, int n, double snr) {
    const int dim = static_cast<int>(r.rows());
    if (n < 1 || n >= dim) {
        throw std::domain_error("merikoski_b_bound: requires 1 <= n < dim(R)");
    }
    if (!(snr > 0.0)) {
        throw std::domain_error("merikoski_b_bound: requires snr > 0");
    }
    const double log_det = spd_log_det(r);  // rejects singular R
    const double d_minus_n = static_cast<double>(dim - n);
    return d_minus_n * std::log(d_minus_n / snr) + log_det;
}

MerikoskiSlack merikoski_b_slack(const Eigen::Ref<const Matrix>& r, int n, double snr) {
    MerikoskiSlack out;
    out.bound = merikoski_b_bound(r, n, snr);
    const Vector eigenvalues = symmetric_eigenvalues(r);
    out.true_b = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(eigenvalues[i] > 0.0)) {
            throw std::domain_error("merikoski_b_slack: R must be positive definite");
        }
        out.true_b += std::log(eigenvalues[i]);
    }
    out.slack = out.true_b - out.bound;
    return out;
}

namespace {

struct RegimePoint {
    int k;
    double lambda_sq;
    double growth;
};

RegimePoint regime_point(int table_row, int p) {
    RegimePoint point{};
    const auto sublinear_k = [](int pv) {
        int root = static_cast<int>(std::sqrt(static_cast<double>(pv)));
        while (root * root < pv) ++root;
        return root;
    };
    switch (table_row) {
        case 1:
            point.k = std::max(1, p / 4);
            point.lambda_sq = 4.0 / p;
            point.growth = p * std::log(static_cast<double>(p));
            break;
        case 2:
            point.k = std::max(1, p / 4);
            point.lambda_sq = std::log(static_cast<double>(point.k)) / point.k;
            point.growth = p;
            break;
        case 3:
            point.k = std::max(1, p / 4);
            point.lambda_sq = 1.0;
            point.growth = p;
            break;
        case 4: {
            point.k = sublinear_k(p);
            point.lambda_sq = 1.0 / point.k;
            point.growth = point.k * std::log(static_cast<double>(p - point.k));
            break;
        }
        case 5: {
            point.k = sublinear_k(p);
            const double k = point.k;
            point.lambda_sq = std::log(k) / k;
            point.growth = std::max(k * std::log(static_cast<double>(p - point.k)) / std::log(k),
                                   k * std::log(p / k) / std::log(std::log(k)));
            break;
        }
        case 6: {
            point.k = sublinear_k(p);
            const double k = point.k;
            point.growth = std::max(k * std::log(p / k) / std::log(k), k);
            point.lambda_sq = 1.0;
            break;
        }
        default:
            throw std::invalid_argument("regime_scaling_check: row must be 1..6");
    }
    return point;
}

}  // namespace

RegimeCheck regime_scaling_check(int table_row, const std::vector<int>& p_sequence) {
    RegimeCheck out;
    out.table_row = table_row;
    std::vector<double> ratios;
    for (int p : p_sequence) {
        const RegimePoint point = regime_point(table_row, p);
        SignalModel sm;
        sm.lambda = std::sqrt(point.lambda_sq);
        const BoundResult bound = relaxed_sufficient_min_n(p, point.k, sm);
        RegimeRow row;
        row.p = p;
        row.k = point.k;
        row.lambda_sq = point.lambda_sq;
        row.n_min = bound.n_min;
        row.growth = point.growth;
        row.ratio = bound.n_min ? *bound.n_min / point.growth
                                : std::numeric_limits<double>::quiet_NaN();
        if (bound.n_min) ratios.push_back(row.ratio);
        out.rows.push_back(row);
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        out.successive_delta.push_back(std::abs(ratios[i] / ratios[i - 1] - 1.0));
    }
    out.stability_defined = ratios.size() >= 3;
    if (out.stability_defined) {
        const std::size_t last = out.successive_delta.size();
        out.stable = out.successive_delta[last - 1] <= 0.10 &&
                     out.successive_delta[last - 2] <= 0.10;
    }
    return out;
}

}  // namespace sprecov
