#include "sprecov/cli_app.hpp"

#include "sprecov/bounds.hpp"
#include "sprecov/recovery_sim.hpp"
#include "sprecov/serialize.hpp"
#include "sprecov/validate.hpp"
#include "sprecov/wishart_info.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sprecov {

namespace {

std::string table_for(const BoundResult& result) {
    std::ostringstream out;
    out << "theorem     : " << to_string(result.kind) << "\n"
        << "p           : " << result.p << "\n"
        << "k           : " << result.k << "\n";
    if (std::isfinite(result.lambda_sq)) {
        out << "lambda_sq   : " << format_double(result.lambda_sq) << "\n";
    }
    if (std::isfinite(result.spectral_g)) {
        out << "G           : " << format_double(result.spectral_g) << "\n";
    }
    out << "slack (nats): " << format_double(result.slack) << "\n"
        << "n_min       : "
        << (result.n_min ? std::to_string(*result.n_min)
                         : std::string("unsatisfiable-in-domain"))
        << "\n";
    if (!result.per_m.empty()) {
        out << "   m  lhs_or_f      rhs\n";
        for (const PerM& row : result.per_m) {
            out << "  " << row.m << "  ";
            if (row.vacuous) {
                out << "(vacuous)";
            } else {
                out << format_double(row.lhs) << "  "
                    << (std::isnan(row.rhs) ? std::string(row.in_domain ? "" : "(n out of domain)")
                                            : format_double(row.rhs));
            }
            out << "\n";
        }
    }
    return out.str();
}

void write_or_print(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

std::vector<int> parse_n_range(const std::string& text) {
    // a:b[:step]
    std::vector<long> parts;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stol(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--n-range", "expected integers a:b[:step]");
        }
    }
    if (parts.size() < 2 || parts.size() > 3) {
        throw CLI::ValidationError("--n-range", "expected a:b[:step]");
    }
    const long step = parts.size() == 3 ? parts[2] : 1;
    if (step < 1 || parts[1] < parts[0] || parts[0] < 1) {
        throw CLI::ValidationError("--n-range", "range must be ascending with step >= 1");
    }
    std::vector<int> values;
    for (long n = parts[0]; n <= parts[1]; n += step) values.push_back(static_cast<int>(n));
    return values;
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int cmd_bounds(int p, int k, double lambda_sq, const std::string& theorem,
               double g_flag, bool g_given, const std::string& spectrum_path,
               double slack, bool as_json, bool as_csv) {
    SignalModel sm;
    sm.lambda = std::sqrt(lambda_sq);
    BoundResult result;
    double g_report = std::numeric_limits<double>::quiet_NaN();
    try {
        if (theorem == "thm1") {
            result = tight_sufficient_min_n(p, k, sm, slack);
            result.lambda_sq = lambda_sq;  // report the flag value verbatim
        } else if (theorem == "cor1") {
            result = relaxed_sufficient_min_n(p, k, sm, slack);
            result.lambda_sq = lambda_sq;
        } else if (theorem == "wang") {
            result = wang_necessary_min_n(p, k, sm, slack);
            result.lambda_sq = lambda_sq;
        } else if (theorem == "thm3" || theorem == "cor2") {
            double g;
            if (theorem == "cor2") {
                if (spectrum_path.empty()) {
                    std::cerr << "bounds: --theorem cor2 requires --spectrum\n";
                    return kExitUsage;
                }
                g = szego_log_average(load_spectrum_csv(spectrum_path));
            } else if (g_given) {
                g = g_flag;
            } else if (!spectrum_path.empty()) {
                g = load_spectrum_csv(spectrum_path).g_inf;
            } else {
                std::cerr << "bounds: --theorem thm3 requires --G or --spectrum\n";
                return kExitUsage;
            }
            g_report = g;
            result = spectrum_sufficient_min_n(p, k, g, slack,
                                               theorem == "cor2"
                                                   ? ConditionKind::szego_sufficient
                                                   : ConditionKind::spectrum_sufficient);
        } else {
            std::cerr << "bounds: unknown theorem '" << theorem << "'\n";
            return kExitUsage;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "bounds: domain error: " << e.what() << "\n";
        return kExitDomainError;
    }
    if (as_json) {
        Json j = bound_to_json(result);
        if (std::isfinite(g_report)) j["G"] = g_report;
        std::cout << j.dump(2) << "\n";
    } else if (as_csv) {
        std::cout << bound_to_csv(result);
    } else {
        std::cout << table_for(result);
        if (std::isfinite(g_report)) {
            std::cout << "G (input)   : " << format_double(g_report) << "\n";
        }
    }
    if (!result.n_min) {
        std::cerr << "bounds: unsatisfiable-in-domain\n";
        return kExitDomainError;
    }
    return kExitSuccess;
}

int cmd_validate(const std::string& suite, int trials, std::uint64_t seed, bool as_json) {
    std::vector<SuiteReport> reports;
    if (suite == "wishart" || suite == "all") reports.push_back(validate_wishart(trials, seed));
    if (suite == "spectrum" || suite == "all") reports.push_back(validate_spectrum());
    if (suite == "mi-bound" || suite == "all") reports.push_back(validate_mi_bound(trials, seed));

    bool all_passed = true;
    Json out = Json::array();
    for (const SuiteReport& report : reports) {
        if (!as_json) std::cout << "suite " << report.suite << ":\n";
        Json suite_json;
        suite_json["suite"] = report.suite;
        suite_json["data"] = report.data;
        suite_json["checks"] = Json::array();
        for (const CheckResult& check : report.checks) {
            if (!as_json) {
                std::cout << "  [" << (check.passed ? "PASS" : "FAIL")
                          << (check.asserted ? "" : " (reported only)") << "] "
                          << check.name;
                if (!check.detail.empty()) std::cout << " -- " << check.detail;
                std::cout << "\n";
            }
            Json cj;
            cj["name"] = check.name;
            cj["asserted"] = check.asserted;
            cj["passed"] = check.passed;
            cj["detail"] = check.detail;
            suite_json["checks"].push_back(cj);
        }
        out.push_back(suite_json);
        if (!report.all_asserted_passed()) all_passed = false;
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return all_passed ? kExitSuccess : kExitPropertyFailure;
}

int cmd_simulate(const ExperimentConfig& base, const std::vector<int>& n_values,
                 double epsilon, const std::string& out_path, std::string log_path,
                 const Json& params) {
    SweepResult sweep;
    try {
        sweep = sweep_n(base, n_values, epsilon);
    } catch (const EnumerationCapExceeded& e) {
        std::cerr << "simulate: " << e.what() << "\n";
        return kExitDomainError;
    }

    const std::string csv = sweep_to_csv(sweep);
    std::cout << "n_star      : "
              << (sweep.n_star ? std::to_string(*sweep.n_star) : std::string("none"))
              << "\n";
    SignalModel sm{base.lambda, base.xi};
    const auto print_min_n = [&](const char* label, const BoundResult& r) {
        std::cout << label
                  << (r.n_min ? std::to_string(*r.n_min)
                              : std::string("unsatisfiable-in-domain"))
                  << "\n";
    };
    print_min_n("cor1 n_min  : ", relaxed_sufficient_min_n(base.p, base.k, sm));
    print_min_n("wang n_min  : ", wang_necessary_min_n(base.p, base.k, sm));
    print_min_n("thm1 n_min  : ", tight_sufficient_min_n(base.p, base.k, sm));
    write_or_print(csv, out_path);

    if (log_path.empty()) {
        const char* env = std::getenv("SPRECOV_LOG");
        log_path = env ? env : "runs.jsonl";
    }
    RunRecord record;
    record.timestamp = iso8601_utc_now();
    record.subcommand = "simulate";
    record.parameters = params;
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(base.hash()));
    record.config_hash = hash_hex;
    record.output_digest = fnv1a_hex(csv);
    append_run_record(log_path, record);
    return kExitSuccess;
}

int cmd_regimes(int row, int p_min, int p_max, const std::string& out_path) {
    std::vector<int> p_sequence;
    for (int p = p_min; p <= p_max; p *= 2) p_sequence.push_back(p);
    const RegimeCheck check = regime_scaling_check(row, p_sequence);
    write_or_print(regime_to_csv(check), out_path);
    if (!check.stability_defined) {
        std::cerr << "regimes: stability undefined (needs >= 3 ratio points)\n";
        return kExitPropertyFailure;
    }
    if (!check.stable) {
        std::cerr << "regimes: successive ratios drift beyond 10%\n";
        return kExitPropertyFailure;
    }
    std::cout << "regimes: row " << row << " ratio stable within 10%\n";
    return kExitSuccess;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Information-theoretic sufficient/necessary conditions for exact "
                 "sparse support recovery, with Monte Carlo verification"};
    app.require_subcommand(1);

    // --- bounds ---
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate a recovery condition");
    int b_p = 0, b_k = 0;
    double b_lambda_sq = std::numeric_limits<double>::quiet_NaN();
    std::string b_theorem = "thm1";
    double b_g = 0.0;
    std::string b_spectrum;
    double b_slack = 1.0;
    bool b_json = false, b_csv = false;
    bounds_cmd->add_option("--p", b_p, "ambient dimension")->required();
    bounds_cmd->add_option("--k", b_k, "sparsity level")->required();
    bounds_cmd->add_option("--lambda-sq", b_lambda_sq, "minimum squared magnitude");
    bounds_cmd->add_option("--theorem", b_theorem, "thm1|cor1|wang|thm3|cor2");
    auto* g_opt = bounds_cmd->add_option("--G", b_g, "spectrum infimum (thm3)");
    bounds_cmd->add_option("--spectrum", b_spectrum, "spectrum CSV path");
    bounds_cmd->add_option("--slack", b_slack, "Fano additive constant in nats");
    bounds_cmd->add_flag("--json", b_json, "emit JSON");
    bounds_cmd->add_flag("--csv", b_csv, "emit CSV");

    // --- validate ---
    auto* validate_cmd = app.add_subcommand("validate", "run invariant suites");
    std::string v_suite = "all";
    int v_trials = 20000;
    std::uint64_t v_seed = 0;
    bool v_seed_given = false;
    bool v_json = false;
    validate_cmd->add_option("--suite", v_suite, "wishart|spectrum|mi-bound|all");
    validate_cmd->add_option("--trials", v_trials, "Monte Carlo trials");
    validate_cmd->add_option("--seed", v_seed, "master seed")
        ->each([&v_seed_given](const std::string&) { v_seed_given = true; });
    validate_cmd->add_flag("--json", v_json, "emit JSON report");

    // --- simulate ---
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo error sweep over n");
    int s_p = 0, s_k = 0, s_m = -1, s_trials = 0;
    double s_lambda_sq = 1.0, s_xi = 0.0, s_epsilon = 0.05;
    std::string s_range, s_metric = "exact", s_out, s_log;
    std::uint64_t s_seed = 0;
    std::uint64_t s_cap = 200000;
    simulate_cmd->add_option("--p", s_p, "ambient dimension")->required();
    simulate_cmd->add_option("--k", s_k, "sparsity level")->required();
    simulate_cmd->add_option("--m", s_m, "unknown-support size (default k)");
    simulate_cmd->add_option("--lambda-sq", s_lambda_sq, "squared magnitude")->required();
    simulate_cmd->add_option("--xi", s_xi, "negative-sign probability");
    simulate_cmd->add_option("--n-range", s_range, "a:b[:step]")->required();
    simulate_cmd->add_option("--trials", s_trials, "trials per n")->required();
    simulate_cmd->add_option("--seed", s_seed, "master seed")->required();
    simulate_cmd->add_option("--epsilon", s_epsilon, "target ci_high for n_star")->required();
    simulate_cmd->add_option("--metric", s_metric, "exact|topk");
    simulate_cmd->add_option("--out", s_out, "curve CSV path (stdout if omitted)");
    simulate_cmd->add_option("--log", s_log, "run log path (default $SPRECOV_LOG or runs.jsonl)");
    simulate_cmd->add_option("--cap", s_cap, "enumeration cap");

    // --- regimes ---
    auto* regimes_cmd = app.add_subcommand("regimes", "scaling-regime ratio check");
    int r_row = 0, r_pmin = 0, r_pmax = 0;
    std::string r_out;
    regimes_cmd->add_option("--row", r_row, "table row 1..6")->required();
    regimes_cmd->add_option("--p-min", r_pmin, "smallest p (power of two)")->required();
    regimes_cmd->add_option("--p-max", r_pmax, "largest p (power of two)")->required();
    regimes_cmd->add_option("--out", r_out, "ratio CSV path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kExitSuccess : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (bounds_cmd->parsed()) {
            const bool needs_lambda =
                b_theorem == "thm1" || b_theorem == "cor1" || b_theorem == "wang";
            if (needs_lambda && !std::isfinite(b_lambda_sq)) {
                std::cerr << "bounds: --lambda-sq is required for " << b_theorem << "\n";
                return kExitUsage;
            }
            if (needs_lambda && b_lambda_sq < 0) {
                std::cerr << "bounds: --lambda-sq must be >= 0\n";
                return kExitUsage;
            }
            if (b_p < 1 || b_k < 1 || b_k > b_p) {
                std::cerr << "bounds: requires 1 <= k <= p\n";
                return kExitUsage;
            }
            return cmd_bounds(b_p, b_k, needs_lambda ? b_lambda_sq : 0.0, b_theorem, b_g,
                              g_opt->count() > 0, b_spectrum, b_slack, b_json, b_csv);
        }
        if (validate_cmd->parsed()) {
            if (v_suite != "wishart" && v_suite != "spectrum" && v_suite != "mi-bound" &&
                v_suite != "all") {
                std::cerr << "validate: unknown suite '" << v_suite << "'\n";
                return kExitUsage;
            }
            if (v_trials <= 0) {
                std::cerr << "validate: --trials must be >= 1\n";
                return kExitUsage;
            }
            const bool randomized = v_suite != "spectrum";
            if (randomized && !v_seed_given) {
                std::cerr << "validate: --seed is required for randomized suites\n";
                return kExitUsage;
            }
            return cmd_validate(v_suite, v_trials, v_seed, v_json);
        }
        if (simulate_cmd->parsed()) {
            if (s_metric != "exact" && s_metric != "topk") {
                std::cerr << "simulate: --metric must be exact or topk\n";
                return kExitUsage;
            }
            if (s_trials < 1 || s_epsilon < 0.0) {
                std::cerr << "simulate: --trials must be >= 1 and --epsilon >= 0\n";
                return kExitUsage;
            }
            ExperimentConfig cfg;
            cfg.p = s_p;
            cfg.k = s_k;
            cfg.m = s_m < 0 ? s_k : s_m;
            cfg.lambda = std::sqrt(s_lambda_sq);
            cfg.xi = s_xi;
            cfg.trials = s_trials;
            cfg.master_seed = s_seed;
            cfg.metric = s_metric == "exact" ? ErrorMetric::exact_support : ErrorMetric::top_k;
            cfg.enumeration_cap = s_cap;
            std::vector<int> n_values = parse_n_range(s_range);
            cfg.n = n_values.front();
            Json params;
            params["p"] = s_p;
            params["k"] = s_k;
            params["m"] = cfg.m;
            params["lambda_sq"] = s_lambda_sq;
            params["xi"] = s_xi;
            params["n_range"] = s_range;
            params["trials"] = s_trials;
            params["seed"] = s_seed;
            params["epsilon"] = s_epsilon;
            params["metric"] = s_metric;
            params["cap"] = s_cap;
            return cmd_simulate(cfg, n_values, s_epsilon, s_out, s_log, params);
        }
        if (regimes_cmd->parsed()) {
            if (r_row < 1 || r_row > 6 || !is_power_of_two(r_pmin) ||
                !is_power_of_two(r_pmax) || r_pmin > r_pmax) {
                std::cerr << "regimes: --row in 1..6, --p-min/--p-max powers of two\n";
                return kExitUsage;
            }
            int points = 0;
            for (int p = r_pmin; p <= r_pmax; p *= 2) ++points;
            if (points < 4) {
                std::cerr << "regimes: need at least 4 doubling points\n";
                return kExitUsage;
            }
            return cmd_regimes(r_row, r_pmin, r_pmax, r_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const EnumerationCapExceeded& e) {
        std::cerr << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitUsage;
}

}  // namespace sprecov
