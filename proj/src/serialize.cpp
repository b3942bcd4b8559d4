#include "sprecov/serialize.hpp"

#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sprecov {

std::string format_double(double value) {
    char buf[40];
    if (value == std::floor(value) && std::abs(value) < 9.007199254740992e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    // Shortest representation that parses back to the same double.
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) return buf;
    }
    return buf;
}

std::string spectrum_to_csv(const SpectrumSummary& spectrum) {
    std::string out = "omega,S\n";
    for (Eigen::Index i = 0; i < spectrum.omega_grid.size(); ++i) {
        out += format_double(spectrum.omega_grid[i]);
        out += ',';
        out += format_double(spectrum.values[i]);
        out += '\n';
    }
    return out;
}

SpectrumSummary spectrum_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("spectrum CSV: empty input");
    }
    if (line != "omega,S" && line != "omega,S\r") {
        throw std::invalid_argument("spectrum CSV: expected header 'omega,S'");
    }
    std::vector<double> omegas;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("spectrum CSV: malformed row: " + line);
        }
        omegas.push_back(std::stod(line.substr(0, comma)));
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    SpectrumSummary spectrum;
    spectrum.omega_grid = Eigen::Map<const Vector>(omegas.data(), omegas.size());
    spectrum.values = Eigen::Map<const Vector>(values.data(), values.size());
    if ((spectrum.values.array() < 0.0).any()) {
        throw std::invalid_argument("spectrum CSV: S(omega) must be >= 0");
    }
    // Validates grid uniformity on [0, 2pi) as a side effect.
    integrate_periodic(spectrum.omega_grid, spectrum.values);
    spectrum.g_inf = spectrum.values.minCoeff();
    if ((spectrum.values.array() > 0.0).all()) {
        spectrum.g_log = integrate_periodic(spectrum.omega_grid,
                                            spectrum.values.array().log().matrix());
    } else {
        spectrum.g_log = std::numeric_limits<double>::quiet_NaN();
    }
    return spectrum;
}

SpectrumSummary load_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open spectrum CSV: " + path);
    }
    return spectrum_from_csv(in);
}

void save_spectrum_csv(const SpectrumSummary& spectrum, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write spectrum CSV: " + path);
    }
    out << spectrum_to_csv(spectrum);
}

namespace {

Json per_m_json(const PerM& row) {
    Json j;
    j["m"] = row.m;
    j["lhs_or_f"] = row.lhs;
    j["rhs"] = row.rhs;
    j["vacuous"] = row.vacuous;
    j["in_domain"] = row.in_domain;
    return j;
}

}  // namespace

Json bound_to_json(const BoundResult& result) {
    Json j;
    j["theorem"] = to_string(result.kind);
    j["p"] = result.p;
    j["k"] = result.k;
    j["lambda_sq"] = result.lambda_sq;
    j["spectral_g"] = result.spectral_g;
    j["slack"] = result.slack;
    if (result.n_min) {
        j["n_min"] = *result.n_min;
    } else {
        j["n_min"] = "unsatisfiable-in-domain";
    }
    j["per_m"] = Json::array();
    for (const PerM& row : result.per_m) j["per_m"].push_back(per_m_json(row));
    return j;
}

std::string bound_to_csv(const BoundResult& result) {
    std::string out = "theorem,p,k,lambda_sq,slack,n_min,m,lhs_or_f,rhs\n";
    const std::string prefix = to_string(result.kind) + ',' + std::to_string(result.p) +
                               ',' + std::to_string(result.k) + ',' +
                               format_double(result.lambda_sq) + ',' +
                               format_double(result.slack) + ',' +
                               (result.n_min ? std::to_string(*result.n_min)
                                             : std::string("unsatisfiable-in-domain"));
    if (result.per_m.empty()) {
        out += prefix + ",,,\n";
        return out;
    }
    for (const PerM& row : result.per_m) {
        out += prefix + ',' + std::to_string(row.m) + ',' + format_double(row.lhs) + ',' +
               format_double(row.rhs) + '\n';
    }
    return out;
}

Json sim_report_to_json(const SimReport& report) {
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(report.config_hash));
    Json j;
    j["config_hash"] = hash_hex;
    j["master_seed"] = report.master_seed;
    j["trials"] = report.trials;
    j["failures"] = report.failures;
    j["p_err_hat"] = report.p_err_hat;
    j["ci_low"] = report.ci_low;
    j["ci_high"] = report.ci_high;
    j["wall_time_s"] = report.wall_time_s;
    return j;
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::string out = "n,trials,failures,p_err,ci_low,ci_high\n";
    for (const SweepPoint& point : sweep.curve) {
        out += std::to_string(point.n) + ',' + std::to_string(point.report.trials) + ',' +
               std::to_string(point.report.failures) + ',' +
               format_double(point.report.p_err_hat) + ',' +
               format_double(point.report.ci_low) + ',' +
               format_double(point.report.ci_high) + '\n';
    }
    return out;
}

std::string regime_to_csv(const RegimeCheck& check) {
    std::string out = "p,k,lambda_sq,n_min,growth,ratio,delta_prev\n";
    std::size_t delta_index = 0;
    bool first_defined = true;
    for (const RegimeRow& row : check.rows) {
        out += std::to_string(row.p) + ',' + std::to_string(row.k) + ',' +
               format_double(row.lambda_sq) + ',' +
               (row.n_min ? std::to_string(*row.n_min) : std::string("unsatisfiable")) +
               ',' + format_double(row.growth) + ',' + format_double(row.ratio) + ',';
        if (row.n_min && !first_defined && delta_index < check.successive_delta.size()) {
            out += format_double(check.successive_delta[delta_index++]);
        }
        if (row.n_min) first_defined = false;
        out += '\n';
    }
    return out;
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string fnv1a_hex(const std::string& payload) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void append_run_record(const std::string& path, const RunRecord& record) {
    Json j;
    j["timestamp"] = record.timestamp;
    j["subcommand"] = record.subcommand;
    j["parameters"] = record.parameters;
    j["config_hash"] = record.config_hash;
    j["output_digest"] = record.output_digest;
    const std::string line = j.dump() + "\n";

    FILE* f = std::fopen(path.c_str(), "ab");
    if (!f) {
        throw std::runtime_error("cannot open run log: " + path + ": " +
                                 std::strerror(errno));
    }
    const int fd = fileno(f);
    if (flock(fd, LOCK_EX) != 0) {
        std::fclose(f);
        throw std::runtime_error("cannot lock run log: " + path);
    }
    std::fwrite(line.data(), 1, line.size(), f);
    std::fflush(f);
    flock(fd, LOCK_UN);
    std::fclose(f);
}

}  // namespace sprecov
