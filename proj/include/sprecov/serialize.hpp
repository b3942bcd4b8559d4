#pragma once

#include "sprecov/bounds.hpp"
#include "sprecov/recovery_sim.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace sprecov {

using Json = nlohmann::json;

/// Shortest exact decimal form of a double ('.' decimal point, C locale);
/// round-trips bit-exactly through strtod.
std::string format_double(double value);

// --- SpectrumSummary CSV: header "omega,S", one row per grid point ---
std::string spectrum_to_csv(const SpectrumSummary& spectrum);
SpectrumSummary spectrum_from_csv(std::istream& in);
SpectrumSummary load_spectrum_csv(const std::string& path);
void save_spectrum_csv(const SpectrumSummary& spectrum, const std::string& path);

// --- BoundResult ---
Json bound_to_json(const BoundResult& result);
std::string bound_to_csv(const BoundResult& result);

// --- SimReport / sweep curves ---
Json sim_report_to_json(const SimReport& report);
std::string sweep_to_csv(const SweepResult& sweep);

// --- Regime ratio tables ---
std::string regime_to_csv(const RegimeCheck& check);

/// Append-only line-delimited JSON run log, written under an exclusive
/// file lock.
struct RunRecord {
    std::string timestamp;   // ISO 8601 UTC
    std::string subcommand;
    Json parameters;
    std::string config_hash;   // hex
    std::string output_digest; // FNV-1a hex of the emitted table
};

std::string iso8601_utc_now();
std::string fnv1a_hex(const std::string& payload);
void append_run_record(const std::string& path, const RunRecord& record);

}  // namespace sprecov
