#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sprecov/serialize.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CommandResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const std::string out_path = "/tmp/sprecov_cli_out_" + std::to_string(counter);
    const std::string err_path = "/tmp/sprecov_cli_err_" + std::to_string(counter);
    ++counter;
    const std::string command = (env_prefix.empty() ? "" : env_prefix + " ") +
                                std::string(SPRECOV_CLI_PATH) + " " + args + " >" +
                                out_path + " 2>" + err_path;
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return result;
}

}  // namespace

TEST_CASE("bounds: cor1 example and output formats") {
    const CommandResult r = run_cli("bounds --p 10 --k 1 --lambda-sq 10 --theorem cor1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("n_min       : 2") != std::string::npos);

    const CommandResult json =
        run_cli("bounds --p 10 --k 1 --lambda-sq 10 --theorem cor1 --json");
    CHECK(json.exit_code == 0);
    const sprecov::Json j = sprecov::Json::parse(json.out);
    CHECK(j["n_min"] == 2);
    CHECK(j["theorem"] == "relaxed_sufficient");

    const CommandResult csv =
        run_cli("bounds --p 10 --k 1 --lambda-sq 10 --theorem wang --csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("theorem,p,k,lambda_sq,slack,n_min,m,lhs_or_f,rhs") == 0);
}

TEST_CASE("bounds: thm3 with G = 0 is a domain error (exit 2)") {
    const CommandResult r = run_cli("bounds --p 12 --k 3 --theorem thm3 --G 0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("unsatisfiable") != std::string::npos);
}

TEST_CASE("bounds: cor2 over a flat spectrum reports G = ln c") {
    // flat S = e^2 so G = 2
    const int n = 64;
    sprecov::SpectrumSummary flat;
    flat.omega_grid.resize(n);
    flat.values.resize(n);
    for (int j = 0; j < n; ++j) {
        flat.omega_grid[j] = 2.0 * std::numbers::pi * j / n;
        flat.values[j] = std::exp(2.0);
    }
    sprecov::save_spectrum_csv(flat, "/tmp/sprecov_flat.csv");
    const CommandResult r = run_cli(
        "bounds --p 16 --k 2 --theorem cor2 --spectrum /tmp/sprecov_flat.csv --json");
    CHECK(r.exit_code == 0);
    const sprecov::Json j = sprecov::Json::parse(r.out);
    CHECK(std::abs(j["G"].get<double>() - 2.0) <= 1e-12);
    CHECK(j["theorem"] == "szego_sufficient");
    std::remove("/tmp/sprecov_flat.csv");
}

TEST_CASE("bounds: usage errors exit 64") {
    CHECK(run_cli("bounds --p 10 --k 1 --theorem cor1").exit_code == 64);  // no lambda
    CHECK(run_cli("bounds --p 10 --k 1 --lambda-sq 1 --theorem nope").exit_code == 64);
    CHECK(run_cli("bounds --k 1 --lambda-sq 1").exit_code == 64);  // missing --p
    CHECK(run_cli("nonsense").exit_code == 64);
}

TEST_CASE("validate: spectrum suite runs seedless, wishart needs a seed") {
    const CommandResult spectrum = run_cli("validate --suite spectrum");
    CHECK(spectrum.exit_code == 0);
    CHECK(spectrum.out.find("[PASS]") != std::string::npos);
    CHECK(run_cli("validate --suite wishart --trials 500").exit_code == 64);
    CHECK(run_cli("validate --suite bogus --seed 1").exit_code == 64);
    CHECK(run_cli("validate --suite wishart --trials 0 --seed 1").exit_code == 64);
}

TEST_CASE("validate: wishart suite passes with an explicit seed") {
    const CommandResult r = run_cli("validate --suite wishart --trials 2000 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const CommandResult j =
        run_cli("validate --suite wishart --trials 500 --seed 7 --json");
    CHECK(j.exit_code == 0);
    const sprecov::Json parsed = sprecov::Json::parse(j.out);
    CHECK(parsed[0]["suite"] == "wishart");
    CHECK(parsed[0]["data"]["configurations"].size() == 4);
}

TEST_CASE("simulate: seeded run is reproducible and logged") {
    const std::string log = "/tmp/sprecov_test_log.jsonl";
    std::remove(log.c_str());
    const std::string args =
        "simulate --p 12 --k 2 --lambda-sq 1e6 --n-range 2:8 --trials 200 --seed 1 "
        "--epsilon 0.05 --out /tmp/sprecov_curve_a.csv --log " + log;
    const CommandResult a = run_cli(args);
    CHECK(a.exit_code == 0);
    // run-verified for this seed: ties at n=2 push the transition to n=4
    CHECK(a.out.find("n_star      : 4") != std::string::npos);
    CHECK(a.out.find("cor1 n_min  : 3") != std::string::npos);
    CHECK(a.out.find("wang n_min  : 3") != std::string::npos);

    const CommandResult b = run_cli(
        "simulate --p 12 --k 2 --lambda-sq 1e6 --n-range 2:8 --trials 200 --seed 1 "
        "--epsilon 0.05 --out /tmp/sprecov_curve_b.csv --log " + log);
    CHECK(b.exit_code == 0);
    CHECK(slurp("/tmp/sprecov_curve_a.csv") == slurp("/tmp/sprecov_curve_b.csv"));

    // the run log holds two records with identical digests
    std::ifstream in(log);
    std::string line;
    std::vector<std::string> digests;
    while (std::getline(in, line)) {
        digests.push_back(sprecov::Json::parse(line)["output_digest"]);
    }
    REQUIRE(digests.size() == 2);
    CHECK(digests[0] == digests[1]);
    std::remove(log.c_str());
    std::remove("/tmp/sprecov_curve_a.csv");
    std::remove("/tmp/sprecov_curve_b.csv");
}

TEST_CASE("simulate: epsilon = 1 accepts the first n") {
    const CommandResult r = run_cli(
        "simulate --p 10 --k 2 --lambda-sq 4 --n-range 3:5 --trials 20 --seed 2 "
        "--epsilon 1 --log /tmp/sprecov_eps_log.jsonl");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("n_star      : 3") != std::string::npos);
    std::remove("/tmp/sprecov_eps_log.jsonl");
}

TEST_CASE("simulate: enumeration cap exceeded exits 2 with the requirement") {
    const CommandResult r = run_cli(
        "simulate --p 40 --k 10 --lambda-sq 1 --n-range 4:6 --trials 10 --seed 1 "
        "--epsilon 0.5 --log /tmp/sprecov_cap_log.jsonl");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("847660528") != std::string::npos);
    std::remove("/tmp/sprecov_cap_log.jsonl");
}

TEST_CASE("simulate: usage errors exit 64") {
    CHECK(run_cli("simulate --p 12 --k 2 --lambda-sq 1 --n-range 5:3 --trials 10 "
                  "--seed 1 --epsilon 0.1").exit_code == 64);
    CHECK(run_cli("simulate --p 12 --k 2 --lambda-sq 1 --n-range 2:6 --trials 10 "
                  "--epsilon 0.1").exit_code == 64);  // no seed
    CHECK(run_cli("simulate --p 12 --k 2 --lambda-sq 1 --n-range 2:6 --trials 10 "
                  "--seed 1 --epsilon 0.1 --metric sideways").exit_code == 64);
}

TEST_CASE("regimes: stable row exits 0 and writes the table") {
    const CommandResult r = run_cli(
        "regimes --row 3 --p-min 256 --p-max 4096 --out /tmp/sprecov_regime.csv");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp("/tmp/sprecov_regime.csv");
    CHECK(csv.find("p,k,lambda_sq,n_min,growth,ratio,delta_prev") == 0);
    CHECK(csv.find("\n4096,1024,1,") != std::string::npos);
    std::remove("/tmp/sprecov_regime.csv");
}

TEST_CASE("regimes: malformed ranges exit 64") {
    CHECK(run_cli("regimes --row 3 --p-min 256 --p-max 256").exit_code == 64);
    CHECK(run_cli("regimes --row 3 --p-min 100 --p-max 1600").exit_code == 64);
    CHECK(run_cli("regimes --row 9 --p-min 256 --p-max 4096").exit_code == 64);
}

TEST_CASE("spectrum CSV written by the library is accepted by the CLI") {
    // exercises the cor2 ingestion path end to end with a model spectrum
    const sprecov::ReducedProblem rp{24, 4, 4, 2};
    const sprecov::SignalModel sm{3.0, 0.0};
    const sprecov::SpectrumSummary spectrum = sprecov::power_spectrum_dtft(rp, sm);
    sprecov::save_spectrum_csv(spectrum, "/tmp/sprecov_model_spec.csv");
    const CommandResult r = run_cli(
        "bounds --p 24 --k 4 --theorem thm3 --spectrum /tmp/sprecov_model_spec.csv "
        "--json");
    CHECK(r.exit_code == 0);
    const sprecov::Json j = sprecov::Json::parse(r.out);
    CHECK(std::abs(j["G"].get<double>() - spectrum.g_inf) <= 1e-15);
    std::remove("/tmp/sprecov_model_spec.csv");
}

TEST_CASE("regimes: short unstable range exits 1 but still writes the table") {
    const CommandResult r = run_cli(
        "regimes --row 3 --p-min 256 --p-max 2048 --out /tmp/sprecov_unstable.csv");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("drift") != std::string::npos);
    CHECK(slurp("/tmp/sprecov_unstable.csv")
              .find("p,k,lambda_sq,n_min,growth,ratio,delta_prev") == 0);
    std::remove("/tmp/sprecov_unstable.csv");
}

TEST_CASE("validate: all suites pass together") {
    const CommandResult r = run_cli("validate --suite all --trials 1500 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("suite wishart:") != std::string::npos);
    CHECK(r.out.find("suite spectrum:") != std::string::npos);
    CHECK(r.out.find("suite mi-bound:") != std::string::npos);
    CHECK(r.out.find("FAIL]") == std::string::npos);
}

TEST_CASE("simulate: SPRECOV_LOG environment variable selects the run log") {
    const std::string log = "/tmp/sprecov_env_log.jsonl";
    std::remove(log.c_str());
    const CommandResult r = run_cli(
        "simulate --p 10 --k 2 --lambda-sq 9 --n-range 4:5 --trials 10 --seed 4 "
        "--epsilon 1",
        "SPRECOV_LOG=" + log);
    CHECK(r.exit_code == 0);
    std::ifstream in(log);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(sprecov::Json::parse(line)["subcommand"] == "simulate");
    std::remove(log.c_str());
}

TEST_CASE("simulate: non-numeric n-range is a usage error") {
    CHECK(run_cli("simulate --p 12 --k 2 --lambda-sq 1 --n-range foo:bar --trials 10 "
                  "--seed 1 --epsilon 0.1").exit_code == 64);
    CHECK(run_cli("simulate --p 12 --k 2 --lambda-sq 1 --n-range 2:6x --trials 10 "
                  "--seed 1 --epsilon 0.1").exit_code == 64);
}
