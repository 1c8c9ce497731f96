#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    std::string cmd = std::string("\"") + TCDARK_CLI_PATH + "\" " + args +
                      " > cli_stdout.txt 2> cli_stderr.txt";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp("cli_stdout.txt");
    r.err = slurp("cli_stderr.txt");
    return r;
}

nlohmann::json run_json(const std::string& args) {
    RunResult r = run(args);
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("help and arg errors map to the documented exit codes") {
    CHECK(run("--help").code == 0);
    CHECK(run("").code == 2);                    // a subcommand is required
    CHECK(run("dim").code == 2);                 // --n-max is required
    CHECK(run("dim --n-max 0").code == 2);       // range violation
    CHECK(run("dim --n-max 4 --bogus").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("dim table carries the closed-form and exact kernel dimensions") {
    auto j = run_json("dim --n-max 5 --exact");
    CHECK(j["command"] == "dim");
    CHECK(j["artifact"].contains("version"));
    bool found = false;
    for (const auto& row : j["table"]) {
        CHECK(row["match"].get<bool>());
        CHECK(row["dimension"].get<long long>() == row["kernel_dimension"].get<long long>());
        if (row["n"] == 4 && row["k"] == 2) {
            found = true;
            CHECK(row["dimension"] == 2);
        }
    }
    CHECK(found);
    CHECK(j["table"].size() == 20);  // sum of (n+1) for n = 1..5
}

TEST_CASE("dark-basis reports the two-atom singlet") {
    auto j = run_json("dark-basis --n 2 --k 1");
    CHECK(j["basis"]["dimension"] == 1);
    CHECK(j["basis"]["sector_states"] == nlohmann::json::array({"01", "10"}));
    CHECK(j["basis"]["vectors"][0]["amplitudes"] == nlohmann::json::array({"1", "-1"}));
    CHECK(j["basis"]["vectors"][0]["integer_scaled"] == nlohmann::json::array({"1", "-1"}));
}

TEST_CASE("unequal couplings tilt the dark vector") {
    auto j = run_json("dark-basis --n 2 --k 1 --g 3,5");
    CHECK(j["basis"]["vectors"][0]["integer_scaled"] == nlohmann::json::array({"3", "-5"}));
}

TEST_CASE("output files are byte-identical across runs") {
    REQUIRE(run("dark-basis --n 4 --k 2 -o cli_a.json").code == 0);
    REQUIRE(run("dark-basis --n 4 --k 2 -o cli_b.json").code == 0);
    std::string a = slurp("cli_a.json");
    std::string b = slurp("cli_b.json");
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("witness certifies its own image") {
    auto j = run_json("witness --n 4 --k 2 --j0 1000");
    CHECK(j["certified"].get<bool>());
    CHECK(j["amplitudes"].size() == 6);
    // weight mismatch between --j0 and k-1 is a usage error
    CHECK(run("witness --n 4 --k 2 --j0 1100").code == 2);
}

TEST_CASE("matchings cross-checks the restricted family against the dimension") {
    auto j = run_json("matchings --n 4 --k 2");
    CHECK(j["matches_dark_dimension"].get<bool>());
    CHECK(j["matchings"]["count"] == 2);
    auto all = run_json("matchings --n 4 --k 2 --family all");
    CHECK(all["matchings"]["count"] == 3);
    CHECK_FALSE(all.contains("matches_dark_dimension"));
}

TEST_CASE("singlet-decompose is exact on dark basis vectors") {
    auto j = run_json("singlet-decompose --n 4 --k 2 --dark-index 0");
    CHECK(j["decomposition"]["exact"].get<bool>());
    CHECK(j["decomposition"]["residual_sq"] == "0");
    // explicit amplitudes work too, and the two input modes are exclusive
    auto k = run_json("singlet-decompose --n 2 --k 1 --amps 1,-1");
    CHECK(k["decomposition"]["exact"].get<bool>());
    CHECK(run("singlet-decompose --n 4 --k 2 --amps 1,0,0,0,0,0 --dark-index 0").code == 2);
}

TEST_CASE("quanta-check reports exact cancellation for a dark state") {
    auto j = run_json("quanta-check --n 2 --k 1 --amps 1,-1 --eps-lo 3 --eps-hi 5");
    CHECK(j["connected"].get<bool>());
    REQUIRE(j["runs"].size() == 3);
    for (const auto& r : j["runs"]) {
        CHECK(r["condition_q"].get<bool>());
        CHECK(r["cancelled_fraction"].get<double>() == 1.0);
        CHECK(r["shift_error"].get<double>() == 0.0);
        CHECK(r["nu"].get<long long>() > 0);
    }
    CHECK(run("quanta-check --n 2 --k 1 --eps-lo 9 --eps-hi 3").code == 2);
}

TEST_CASE("evolve keeps a dark state quiet and writes a profile CSV") {
    auto j = run_json("evolve --model rwa --n 2 --initial dark:1:0 --horizon 5 --steps 50 "
                      "--csv cli_profile.csv");
    CHECK(j["profile"]["max_leakage"].get<double>() <= 1e-10);
    CHECK(j["final_norm"].get<double>() == doctest::Approx(1.0));
    CHECK(j["profile"]["samples"] == 51);
    std::string csv = slurp("cli_profile.csv");
    CHECK(csv.rfind("time,photon_expectation,atomic_excitation\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 52);  // header + 51 samples
    // the superposition |11>-|00> spans two excitation blocks
    CHECK(run("evolve --model rwa --n 2 --initial almost-dark").code == 2);
}

TEST_CASE("scan emits one point per frequency with convergence flags") {
    auto j = run_json("almost-dark-scan --omega-list 1,1/2 --m-max 4 --steps 60 --horizon 10");
    REQUIRE(j["points"].size() == 2);
    CHECK(j["points"][0]["omega_a"].get<double>() == 1.0);
    CHECK(j["points"][1]["omega_a"].get<double>() == 0.5);
    for (const auto& p : j["points"]) {
        CHECK(p.contains("max_leakage"));
        CHECK(p.contains("cutoff_converged"));
    }
    CHECK(j.contains("monotone_nonincreasing"));
}

TEST_CASE("verify runs clean at small scale") {
    RunResult r = run("verify --n-max 3 --skip-dynamics");
    CHECK(r.code == 0);
    CHECK(r.out.find("[ok]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}
