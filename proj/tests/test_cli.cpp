#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
    const char* env = std::getenv("COLEXCODE_BIN");
    REQUIRE(env != nullptr);
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    std::string command = env_prefix + cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer{};
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path temp_file(const char* name) { return fs::temp_directory_path() / name; }

// Timing fields are the only nondeterministic report content.
std::string strip_timing(std::string text) {
    nlohmann::json j = nlohmann::json::parse(text);
    j.erase("elapsed_ms");
    return j.dump(2);
}

}  // namespace

TEST_CASE("build writes lattice files with the expected counts") {
    auto tetra = temp_file("cli_tetra.json");
    RunResult r = run("build tetra -o " + tetra.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("15 sites") != std::string::npos);

    auto tess = temp_file("cli_tesseract.json");
    r = run("build tesseract -o " + tess.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("16 sites") != std::string::npos);

    auto torus = temp_file("cli_torus.json");
    r = run("build torus -L 2 -o " + torus.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("96 sites") != std::string::npos);
}

TEST_CASE("build torus with an odd period exits 2") {
    RunResult r = run("build torus -L 3 -o /dev/null");
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown target exits 2") {
    RunResult r = run("build cube -o /dev/null");
    CHECK(r.exit_code == 2);
}

TEST_CASE("verify all on the tetrahedral lattice passes and reports the distance flag") {
    auto tetra = temp_file("cli_tetra_verify.json");
    REQUIRE(run("build tetra -o " + tetra.string()).exit_code == 0);
    RunResult r = run("verify " + tetra.string() + " --suite all --paper-claims");
    CHECK(r.exit_code == 0);
    nlohmann::json report = nlohmann::json::parse(r.output);
    CHECK(report["command"] == "verify");
    bool saw_distance_flag = false;
    for (const auto& check : report["checks"]) {
        CHECK(check["outcome"] != "fail");
        if (check["name"] == "distance_vs_paper") {
            saw_distance_flag = true;
            CHECK(check["outcome"] == "disagrees");
            CHECK(check["details"]["computed"] == 3);
            CHECK(check["details"]["claimed"] == 5);
        }
    }
    CHECK(saw_distance_flag);
}

TEST_CASE("verify code on the tesseract reports k = 0") {
    auto tess = temp_file("cli_tess_verify.json");
    REQUIRE(run("build tesseract -o " + tess.string()).exit_code == 0);
    RunResult r = run("verify " + tess.string() + " --suite code");
    CHECK(r.exit_code == 0);
    nlohmann::json report = nlohmann::json::parse(r.output);
    bool saw_code = false;
    for (const auto& check : report["checks"])
        if (check["name"] == "code") {
            saw_code = true;
            CHECK(check["details"]["k"] == 0);
        }
    CHECK(saw_code);
}

TEST_CASE("verify with an unknown suite exits 2") {
    auto tetra = temp_file("cli_tetra_badsuite.json");
    REQUIRE(run("build tetra -o " + tetra.string()).exit_code == 0);
    RunResult r = run("verify " + tetra.string() + " --suite bogus");
    CHECK(r.exit_code == 2);
}

TEST_CASE("verify a missing file exits 3") {
    RunResult r = run("verify /nonexistent/lattice.json --suite axioms");
    CHECK(r.exit_code == 3);
}

TEST_CASE("decode-sim rejects out-of-range error rates with exit 2") {
    auto tetra = temp_file("cli_tetra_badp.json");
    REQUIRE(run("build tetra -o " + tetra.string()).exit_code == 0);
    RunResult r = run("decode-sim " + tetra.string() + " --p 0.6 --trials 10");
    CHECK(r.exit_code == 2);
}

TEST_CASE("verify a corrupted file exits 3") {
    auto bad = temp_file("cli_corrupt.json");
    {
        std::ofstream out(bad);
        out << R"({"version":1,"n_sites":3,"links":[[0,1,"r"],[1,2,"g"]],"closed":true})";
    }
    RunResult r = run("verify " + bad.string() + " --suite axioms");
    CHECK(r.exit_code == 3);
}

TEST_CASE("verify reports are byte-identical apart from timing") {
    auto tetra = temp_file("cli_tetra_repro.json");
    REQUIRE(run("build tetra -o " + tetra.string()).exit_code == 0);
    RunResult a = run("verify " + tetra.string() + " --suite code");
    RunResult b = run("verify " + tetra.string() + " --suite code");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(strip_timing(a.output) == strip_timing(b.output));
}

TEST_CASE("decode-sim is reproducible and honors the k = 1 guard") {
    auto tetra = temp_file("cli_tetra_sim.json");
    REQUIRE(run("build tetra -o " + tetra.string()).exit_code == 0);

    std::string args = "decode-sim " + tetra.string() +
                       " --p 0.005 --p 0.01 --p 0.02 --trials 2000 --seed 42";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);  // JSON lines carry no timing fields

    int lines = 0;
    std::istringstream stream(a.output);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        ++lines;
        nlohmann::json j = nlohmann::json::parse(line);
        CHECK(j["seed"] == 42);
        CHECK(j["rng_id"] == "xoshiro256ss-splitmix64");
    }
    CHECK(lines == 3);

    auto torus = temp_file("cli_torus_sim.json");
    REQUIRE(run("build torus -L 2 -o " + torus.string()).exit_code == 0);
    RunResult guard = run("decode-sim " + torus.string() + " --trials 10");
    CHECK(guard.exit_code == 2);
}

TEST_CASE("decode-sim results do not depend on the worker count") {
    auto tetra = temp_file("cli_tetra_threads.json");
    REQUIRE(run("build tetra -o " + tetra.string()).exit_code == 0);
    std::string args = "decode-sim " + tetra.string() + " --p 0.01 --trials 4000 --seed 9";
    RunResult single = run(args, "COLEXCODE_THREADS=1 ");
    RunResult multi = run(args, "COLEXCODE_THREADS=3 ");
    CHECK(single.exit_code == 0);
    CHECK(single.output == multi.output);
}

TEST_CASE("decode-sim at p = 0 reports zero failures") {
    auto tetra = temp_file("cli_tetra_p0.json");
    REQUIRE(run("build tetra -o " + tetra.string()).exit_code == 0);
    RunResult r = run("decode-sim " + tetra.string() + " --p 0 --trials 1000 --seed 1");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["failures"] == 0);
}
