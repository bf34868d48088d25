// Copyright 2026 The gptsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the gptsim binary: exit codes, report structure,
// numeric round-tripping, reproducibility.

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstring>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

#ifndef GPTSIM_CLI_PATH
#define GPTSIM_CLI_PATH "gptsim"
#endif
#ifndef GPTSIM_FIXTURE_DIR
#define GPTSIM_FIXTURE_DIR "fixtures"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(GPTSIM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) {
        r.out.append(buf, n);
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(GPTSIM_FIXTURE_DIR) + "/" + name;
}

nlohmann::json report_of(const RunResult& r) {
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("validate: builtin classical theory is valid and causal, exit 0") {
    RunResult r = run_cli("validate builtin:classical2");
    CHECK(r.exit_code == 0);
    auto rep = report_of(r);
    CHECK(rep["results"]["valid"] == true);
    CHECK(rep["results"]["causal"] == true);
    CHECK(rep["inputs"].size() == 1);
}

TEST_CASE("validate: malformed JSON exits 2") {
    RunResult r = run_cli("validate " + fixture("malformed.json"));
    CHECK(r.exit_code == 2);
    auto rep = report_of(r);
    CHECK_FALSE(rep["diagnostics"].empty());
}

TEST_CASE("validate: the non-causal theory is valid but not causal, exit 0") {
    RunResult r = run_cli("validate " + fixture("noncausal_theory.json"));
    CHECK(r.exit_code == 0);
    auto rep = report_of(r);
    CHECK(rep["results"]["valid"] == true);
    CHECK(rep["results"]["causal"] == false);
    CHECK_FALSE(rep["results"]["violations"].empty());
}

TEST_CASE("validate: circuit against theory") {
    RunResult r = run_cli("validate builtin:qubits2 " + fixture("bell.json"));
    CHECK(r.exit_code == 0);
    CHECK(report_of(r)["results"]["circuit_valid"] == true);
}

TEST_CASE("eval: Bell distribution across engines") {
    for (const std::string engine : {"dense", "pathsum"}) {
        RunResult r = run_cli("eval " + fixture("bell.json") + " --distribution --engine=" + engine);
        REQUIRE(r.exit_code == 0);
        auto dist = report_of(r)["results"]["distribution"];
        REQUIRE(dist.size() == 4);
        CHECK(std::abs(dist[0]["p"].get<double>() - 0.5) <= 1e-9);
        CHECK(std::abs(dist[1]["p"].get<double>()) <= 1e-9);
        CHECK(std::abs(dist[2]["p"].get<double>()) <= 1e-9);
        CHECK(std::abs(dist[3]["p"].get<double>() - 0.5) <= 1e-9);
        CHECK(dist[0]["outcome"] == nlohmann::json::array({0, 0, 0}));
        CHECK(dist[3]["outcome"] == nlohmann::json::array({0, 1, 1}));
    }
}

TEST_CASE("eval: exact engine reports integers") {
    RunResult r = run_cli("eval " + fixture("bell.json") +
                          " --engine=exact --exponent=20 --outcome=0,0,0");
    REQUIRE(r.exit_code == 0);
    auto ev = report_of(r)["results"]["evaluation"];
    CHECK(ev["exp"] == 60);  // 20 * 3 gates
    CHECK(std::abs(ev["p"].get<double>() - 0.5) <= std::ldexp(1.0, -18));
    // f is serialised as a decimal string
    CHECK(ev["f"].is_string());
    // reproducible across invocations
    RunResult r2 = run_cli("eval " + fixture("bell.json") +
                           " --engine=exact --exponent=20 --outcome=0,0,0");
    CHECK(report_of(r2)["results"]["evaluation"]["f"] == ev["f"]);
}

TEST_CASE("eval: outcome distribution respects the enumeration cap") {
    RunResult r = run_cli("eval " + fixture("two_coins.json") + " --distribution",
                          "GPTSIM_MAX_ENUM=8");
    CHECK(r.exit_code == 3);
}

TEST_CASE("accept: always-accepting rule is in-language") {
    RunResult r = run_cli("accept " + fixture("bell.json") + " " + fixture("rule_equal.json"));
    REQUIRE(r.exit_code == 0);
    auto res = report_of(r)["results"];
    CHECK(std::abs(res["p_accept"].get<double>() - 1.0) <= 1e-9);
    CHECK(res["verdict"] == "in-language");
}

TEST_CASE("accept: Bell post-selection is deterministic") {
    RunResult r = run_cli("accept " + fixture("bell.json") + " " + fixture("rule_m2_zero.json") +
                          " --postselect=" + fixture("rule_m1_zero.json") + " --threshold=0.1");
    REQUIRE(r.exit_code == 0);
    auto res = report_of(r)["results"];
    CHECK(std::abs(res["p_accept"].get<double>() - 1.0) <= 1e-9);
    CHECK(std::abs(res["postselect"]["p_sel"].get<double>() - 0.5) <= 1e-9);
}

TEST_CASE("accept: exact post-selection reports the integer ratio") {
    RunResult r = run_cli("accept " + fixture("two_coins.json") + " " +
                          fixture("rule_c2_zero.json") + " --postselect=" +
                          fixture("rule_c1_zero.json") + " --threshold=0.1 --engine=exact");
    REQUIRE(r.exit_code == 0);
    auto res = report_of(r)["results"];
    CHECK(std::abs(res["p_accept"].get<double>() - 0.5) <= 1e-12);
    CHECK(res["postselect"]["l"].is_string());
    CHECK(res["postselect"]["h"].is_string());
}

TEST_CASE("accept: impossible selector exits 4") {
    RunResult r = run_cli("accept " + fixture("two_coins.json") + " " +
                          fixture("rule_c2_zero.json") + " --postselect=" +
                          fixture("rule_never.json") + " --threshold=0.1");
    CHECK(r.exit_code == 4);
}

TEST_CASE("accept: threshold guard exits 4 and reports the measured P(S)") {
    RunResult r = run_cli("accept " + fixture("two_coins.json") + " " +
                          fixture("rule_c2_zero.json") + " --postselect=" +
                          fixture("rule_c1_zero.json") + " --threshold=0.9");
    CHECK(r.exit_code == 4);
    auto rep = report_of(r);
    std::string msg = rep["diagnostics"][0]["message"].get<std::string>();
    CHECK(msg.find("0.5") != std::string::npos);
}

TEST_CASE("approx: certificate holds on the Bell circuit") {
    RunResult r = run_cli("approx " + fixture("bell.json") + " --eps=0.00390625");
    REQUIRE(r.exit_code == 0);
    auto res = report_of(r)["results"];
    CHECK(res["all_within_bound"] == true);
    CHECK(res["certificate"]["q"] == 3);
    CHECK(res["max_abs_err"].get<double>() <= res["certificate"]["bound"].get<double>());
}

TEST_CASE("approx: dyadic circuit at matching eps has zero error") {
    RunResult r = run_cli("approx " + fixture("two_coins.json") + " --eps=0.0625");
    REQUIRE(r.exit_code == 0);
    CHECK(report_of(r)["results"]["max_abs_err"].get<double>() == 0.0);
}

TEST_CASE("approx: eps out of range exits 2") {
    RunResult r = run_cli("approx " + fixture("bell.json") + " --eps=1.5");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sample: seeded runs are reproducible") {
    std::string cmd = "sample " + fixture("program_coin.json") + " " +
                      fixture("oracle_parity.json") + " --runs=2000 --seed=7";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    double fa = report_of(a)["results"]["frequency"].get<double>();
    double fb = report_of(b)["results"]["frequency"].get<double>();
    CHECK(fa == fb);
    CHECK(fa >= 0.45);
    CHECK(fa <= 0.55);
}

TEST_CASE("sample: oracle-or program always accepts") {
    RunResult r = run_cli("sample " + fixture("program_oracle_or.json") + " " +
                          fixture("oracle_table01.json") + " --runs=50 --seed=1");
    REQUIRE(r.exit_code == 0);
    auto res = report_of(r)["results"];
    CHECK(res["frequency"].get<double>() == 1.0);
    CHECK(res["total_queries"].get<long long>() == 100);  // two queries per run
}

TEST_CASE("sample: majority program matches the exact binomial") {
    RunResult r = run_cli("sample " + fixture("program_majority.json") + " " +
                          fixture("oracle_parity.json") + " --runs=20000 --seed=11");
    REQUIRE(r.exit_code == 0);
    double f = report_of(r)["results"]["frequency"].get<double>();
    CHECK(std::abs(f - 20.0 / 27.0) < 0.02);
}

TEST_CASE("sample: non-causal theory exits 5") {
    std::string prog = fixture("program_noncausal.json");
    RunResult r = run_cli("sample " + prog + " " + fixture("oracle_parity.json") + " --runs=10");
    CHECK(r.exit_code == 5);
}

TEST_CASE("reports round-trip numerically") {
    RunResult r = run_cli("eval " + fixture("bell.json") + " --distribution");
    REQUIRE(r.exit_code == 0);
    auto first = nlohmann::json::parse(r.out);
    auto second = nlohmann::json::parse(first.dump());
    for (std::size_t i = 0; i < 4; ++i) {
        double a = first["results"]["distribution"][i]["p"].get<double>();
        double b = second["results"]["distribution"][i]["p"].get<double>();
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);  // bit-exact
    }
}

TEST_CASE("human output is a table, not JSON") {
    RunResult r = run_cli("--human eval " + fixture("bell.json") + " --distribution");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("0,0,0") != std::string::npos);
    CHECK_THROWS(nlohmann::json::parse(r.out));
}
