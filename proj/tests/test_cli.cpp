#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(ANOMALIA_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/anomalia_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("anomaly verb emits the full report") {
    auto r = run("anomaly -c 8 -n 3");
    CHECK(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["anomaly_index"] == 2);
    CHECK(j["anomalous"] == true);
    CHECK(j["spectrum"][0] == "8/9");
}

TEST_CASE("spectrum verb emits the sorted value list") {
    auto r = run("spectrum -c 24 -n 9");
    CHECK(r.exit_code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 9);
    CHECK(j[0] == "0");
    CHECK(j[8] == "8/9");
}

TEST_CASE("deterministic output") {
    auto a = run("anomaly --sweep k=1..2,n=1..4");
    auto b = run("anomaly --sweep k=1..2,n=1..4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
    CHECK(run("nonsense-verb").exit_code == 2);
    CHECK(run("anomaly -c 7 -n 3").exit_code == 2);   // c not a multiple of 8
    CHECK(run("anomaly -c 8 -n 0").exit_code == 2);   // bad cycle length
    CHECK(run("figure -c 8 -n 4").exit_code == 2);    // grid needs 3 | n
    CHECK(run("anomaly --sweep k=1..2").exit_code == 2);
    const auto big = temp_file(
        "big.json", R"({"group":{"factors":[200,200]},"q_diag":["0","0"],)"
                    R"("pairing":[["0","1/200"],["1/200","0"]]})");
    CHECK(run("lagrangians --input " + big + " --max-order 100").exit_code == 3);
}

TEST_CASE("classify and lagrangians on files") {
    const auto q0 = temp_file("q0.json",
                              R"({"group":{"factors":[3,3]},"q_diag":["0","0"],)"
                              R"("pairing":[["0","1/3"],["1/3","0"]]})");
    auto r = run("classify --input " + q0);
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["nondegenerate"] == true);
    CHECK(j["signature"] == 0);
    CHECK(j["lagrangian_count"] == 2);
    CHECK(j["canonical_factors"] == json::array({3, 3}));

    auto r2 = run("lagrangians --input " + q0);
    CHECK(json::parse(r2.out)["count"] == 2);

    const auto q1 = temp_file("q1.json", R"({"group":{"factors":[9]},"q_diag":["4/9"],)"
                                         R"("pairing":[["8/9"]]})");
    auto r3 = run("lagrangians --input " + q1);
    CHECK(json::parse(r3.out)["count"] == 1);

    // isomorphism test through --against: x^2/9 vs 4x^2/9
    const auto q1b = temp_file("q1b.json", R"({"group":{"factors":[9]},"q_diag":["1/9"],)"
                                           R"("pairing":[["2/9"]]})");
    auto r4 = run("classify --input " + q1 + " --against " + q1b);
    CHECK(json::parse(r4.out)["isomorphic"] == true);
}

TEST_CASE("double then boxplus pipeline") {
    auto d1 = run("double -n 3 -j 1");
    auto d2 = run("double -n 3 -j 2");
    CHECK(d1.exit_code == 0);
    CHECK(json::parse(d1.out)["anomaly_index"] == 1);
    const auto f1 = temp_file("d1.json", d1.out);
    const auto f2 = temp_file("d2.json", d2.out);
    auto sum = run("boxplus --lhs " + f1 + " --rhs " + f2);
    CHECK(sum.exit_code == 0);
    CHECK(json::parse(sum.out)["anomaly_index"] == 0);
}

TEST_CASE("extension JSON round trips through the CLI") {
    auto d = run("double -n 4 -j 3");
    const auto f = temp_file("d43.json", d.out);
    const auto unit = temp_file("unit4.json", run("double -n 4 -j 0").out);
    auto sum = run("boxplus --lhs " + f + " --rhs " + unit);
    CHECK(json::parse(sum.out)["anomaly_index"] == 3);
}

TEST_CASE("figure emits grid data with the gravitational shear") {
    auto r = run("figure -n 9 -c 24");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["shear"] == 0);
    CHECK(j["points"].size() == 81);
    CHECK(j["period_vectors"][0] == json::array({9, 0}));

    auto r8 = run("figure -n 9 -c 8");
    auto j8 = json::parse(r8.out);
    CHECK(j8["shear"] == 1);
    CHECK(j8["slope"] == "1/3");
    CHECK(j8["period_vectors"][0] == json::array({9, 3}));

    CHECK(json::parse(run("figure -n 3 -c 48").out)["shear"] == 0);

    auto csv = run("figure -n 3 -c 8 --format csv");
    CHECK(csv.out.find("point,0,0") != std::string::npos);
    auto svg = run("figure -n 3 -c 8 --format svg");
    CHECK(svg.out.find("<svg") != std::string::npos);
}

TEST_CASE("environment variable bound") {
    const auto q0 = temp_file("env_q0.json",
                              R"({"group":{"factors":[3,3]},"q_diag":["0","0"],)"
                              R"("pairing":[["0","1/3"],["1/3","0"]]})");
    const std::string cmd = std::string("ANOMALIA_MAX_ORDER=5 ") + ANOMALIA_CLI_PATH +
                            " lagrangians --input " + q0 + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 256> buf{};
    while (std::fread(buf.data(), 1, buf.size(), pipe) > 0) {}
    CHECK(WEXITSTATUS(pclose(pipe)) == 3);
}
