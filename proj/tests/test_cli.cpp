#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CHEBDYN_CLI
#error "CHEBDYN_CLI must point at the built executable"
#endif

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(CHEBDYN_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, VerifyFigureInstance) {
    const CliRun r = run("verify --ell 3 --p 53 --n 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("27 periodic / 53; all rows match"), std::string::npos) << r.out;
}

TEST(Cli, VerifyFlagsPrintedFigure) {
    const CliRun r = run("verify --ell 2 --p 3 --n 4");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("printed figure differs"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("41"), std::string::npos);
}

TEST(Cli, FactorWorkedExample) {
    const CliRun r = run("factor --ell 2 --p 13 --n 1 --t 105 --format json");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"match\": true"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"count\": 2"), std::string::npos);
}

TEST(Cli, DecomposeRefusesRamified) {
    EXPECT_EQ(run("decompose --ell 2 --t 105 --p 103").code, 3);
    EXPECT_EQ(run("decompose --ell 2 --t 105 --p 13 --max-level 3").code, 0);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("graph --ell 3 --p 3").code, 3);             // p = ell
    EXPECT_EQ(run("graph --ell 3 --p 53 --n 6").code, 3);      // over the enumeration cap
    EXPECT_EQ(run("graph --ell 3 --p 53 --n 2 --cap 100").code, 3);
    EXPECT_EQ(run("graph --ell 4 --p 53").code, 2);            // ell not prime
    EXPECT_EQ(run("graph --ell 3 --p 51").code, 2);
    EXPECT_EQ(run("graph --ell 3").code, 2);                   // missing --p
    EXPECT_EQ(run("graph --ell 3 --p 53 --format xml").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("predict --ell 3 --p 53 --n 40").code, 3);   // p^n beyond 2^96
    EXPECT_EQ(run("graph --ell 3 --p 53 --dot /dev/null --component 5").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, GoldenGraphTable) {
    const CliRun r = run("graph --ell 3 --p 53 --n 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(std::filesystem::path(CHEBDYN_GOLDEN_DIR) / "graph_3_53_1.txt"));
}

TEST(Cli, GoldenPredictWeights) {
    const CliRun r = run("predict --ell 3 --p 53 --weights 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(std::filesystem::path(CHEBDYN_GOLDEN_DIR) / "weights_3_53_2.txt"));
}

TEST(Cli, PredictMatchesGraphJson) {
    const CliRun g = run("graph --ell 2 --p 3 --n 4 --format json");
    const CliRun p = run("predict --ell 2 --p 3 --n 4 --format json");
    ASSERT_EQ(g.code, 0);
    ASSERT_EQ(p.code, 0);
    EXPECT_EQ(nlohmann::json::parse(p.out).at("summary"), nlohmann::json::parse(g.out));
}

TEST(Cli, DotAndOutFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "chebdyn_cli_test";
    std::filesystem::create_directories(dir);
    const auto dot = dir / "g.dot", out = dir / "g.txt";
    const CliRun r = run("graph --ell 2 --p 3 --n 1 --dot " + dot.string() + " --out " + out.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    const std::string d = slurp(dot);
    EXPECT_NE(d.find("0 -> 1;"), std::string::npos);
    EXPECT_NE(d.find("2 -> 2;"), std::string::npos);
    EXPECT_NE(slurp(out).find("Divisor"), std::string::npos);
    const CliRun c = run("graph --ell 3 --p 53 --dot " + dot.string() + " --component 2^2*13");
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(slurp(dot).find("digraph G_3_53_1"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Cli, DensityReport) {
    const CliRun r = run("density --ell 3 --p 53 --n 1 --format json");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"density\": \"27/53\""), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"tower_limit\": \"1/2\""), std::string::npos);
}

TEST(Cli, Deterministic) {
    for (const char* args : {"graph --ell 5 --p 11 --n 2", "factor --ell 3 --p 17 --n 3 --t 4", "verify --ell 2 --p 7 --n 3 --format json"}) {
        const CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out) << args;
    }
}
