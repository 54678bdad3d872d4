#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dimer;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const char* base = std::getenv("DIMER_TEST_TMP");
    fs::path dir = fs::path(base ? base : fs::temp_directory_path().string()) / "cli_scratch";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string write_config(const std::string& name, const std::string& body) {
    const auto p = scratch(name);
    std::ofstream(p) << body;
    return p.string();
}

const std::string kSingleZero =
    R"({"epsilon1": 0, "epsilon2": 20, "J": 10, "N1": 1, "alpha1": 250, "gamma1": 0,
        "N2": 20, "alpha2": 250, "gamma2": 0, "q": 0, "zero_temperature": true})";
const std::string kSingleWarm =
    R"({"epsilon1": 0, "epsilon2": 20, "J": 10, "N1": 1, "alpha1": 250, "gamma1": 0,
        "N2": 20, "alpha2": 250, "gamma2": 2, "q": 0, "temperature_kelvin": 77})";
const std::string kSmall =
    R"({"epsilon1": 2, "epsilon2": 9, "J": 4, "N1": 3, "alpha1": 120, "gamma1": 1.5,
        "N2": 3, "alpha2": 90, "gamma2": -2, "q": 12, "temperature_kelvin": 77})";

TEST(Cli, ValidateAcceptsAndRejects) {
    EXPECT_EQ(run({"validate", "--config", write_config("ok.json", kSingleZero)}).code, 0);
    const auto bad = run({"validate", "--config",
                          write_config("bad.json", R"({"epsilon1": 0, "epsilon2": 20, "J": 0, "N1": 0,
        "alpha1": 250, "gamma1": 0, "N2": 20, "alpha2": 250, "gamma2": 0, "q": 0, "temperature_kelvin": -3})")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("J must be nonzero"), std::string::npos);
    EXPECT_NE(bad.err.find("N1 must be at least 1"), std::string::npos);
    EXPECT_NE(bad.err.find("temperature must be positive"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"zero-temp", "--config", write_config("ok.json", kSingleZero), "--bogus"}).code, 2);
    EXPECT_EQ(run({"validate", "--config", scratch("missing.json").string()}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ZeroTempCurve) {
    const auto csv = scratch("zero.csv");
    const auto r = run({"zero-temp", "--config", write_config("ok.json", kSingleZero), "--t-max", "0.5", "--steps",
                        "501", "--out", csv.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto curve = read_curve(csv.string());
    ASSERT_EQ(curve.size(), 501u);
    EXPECT_EQ(curve.front().t, 0.0);
    EXPECT_EQ(curve.back().t, 0.5);
    double pmax = 0.0;
    for (const auto& pt : curve) pmax = std::max(pmax, pt.p);
    EXPECT_NEAR(pmax, 0.5, 1e-4);
    EXPECT_TRUE(fs::exists(scratch("zero.manifest.json")));
}

TEST(Cli, CurveRoundTripsExactly) {
    const auto csv = scratch("warm.csv");
    ASSERT_EQ(run({"thermal", "--config", write_config("warm.json", kSingleWarm), "--steps", "37", "--out",
                   csv.string()})
                  .code,
              0);
    const auto cfg = load_config(scratch("warm.json").string());
    for (const auto& pt : read_curve(csv.string())) EXPECT_EQ(pt.p, p12_thermal(cfg, pt.t));
}

TEST(Cli, EmptyCurveHasHeaderOnly) {
    const auto csv = scratch("empty.csv");
    ASSERT_EQ(run({"thermal", "--config", write_config("warm.json", kSingleWarm), "--steps", "0", "--out",
                   csv.string()})
                  .code,
              0);
    EXPECT_EQ(slurp(csv), "t_ps,p12\n");
}

TEST(Cli, CurveToStdout) {
    const auto r = run({"zero-temp", "--config", write_config("ok.json", kSingleZero), "--steps", "3"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("t_ps,p12\n0,0\n", 0), 0u);
}

TEST(Cli, ZeroTempRejectsThermalConfig) {
    const auto r = run({"zero-temp", "--config", write_config("warm.json", kSingleWarm)});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, SweepIsReproducibleAndWritesSidecars) {
    const auto cfg = write_config("warm.json", kSingleWarm);
    const auto a = scratch("grid_a.csv"), b = scratch("grid_b.csv");
    for (const auto& [path, threads] : {std::pair{a, "1"}, std::pair{b, "3"}}) {
        const auto r = run({"--threads", threads, "sweep", "--config", cfg, "--axis", "gamma2=0:4:9", "--axis",
                            "temperature=50:300:4", "--out", path.string()});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    EXPECT_EQ(slurp(a), slurp(b));
    const auto text = slurp(a);
    EXPECT_EQ(text.rfind("temperature\\gamma2,0,0.5,", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);

    const auto side = slurp(scratch("grid_a.argmax.txt"));
    EXPECT_NE(side.find("gamma2=2\n"), std::string::npos);
    EXPECT_NE(side.find("temperature=50\n"), std::string::npos);

    const auto manifest = nlohmann::json::parse(slurp(scratch("grid_a.manifest.json")));
    EXPECT_EQ(manifest["subcommand"], "sweep");
    EXPECT_EQ(manifest["outputs"].size(), 2u);
    EXPECT_EQ(manifest["axes"][0], "gamma2=0:4:9");
    EXPECT_TRUE(manifest.contains("wall_clock_seconds"));
    EXPECT_EQ(manifest["config"]["temperature_kelvin"], 77.0);
}

TEST(Cli, SweepMetricMustMatchAxes) {
    const auto cfg = write_config("warm.json", kSingleWarm);
    const auto out = scratch("m.csv").string();
    EXPECT_EQ(run({"sweep", "--config", cfg, "--axis", "gamma2=0:4:3", "--metric", "p", "--out", out}).code, 2);
    EXPECT_EQ(run({"sweep", "--config", cfg, "--axis", "gamma2=0:4:3", "--axis", "time=0:1:11", "--out", out}).code,
              2);
    EXPECT_EQ(run({"sweep", "--config", cfg, "--axis", "gamma2=0:4:3", "--axis", "time=0:1:11", "--metric", "p",
                   "--out", out})
                  .code,
              0);
    EXPECT_EQ(run({"sweep", "--config", cfg, "--axis", "zeta=0:4:3", "--out", out}).code, 2);
}

TEST(Cli, MaxReportsGain) {
    const auto r = run({"max", "--config", write_config("warm.json", kSingleWarm), "--gain"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("p_max="), std::string::npos);
    EXPECT_NE(r.out.find("gain="), std::string::npos);
}

TEST(Cli, ResonanceAndGroundState) {
    const auto cfg = write_config(
        "corr.json", R"({"epsilon1": 5, "epsilon2": 0, "J": 10, "N1": 20, "alpha1": 250, "gamma1": 1,
        "N2": 20, "alpha2": 250, "gamma2": 0.5, "q": 0, "zero_temperature": true})");
    const auto r = run({"resonance", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("branch=both_down"), std::string::npos);
    EXPECT_NE(r.out.find("satisfied=true"), std::string::npos);
    const auto g = run({"ground-state", "--config", cfg});
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_NE(g.out.find("q0=25\n"), std::string::npos);
    EXPECT_NE(g.out.find("minimizers=(-10,-10)\n"), std::string::npos);
}

TEST(Cli, OracleCheck) {
    const auto r = run({"oracle-check", "--config", write_config("small.json", kSmall)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("max |dP| = "), std::string::npos);
    const auto big = run({"oracle-check", "--config", write_config("small.json", kSmall), "--n1", "8", "--n2", "7"});
    EXPECT_EQ(big.code, 2);
    EXPECT_NE(big.err.find("N1 + N2 <= 14"), std::string::npos);
}

TEST(Cli, UnwritableOutput) {
    const auto r = run({"zero-temp", "--config", write_config("ok.json", kSingleZero), "--out",
                        "/nonexistent-dir/x/curve.csv"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

}  // namespace
