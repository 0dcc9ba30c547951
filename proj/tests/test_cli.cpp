#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "cartan/cli.hpp"
#include "cartan/curvature.hpp"
#include "cartan/errors.hpp"
#include "cartan/scan.hpp"

using namespace cartan;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, PointMatchesClosedForm) {
    const auto r = run_cli({"point", "--a", "1", "--c", "2", "--x", "1", "--r", "0", "--t", "1", "--format", "json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_NEAR(doc["K"].get<double>(), flag_curvature_closed_form(2.0, 1.0), 1e-8 * 5.63);
    EXPECT_EQ(doc["status"], "ok");
    // Same number as the library call.
    EXPECT_EQ(doc["K"].get<double>(), *flag_curvature(MetricParams{1.0, 2.0}, {1.0, 0.0, 0.0, 1.0}).K);
}

TEST(Cli, PointSubcritical) {
    const auto r = run_cli({"point", "--a", "1", "--c", "1.4", "--x", "1", "--r", "0", "--t", "1"});
    EXPECT_EQ(r.code, cli::kExitDomain);
    EXPECT_NE(r.err.find("c <= 3/2"), std::string::npos);
}

TEST(Cli, SliceHasNegativeRows) {
    const auto r = run_cli({"slice", "--a", "1", "--c", "1.51", "--x-range", "-10:10", "--n", "2048"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("x,phi,r,t,K,status\n", 0), 0u);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    int rows = 0, negative = 0;
    while (std::getline(in, line)) {
        ++rows;
        const auto k_begin = line.find(',', line.find(',', line.find(',', line.find(',') + 1) + 1) + 1) + 1;
        if (line[k_begin] == '-') ++negative;
    }
    EXPECT_EQ(rows, 2048);
    EXPECT_GT(negative, 0);
}

TEST(Cli, NegativeAndPiRanges) {
    EXPECT_EQ(cli::parse_range("-10:10"), std::make_pair(-10.0, 10.0));
    const auto [lo, hi] = cli::parse_range("-pi:2pi");
    EXPECT_DOUBLE_EQ(lo, -std::numbers::pi);
    EXPECT_DOUBLE_EQ(hi, 2 * std::numbers::pi);
    EXPECT_THROW(cli::parse_range("1,2"), ArgumentError);
    EXPECT_THROW(cli::parse_range("a:b"), ArgumentError);

    const auto r = run_cli({"grid", "--x-range", "-1:-0.5", "--phi-range", "-pi:pi", "--nx", "3", "--nphi", "4",
                            "--format", "json", "--summary-only"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["spec"]["x_min"].get<double>(), -1.0);
    EXPECT_EQ(doc["summary"]["n_ok"], 12);
    EXPECT_FALSE(doc.contains("samples"));
}

TEST(Cli, GridDefaults) {
    const auto r = run_cli({"grid", "--nx", "2", "--nphi", "2", "--format", "json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["spec"]["c"].get<double>(), 1.55);
    EXPECT_EQ(doc["spec"]["x_min"].get<double>(), GridSpec{}.x_min);
    EXPECT_EQ(doc["samples"].size(), 4u);
}

TEST(Cli, EmptyGridIsDomainFailure) {
    const auto r = run_cli({"grid", "--x-range", "-1e-4:1e-4", "--nx", "2", "--nphi", "2"});
    EXPECT_EQ(r.code, cli::kExitDomain);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
    const auto unknown = run_cli({"point", "--bogus", "1"});
    EXPECT_EQ(unknown.code, cli::kExitUsage);
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run_cli({"slice", "--n", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"slice", "--x-range", "oops"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"point", "--format", "xml"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"point", "slice"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST(Cli, ClosedFormAndConvexity) {
    const auto cf = run_cli({"closed-form", "--c", "2", "--x", "1"});
    ASSERT_EQ(cf.code, cli::kExitOk);
    EXPECT_NE(cf.out.find("5.6296296296296"), std::string::npos);
    EXPECT_EQ(run_cli({"closed-form", "--c", "1.2", "--x", "1"}).code, cli::kExitDomain);

    const auto cv = run_cli({"verify-convexity", "--p1", "1", "--p2", "0", "--c", "1.51", "--n", "360"});
    ASSERT_EQ(cv.code, cli::kExitOk) << cv.err;
    EXPECT_EQ(nlohmann::json::parse(cv.out)["verdict"], "convex");
    EXPECT_EQ(run_cli({"verify-convexity", "--p1", "5", "--C", "1"}).code, cli::kExitDomain);
}

TEST(Cli, Identities) {
    const auto r = run_cli({"verify-identities", "--samples", "30", "--format", "json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.out;
    EXPECT_TRUE(nlohmann::json::parse(r.out)["passed"].get<bool>());
}

TEST(Cli, OutFile) {
    const auto path = (std::filesystem::temp_directory_path() / "cartan_cli_out.json").string();
    const auto r = run_cli({"slice", "--n", "5", "--format", "json", "--out", path});
    ASSERT_EQ(r.code, cli::kExitOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(std::filesystem::exists(path));
    std::filesystem::remove(path);
    EXPECT_EQ(run_cli({"slice", "--n", "5", "--out", "/nonexistent/dir/x.csv"}).code, cli::kExitDomain);
}

TEST(Cli, BinaryExitCodes) {
    const std::string tool = CARTAN_TOOL;
    auto status = [&](const std::string& args) {
        const int raw = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    EXPECT_EQ(status("point --a 1 --c 2 --x 1 --r 0 --t 1"), 0);
    EXPECT_EQ(status("point --a 1 --c 1.4 --x 1 --r 0 --t 1"), 1);
    EXPECT_EQ(status("point --nope"), 2);
}
