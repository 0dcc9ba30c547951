#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cartan/errors.hpp"
#include "cartan/scan.hpp"

using namespace cartan;

namespace {

std::string emitted(const ScanResult& r, EmitFormat f, bool samples = true) {
    std::ostringstream out;
    emit(r, f, out, samples);
    return out.str();
}

}  // namespace

TEST(Slice, NegativeCurvatureNearCritical) {
    const auto result = slice_scan(1.51, 1.0, -10.0, 10.0, 2048);
    EXPECT_EQ(result.status, ScanStatus::ok);
    EXPECT_LT(result.summary.min_K, 0.0);
    const bool any_negative =
        std::any_of(result.rows.begin(), result.rows.end(), [](const ScanRow& r) { return r.sample.K && *r.sample.K < 0; });
    EXPECT_TRUE(any_negative);
}

TEST(Slice, PositiveAtHighEnergy) {
    const auto result = slice_scan(10.0, 1.0, -10.0, 10.0, 2048);
    EXPECT_GT(result.summary.n_ok, 2000);
    EXPECT_GT(result.summary.min_K, 0.0);
}

TEST(Slice, MoserLimitIsFlat) {
    const auto result = slice_scan(2.0, 0.0, -10.0, 10.0, 257);
    EXPECT_GT(result.summary.n_ok, 0);
    EXPECT_LT((result.summary.max_K - result.summary.min_K) / result.summary.max_K, 1e-6);
}

TEST(Slice, ExcludedBandAndArguments) {
    const auto result = slice_scan(SliceSpec{2.0, 1.0, -1.0, 1.0, 3, 1e-3});
    ASSERT_EQ(result.rows.size(), 3u);
    EXPECT_EQ(result.rows[1].sample.status, SampleStatus::domain_error);
    EXPECT_EQ(status_label(result.rows[1].sample), "domain_error:excluded_band");
    EXPECT_EQ(result.summary.n_ok, 2);
    EXPECT_EQ(result.summary.n_skipped, 1);
    EXPECT_THROW(slice_scan(2.0, 1.0, -1.0, 1.0, 1), ArgumentError);
}

TEST(Grid, SinglePoint) {
    GridSpec spec;
    spec.x_min = spec.x_max = 1.2;
    spec.phi_min = spec.phi_max = 0.4;
    spec.nx = spec.nphi = 1;
    const auto result = grid_scan(spec);
    ASSERT_EQ(result.rows.size(), 1u);
    ASSERT_TRUE(result.rows[0].sample.ok());
    const auto direct = flag_curvature(MetricParams{spec.a, spec.c}, {1.2, 0.0, std::sin(0.4), std::cos(0.4)});
    EXPECT_EQ(result.summary.min_K, *direct.K);
    EXPECT_EQ(result.summary.max_K, *direct.K);
}

TEST(Grid, EmptyInsideBand) {
    GridSpec spec;
    spec.x_min = -5e-4;
    spec.x_max = 5e-4;
    spec.nx = 4;
    spec.nphi = 4;
    const auto result = grid_scan(spec);
    EXPECT_EQ(result.status, ScanStatus::empty);
    EXPECT_EQ(result.summary.n_ok, 0);
    GridSpec bad;
    bad.nx = 0;
    EXPECT_THROW(grid_scan(bad), ArgumentError);
}

TEST(Grid, ParallelMatchesSerial) {
    GridSpec spec;
    spec.nx = 24;
    spec.nphi = 17;
    const auto serial = grid_scan(spec, 1);
    const auto parallel = grid_scan(spec, 4);
    ASSERT_EQ(serial.rows.size(), parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        EXPECT_EQ(serial.rows[i].sample.K, parallel.rows[i].sample.K);
        EXPECT_EQ(serial.rows[i].phi, parallel.rows[i].phi);
    }
    EXPECT_EQ(emitted(serial, EmitFormat::csv), emitted(parallel, EmitFormat::csv));
    EXPECT_EQ(emitted(serial, EmitFormat::json), emitted(parallel, EmitFormat::json));
}

TEST(Grid, SummaryMatchesBruteForce) {
    GridSpec spec;
    spec.nx = 31;
    spec.nphi = 29;
    const auto result = grid_scan(spec);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : result.rows) {
        if (!row.sample.K) continue;
        lo = std::min(lo, *row.sample.K);
        hi = std::max(hi, *row.sample.K);
    }
    EXPECT_EQ(result.summary.min_K, lo);
    EXPECT_EQ(result.summary.max_K, hi);
    EXPECT_EQ(result.summary.n_ok + result.summary.n_skipped, 31 * 29);
}

TEST(Emit, CsvShape) {
    const auto one = slice_scan(SliceSpec{2.0, 1.0, 1.0, 1.0, 2, 1e-3});
    const std::string csv = emitted(one, EmitFormat::csv);
    EXPECT_EQ(csv.rfind("x,phi,r,t,K,status\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    // Slice rows leave phi empty; 17 significant digits.
    EXPECT_NE(csv.find("\n1,,0,1,5.6296296296296"), std::string::npos);
    EXPECT_NE(csv.find(",ok\n"), std::string::npos);

    GridSpec spec;
    spec.x_min = spec.x_max = 0.5;
    spec.nx = spec.nphi = 1;
    const std::string grid_csv = emitted(grid_scan(spec), EmitFormat::csv);
    EXPECT_EQ(std::count(grid_csv.begin(), grid_csv.end(), '\n'), 2);
}

TEST(Emit, Json) {
    const auto result = slice_scan(SliceSpec{2.0, 1.0, -1.0, 1.0, 3, 1e-3});
    const auto doc = nlohmann::json::parse(emitted(result, EmitFormat::json));
    EXPECT_EQ(doc["spec"]["kind"], "slice");
    EXPECT_EQ(doc["summary"]["n_ok"], 2);
    ASSERT_TRUE(doc.contains("samples"));
    EXPECT_EQ(doc["samples"].size(), 3u);
    EXPECT_TRUE(doc["samples"][1]["K"].is_null());
    EXPECT_TRUE(doc["samples"][1]["phi"].is_null());
    EXPECT_EQ(doc["samples"][0]["K"].get<double>(), *result.rows[0].sample.K);

    const auto summary_only = nlohmann::json::parse(emitted(result, EmitFormat::json, false));
    EXPECT_FALSE(summary_only.contains("samples"));
}

TEST(Emit, Destinations) {
    const auto result = slice_scan(SliceSpec{2.0, 1.0, 1.0, 2.0, 2, 1e-3});
    const auto dir = std::filesystem::temp_directory_path() / "cartan_scan_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "out.csv").string();
    emit(result, EmitFormat::csv, path, true);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), emitted(result, EmitFormat::csv));

    const std::string bad = (dir / "missing" / "out.csv").string();
    try {
        emit(result, EmitFormat::csv, bad, true);
        FAIL() << "expected an I/O error";
    } catch (const IoError& e) {
        EXPECT_EQ(e.path(), bad);
    }
    std::filesystem::remove_all(dir);
}

TEST(Emit, Deterministic) {
    const auto a = slice_scan(1.55, 1.0, -10.0, 10.0, 300);
    const auto b = slice_scan(1.55, 1.0, -10.0, 10.0, 300);
    EXPECT_EQ(emitted(a, EmitFormat::json), emitted(b, EmitFormat::json));
}
