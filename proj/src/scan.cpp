#include "cartan/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "cartan/errors.hpp"
#include "cartan/json_io.hpp"

namespace cartan {

namespace {

double lattice(double lo, double hi, int n, int i) {
    if (n == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

CurvatureSample excluded(const PhasePoint& pt, double band) {
    CurvatureSample s;
    s.point = pt;
    s.status = SampleStatus::domain_error;
    s.reason = "excluded_band";
    s.message = "|x| < " + format_real(band) + " (polar chart singularity)";
    return s;
}

// Evaluate rows[i] = eval(i) for every i, splitting the index range into
// contiguous blocks. Each worker only writes its own slots.
template <class Eval>
void fill_parallel(std::vector<ScanRow>& rows, unsigned threads, Eval eval) {
    const std::size_t n = rows.size();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = eval(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t block = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(n, begin + block);
        pool.emplace_back([&rows, &eval, begin, end] {
            for (std::size_t i = begin; i < end; ++i) rows[i] = eval(i);
        });
    }
    for (auto& t : pool) t.join();
}

ScanResult finish(ScanSpec spec, std::vector<ScanRow> rows) {
    ScanResult result{std::move(spec), std::move(rows), {}, ScanStatus::ok};
    result.summary = summarize(result.rows);
    if (result.summary.n_ok == 0) result.status = ScanStatus::empty;
    return result;
}

}  // namespace

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string status_label(const CurvatureSample& sample) {
    if (sample.status == SampleStatus::domain_error) return "domain_error:" + sample.reason;
    return to_string(sample.status);
}

ScanSummary summarize(std::span<const ScanRow> rows) {
    ScanSummary summary;
    summary.min_K = std::numeric_limits<double>::infinity();
    summary.max_K = -std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        if (!row.sample.K) {
            ++summary.n_skipped;
            continue;
        }
        ++summary.n_ok;
        const double k = *row.sample.K;
        if (k < summary.min_K) {
            summary.min_K = k;
            summary.argmin = row.sample.point;
        }
        if (k > summary.max_K) {
            summary.max_K = k;
            summary.argmax = row.sample.point;
        }
    }
    if (summary.n_ok == 0) summary.min_K = summary.max_K = 0.0;
    return summary;
}

ScanResult grid_scan(const GridSpec& spec, unsigned threads) {
    if (spec.nx < 1 || spec.nphi < 1) throw ArgumentError("grid needs nx >= 1 and nphi >= 1");
    const MetricParams params{spec.a, spec.c};
    std::vector<ScanRow> rows(static_cast<std::size_t>(spec.nx) * spec.nphi);
    fill_parallel(rows, threads, [&](std::size_t index) {
        const int i = static_cast<int>(index / spec.nphi);
        const int j = static_cast<int>(index % spec.nphi);
        const double x = lattice(spec.x_min, spec.x_max, spec.nx, i);
        const double phi = lattice(spec.phi_min, spec.phi_max, spec.nphi, j);
        const PhasePoint pt{x, 0.0, std::sin(phi), std::cos(phi)};
        if (std::abs(x) < spec.exclude_band) return ScanRow{phi, excluded(pt, spec.exclude_band)};
        return ScanRow{phi, flag_curvature(params, pt)};
    });
    return finish(spec, std::move(rows));
}

ScanResult slice_scan(const SliceSpec& spec, unsigned threads) {
    if (spec.n < 2) throw ArgumentError("slice needs n >= 2");
    const MetricParams params{spec.a, spec.c};
    std::vector<ScanRow> rows(static_cast<std::size_t>(spec.n));
    fill_parallel(rows, threads, [&](std::size_t index) {
        const double x = lattice(spec.x_min, spec.x_max, spec.n, static_cast<int>(index));
        const PhasePoint pt{x, 0.0, 0.0, x};
        if (std::abs(x) < spec.exclude_band) return ScanRow{std::nullopt, excluded(pt, spec.exclude_band)};
        return ScanRow{std::nullopt, flag_curvature(params, pt)};
    });
    return finish(spec, std::move(rows));
}

ScanResult slice_scan(double c, double a, double x_min, double x_max, int n) {
    return slice_scan(SliceSpec{c, a, x_min, x_max, n, SliceSpec{}.exclude_band});
}

namespace {

nlohmann::json spec_json(const ScanSpec& spec) {
    return std::visit(
        [](const auto& s) -> nlohmann::json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GridSpec>) {
                return {{"kind", "grid"},           {"a", s.a},
                        {"c", s.c},                 {"x_min", s.x_min},
                        {"x_max", s.x_max},         {"nx", s.nx},
                        {"phi_min", s.phi_min},     {"phi_max", s.phi_max},
                        {"nphi", s.nphi},           {"exclude_band", s.exclude_band}};
            } else {
                return {{"kind", "slice"}, {"a", s.a},         {"c", s.c},
                        {"x_min", s.x_min}, {"x_max", s.x_max}, {"n", s.n},
                        {"exclude_band", s.exclude_band}};
            }
        },
        spec);
}

nlohmann::json point_json(const PhasePoint& p) {
    return {{"x", p.x}, {"y", p.y}, {"r", p.r}, {"t", p.t}};
}

nlohmann::json summary_json(const ScanResult& result) {
    const auto& s = result.summary;
    nlohmann::json j{{"n_ok", s.n_ok},
                     {"n_skipped", s.n_skipped},
                     {"status", result.status == ScanStatus::ok ? "ok" : "empty"}};
    if (s.n_ok > 0) {
        j["min_K"] = s.min_K;
        j["max_K"] = s.max_K;
        j["argmin"] = point_json(s.argmin);
        j["argmax"] = point_json(s.argmax);
    }
    return j;
}

}  // namespace

void emit(const ScanResult& result, EmitFormat format, std::ostream& out, bool include_samples) {
    if (format == EmitFormat::csv) {
        out << "x,phi,r,t,K,status\n";
        for (const auto& row : result.rows) {
            const auto& s = row.sample;
            out << format_real(s.point.x) << ',' << (row.phi ? format_real(*row.phi) : "") << ','
                << format_real(s.point.r) << ',' << format_real(s.point.t) << ','
                << (s.K ? format_real(*s.K) : "") << ',' << status_label(s) << '\n';
        }
        return;
    }
    nlohmann::json doc{{"spec", spec_json(result.spec)}, {"summary", summary_json(result)}};
    if (include_samples) {
        auto samples = nlohmann::json::array();
        for (const auto& row : result.rows) {
            const auto& s = row.sample;
            nlohmann::json item{{"x", s.point.x}, {"r", s.point.r}, {"t", s.point.t},
                                {"status", status_label(s)}};
            item["phi"] = row.phi ? nlohmann::json(*row.phi) : nlohmann::json(nullptr);
            item["K"] = s.K ? nlohmann::json(*s.K) : nlohmann::json(nullptr);
            samples.push_back(std::move(item));
        }
        doc["samples"] = std::move(samples);
    }
    write_json(out, doc);
    out << '\n';
}

void emit(const ScanResult& result, EmitFormat format, const std::string& destination, bool include_samples) {
    if (destination.empty() || destination == "-") {
        emit(result, format, std::cout, include_samples);
        std::cout.flush();
        return;
    }
    std::ofstream file(destination);
    if (!file) throw IoError("cannot open output file", destination);
    emit(result, format, file, include_samples);
    file.flush();
    if (!file) throw IoError("failed writing output file", destination);
}

}  // namespace cartan
