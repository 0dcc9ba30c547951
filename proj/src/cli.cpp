#include "cartan/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cartan/convexity.hpp"
#include "cartan/curvature.hpp"
#include "cartan/errors.hpp"
#include "cartan/identities.hpp"
#include "cartan/json_io.hpp"
#include "cartan/metric.hpp"
#include "cartan/scan.hpp"

namespace cartan::cli {

namespace {

double parse_real(const std::string& raw) {
    std::string text = raw;
    double factor = 1.0;
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        text.erase(text.size() - 2);
        if (text.empty() || text == "+") text = "1";
        if (text == "-") text = "-1";
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ArgumentError("not a number: '" + raw + "'");
    }
    if (used != text.size()) throw ArgumentError("not a number: '" + raw + "'");
    return value * factor;
}

// Output sink: standard output or a file opened on demand.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

    std::ostream& stream() {
        if (path_.empty() || path_ == "-") return fallback_;
        if (!file_) {
            file_.emplace(path_);
            if (!*file_) throw IoError("cannot open output file", path_);
        }
        return *file_;
    }

    void close() {
        if (file_) {
            file_->flush();
            if (!*file_) throw IoError("failed writing output file", path_);
        }
    }

private:
    std::string path_;
    std::ostream& fallback_;
    std::optional<std::ofstream> file_;
};

struct Options {
    double a = 1.0;
    std::optional<double> c;
    double x = 1.0, y = 0.0, r = 0.0, t = 1.0;
    std::optional<std::string> x_range;
    std::string phi_range = "0:2pi";
    int nx = 256, nphi = 256, n = 2048;
    double exclude_band = 1e-3;
    std::string format;
    std::string out = "-";
    unsigned threads = 0;
    bool summary_only = false;
    // verify-convexity
    double p1 = 1.0, p2 = 0.0;
    std::optional<double> C;
    int directions = 360;
    // verify-identities
    std::uint64_t seed = kIdentitySeed;
    int samples = 200;
};

EmitFormat emit_format(const std::string& format) {
    return format == "json" ? EmitFormat::json : EmitFormat::csv;
}

nlohmann::json point_json(const PhasePoint& p) { return {{"x", p.x}, {"y", p.y}, {"r", p.r}, {"t", p.t}}; }

int run_point(const Options& o, std::ostream& out, std::ostream& err) {
    const MetricParams params{o.a, o.c.value_or(2.0)};
    const PhasePoint pt{o.x, o.y, o.r, o.t};
    const CurvatureSample sample = flag_curvature(params, pt);
    Sink sink(o.out, out);
    if (o.format == "json") {
        nlohmann::json doc{{"params", {{"a", params.a}, {"c", params.c}}},
                           {"point", point_json(pt)},
                           {"status", status_label(sample)}};
        doc["K"] = sample.K ? nlohmann::json(*sample.K) : nlohmann::json(nullptr);
        if (!sample.ok()) doc["message"] = sample.message;
        if (sample.ok()) {
            const auto g = cometric_at(params, pt);
            const auto [u, v] = legendre_fiber(params, pt);
            const auto spray = spray_coeffs(params, pt);
            doc["cometric"] = {{"g11", g.g11}, {"g12", g.g12}, {"g22", g.g22}, {"det", g.det}};
            doc["legendre"] = {{"u", u}, {"v", v}};
            doc["spray"] = {{"G", spray.G}, {"H_spray", spray.H_spray}};
        }
        write_json(sink.stream(), doc);
        sink.stream() << '\n';
    } else {
        sink.stream() << "x,phi,r,t,K,status\n"
                      << format_real(pt.x) << ",," << format_real(pt.r) << ',' << format_real(pt.t) << ','
                      << (sample.K ? format_real(*sample.K) : "") << ',' << status_label(sample) << '\n';
    }
    sink.close();
    if (!sample.ok()) {
        err << "error: " << sample.message << '\n';
        return kExitDomain;
    }
    return kExitOk;
}

int run_slice(const Options& o, std::ostream& out, std::ostream& err) {
    const auto [lo, hi] = parse_range(o.x_range.value_or("-10:10"));
    const SliceSpec spec{o.c.value_or(2.0), o.a, lo, hi, o.n, o.exclude_band};
    if (auto status = validate_params({spec.a, spec.c}); !status) {
        err << "error: " << status.message << '\n';
        return kExitDomain;
    }
    const ScanResult result = slice_scan(spec, o.threads);
    Sink sink(o.out, out);
    emit(result, emit_format(o.format), sink.stream(), !o.summary_only);
    sink.close();
    if (result.status == ScanStatus::empty) {
        err << "error: no admissible point on the slice\n";
        return kExitDomain;
    }
    return kExitOk;
}

int run_grid(const Options& o, std::ostream& out, std::ostream& err) {
    const auto [xlo, xhi] = parse_range(o.x_range.value_or("-3:3"));
    const auto [plo, phi] = parse_range(o.phi_range);
    GridSpec spec{xlo, xhi, o.nx, plo, phi, o.nphi, o.c.value_or(1.55), o.a, o.exclude_band};
    if (auto status = validate_params({spec.a, spec.c}); !status) {
        err << "error: " << status.message << '\n';
        return kExitDomain;
    }
    const ScanResult result = grid_scan(spec, o.threads);
    Sink sink(o.out, out);
    emit(result, emit_format(o.format), sink.stream(), !o.summary_only);
    sink.close();
    if (result.status == ScanStatus::empty) {
        err << "error: no admissible point on the grid\n";
        return kExitDomain;
    }
    return kExitOk;
}

int run_closed_form(const Options& o, std::ostream& out, std::ostream& err) {
    const double c = o.c.value_or(2.0);
    double k = 0.0;
    try {
        k = flag_curvature_closed_form(c, o.x);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << " (value " << e.value() << ")\n";
        return kExitDomain;
    }
    Sink sink(o.out, out);
    if (o.format == "json") {
        write_json(sink.stream(), {{"c", c}, {"x", o.x}, {"K", k}});
        sink.stream() << '\n';
    } else {
        sink.stream() << "c,x,K\n" << format_real(c) << ',' << format_real(o.x) << ',' << format_real(k) << '\n';
    }
    sink.close();
    return kExitOk;
}

int run_convexity(const Options& o, std::ostream& out, std::ostream& err) {
    const Vec2 p{o.p1, o.p2};
    const double pn = norm(p);
    const double C = o.C ? *o.C : (pn * pn / 2.0 + o.c.value_or(1.51)) / 2.0;
    ConvexityReport report;
    try {
        report = verify_convexity(p, C, o.a, o.directions);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    nlohmann::json doc{{"n", report.n}, {"p", {p[0], p[1]}}, {"C", C}, {"a", o.a}};
    if (report.verdict) {
        doc["min_form"] = report.min_form;
        doc["argmin_direction"] = report.argmin_direction;
        doc["verdict"] = *report.verdict ? "convex" : "not_convex";
    } else {
        doc["min_form"] = nullptr;
        doc["argmin_direction"] = nullptr;
        doc["verdict"] = nullptr;
    }
    if (report.failure_point) doc["failure_point"] = {(*report.failure_point)[0], (*report.failure_point)[1]};
    Sink sink(o.out, out);
    write_json(sink.stream(), doc);
    sink.stream() << '\n';
    sink.close();
    return report.verdict.value_or(true) ? kExitOk : kExitDomain;
}

int run_identities(const Options& o, std::ostream& out, std::ostream& /*err*/) {
    const auto checks = run_identity_suite({o.seed, o.samples});
    const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    Sink sink(o.out, out);
    auto& s = sink.stream();
    if (o.format == "json") {
        auto rows = nlohmann::json::array();
        for (const auto& c : checks)
            rows.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst},
                            {"tolerance", c.tolerance}, {"cases", c.cases}, {"detail", c.detail}});
        write_json(s, {{"seed", o.seed}, {"passed", all}, {"checks", rows}});
        s << '\n';
    } else {
        s << "seed " << o.seed << ", " << o.samples << " samples per randomized check\n";
        for (const auto& c : checks) {
            s << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  worst=" << format_real(c.worst)
              << " tol=" << format_real(c.tolerance) << " cases=" << c.cases;
            if (!c.detail.empty()) s << "  (" << c.detail << ")";
            s << '\n';
        }
        s << (all ? "all identities hold\n" : "some identities FAILED\n");
    }
    sink.close();
    return all ? kExitOk : kExitDomain;
}

// "--x-range -10:10": join a value that starts with '-' onto its option so
// the parser does not read it as another flag.
std::vector<std::string> join_negative_values(const std::vector<std::string>& args,
                                              const std::set<std::string>& value_options) {
    std::vector<std::string> joined;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (value_options.count(arg) && i + 1 < args.size()) {
            const std::string& next = args[i + 1];
            if (next.size() >= 2 && next[0] == '-' &&
                (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.' || next[1] == 'p')) {
                joined.push_back(arg + "=" + next);
                ++i;
                continue;
            }
        }
        joined.push_back(arg);
    }
    return joined;
}

}  // namespace

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':', text.empty() ? 0 : 1);
    if (colon == std::string::npos) throw ArgumentError("range must look like lo:hi, got '" + text + "'");
    return {parse_real(text.substr(0, colon)), parse_real(text.substr(colon + 1))};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Flag curvature of the rotating Kepler problem's Cartan metrics", "cartan"};
    app.require_subcommand(1, 1);

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--a", o.a, "rotation rate a >= 0")->capture_default_str();
        sub->add_option("--c", o.c, "energy parameter c > 0");
    };

    auto* point = app.add_subcommand("point", "flag curvature at one phase point");
    add_params(point);
    point->add_option("--x", o.x, "momentum radius |p| (nonzero)")->capture_default_str();
    point->add_option("--y", o.y, "momentum angle")->capture_default_str();
    point->add_option("--r", o.r, "fiber coordinate dual to x")->capture_default_str();
    point->add_option("--t", o.t, "fiber coordinate dual to y")->capture_default_str();
    point->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    point->add_option("--out", o.out);

    auto* slice = app.add_subcommand("slice", "K along (x, 0, 0, x)");
    add_params(slice);
    slice->add_option("--x-range", o.x_range, "lo:hi (default -10:10)");
    slice->add_option("--n", o.n, "number of samples (>= 2)")->capture_default_str();
    slice->add_option("--exclude-band", o.exclude_band, "skip |x| below this")->capture_default_str();
    slice->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    slice->add_flag("--summary-only", o.summary_only, "omit samples from JSON output");
    slice->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    slice->add_option("--out", o.out);

    auto* grid = app.add_subcommand("grid", "K on an (x, phi) lattice, (r, t) = (sin phi, cos phi)");
    add_params(grid);
    grid->add_option("--x-range", o.x_range, "lo:hi (default -3:3)");
    grid->add_option("--phi-range", o.phi_range, "lo:hi, 'pi' suffix allowed")->capture_default_str();
    grid->add_option("--nx", o.nx)->capture_default_str();
    grid->add_option("--nphi", o.nphi)->capture_default_str();
    grid->add_option("--exclude-band", o.exclude_band, "skip |x| below this")->capture_default_str();
    grid->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    grid->add_flag("--summary-only", o.summary_only, "omit samples from JSON output");
    grid->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    grid->add_option("--out", o.out);

    auto* convexity = app.add_subcommand("verify-convexity", "sample the Hessian form along Sigma_p");
    convexity->add_option("--a", o.a)->capture_default_str();
    convexity->add_option("--c", o.c, "energy; sets C = (|p|^2/2 + c)/2 when --C is absent");
    convexity->add_option("--C", o.C, "half-offset C");
    convexity->add_option("--p1", o.p1)->capture_default_str();
    convexity->add_option("--p2", o.p2)->capture_default_str();
    convexity->add_option("--n", o.directions, "number of directions")->capture_default_str();
    convexity->add_option("--out", o.out);

    auto* identities = app.add_subcommand("verify-identities", "run the structural property suite");
    identities->add_option("--seed", o.seed)->capture_default_str();
    identities->add_option("--samples", o.samples)->capture_default_str();
    identities->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    identities->add_option("--out", o.out);

    auto* closed = app.add_subcommand("closed-form", "closed-form K of F*_{c,1} at (x, 0, 0, x)");
    closed->add_option("--c", o.c);
    closed->add_option("--x", o.x)->capture_default_str();
    closed->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    closed->add_option("--out", o.out);

    const std::set<std::string> value_options{"--a", "--c", "--x", "--y", "--r", "--t", "--x-range",
                                              "--phi-range", "--C", "--p1", "--p2", "--exclude-band"};
    std::vector<std::string> reversed = join_negative_values(args, value_options);
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (point->parsed()) return run_point(o, out, err);
        if (slice->parsed()) return run_slice(o, out, err);
        if (grid->parsed()) return run_grid(o, out, err);
        if (convexity->parsed()) return run_convexity(o, out, err);
        if (identities->parsed()) return run_identities(o, out, err);
        if (closed->parsed()) return run_closed_form(o, out, err);
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    err << app.help();
    return kExitUsage;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace cartan::cli
