#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cartan/curvature.hpp"

namespace cartan {

/// Rectangular (x, phi) lattice with fiber direction (r, t) = (sin phi, cos phi).
/// Endpoints are included; a single node sits at the lower bound.
struct GridSpec {
    // Default domain: the lattice whose extremes best match the published
    // -5.55 / 15.21 in a search over candidate rectangles (see README).
    double x_min = -3.0;
    double x_max = 3.0;
    int nx = 256;
    double phi_min = 0.0;
    double phi_max = 2.0 * std::numbers::pi;
    int nphi = 256;
    double c = 1.55;
    double a = 1.0;
    double exclude_band = 1e-3;  // |x| below this is skipped
};

/// Points (x, 0, 0, x) for n values of x in [x_min, x_max].
struct SliceSpec {
    double c = 2.0;
    double a = 1.0;
    double x_min = -10.0;
    double x_max = 10.0;
    int n = 2048;
    double exclude_band = 1e-3;
};

using ScanSpec = std::variant<GridSpec, SliceSpec>;

struct ScanRow {
    std::optional<double> phi;  // empty for slices
    CurvatureSample sample;
};

struct ScanSummary {
    int n_ok = 0;
    int n_skipped = 0;
    double min_K = 0.0;  // meaningful when n_ok >= 1
    double max_K = 0.0;
    PhasePoint argmin;
    PhasePoint argmax;
};

enum class ScanStatus { ok, empty };

struct ScanResult {
    ScanSpec spec;
    std::vector<ScanRow> rows;  // row-major: x outer, phi inner
    ScanSummary summary;
    ScanStatus status = ScanStatus::ok;
};

/// threads == 0 picks the hardware concurrency. Output does not depend on it.
ScanResult grid_scan(const GridSpec& spec, unsigned threads = 0);
ScanResult slice_scan(const SliceSpec& spec, unsigned threads = 0);
ScanResult slice_scan(double c, double a, double x_min, double x_max, int n);

ScanSummary summarize(std::span<const ScanRow> rows);

enum class EmitFormat { csv, json };

/// CSV: header `x,phi,r,t,K,status`, one row per sample. JSON: object with
/// `spec`, `summary` and, when include_samples is set, `samples`. Reals are
/// written with 17 significant digits.
void emit(const ScanResult& result, EmitFormat format, std::ostream& out, bool include_samples = true);

/// Destination "-" means standard output. Throws IoError when the file
/// cannot be written.
void emit(const ScanResult& result, EmitFormat format, const std::string& destination,
          bool include_samples = true);

/// "%.17g"
std::string format_real(double value);

/// Status column text: "ok", "singular_v", or "domain_error:<reason>".
std::string status_label(const CurvatureSample& sample);

}  // namespace cartan
