#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cartan/cli.hpp"
#include "cartan/convexity.hpp"
#include "cartan/curvature.hpp"
#include "cartan/errors.hpp"
#include "cartan/identities.hpp"
#include "cartan/metric.hpp"
#include "cartan/scan.hpp"

namespace py = pybind11;
using namespace cartan;

namespace {

py::dict scan_to_dict(const ScanResult& result) {
    py::list x, phi, r, t, k, status;
    for (const auto& row : result.rows) {
        x.append(row.sample.point.x);
        phi.append(row.phi ? py::cast(*row.phi) : py::none());
        r.append(row.sample.point.r);
        t.append(row.sample.point.t);
        k.append(row.sample.K ? py::cast(*row.sample.K) : py::none());
        status.append(status_label(row.sample));
    }
    const auto& s = result.summary;
    py::dict summary;
    summary["n_ok"] = s.n_ok;
    summary["n_skipped"] = s.n_skipped;
    summary["status"] = result.status == ScanStatus::ok ? "ok" : "empty";
    if (s.n_ok > 0) {
        summary["min_K"] = s.min_K;
        summary["max_K"] = s.max_K;
        summary["argmin"] = s.argmin;
        summary["argmax"] = s.argmax;
    }
    py::dict out;
    out["x"] = x;
    out["phi"] = phi;
    out["r"] = r;
    out["t"] = t;
    out["K"] = k;
    out["status"] = status;
    out["summary"] = summary;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Flag curvature of the Cartan metrics of the rotating Kepler problem";

    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<MetricParams>(m, "MetricParams")
        .def(py::init<double, double>(), py::arg("a") = 1.0, py::arg("c") = 2.0)
        .def_readwrite("a", &MetricParams::a)
        .def_readwrite("c", &MetricParams::c)
        .def("__repr__", [](const MetricParams& p) {
            std::ostringstream s;
            s << "MetricParams(a=" << p.a << ", c=" << p.c << ")";
            return s.str();
        });

    py::class_<PhasePoint>(m, "PhasePoint")
        .def(py::init<double, double, double, double>(), py::arg("x") = 1.0, py::arg("y") = 0.0, py::arg("r") = 0.0,
             py::arg("t") = 1.0)
        .def_readwrite("x", &PhasePoint::x)
        .def_readwrite("y", &PhasePoint::y)
        .def_readwrite("r", &PhasePoint::r)
        .def_readwrite("t", &PhasePoint::t)
        .def("__repr__", [](const PhasePoint& p) {
            std::ostringstream s;
            s << "PhasePoint(x=" << p.x << ", y=" << p.y << ", r=" << p.r << ", t=" << p.t << ")";
            return s.str();
        });

    py::class_<CurvatureSample>(m, "CurvatureSample")
        .def_readonly("point", &CurvatureSample::point)
        .def_readonly("K", &CurvatureSample::K)
        .def_readonly("reason", &CurvatureSample::reason)
        .def_readonly("message", &CurvatureSample::message)
        .def_property_readonly("status", [](const CurvatureSample& s) { return std::string(to_string(s.status)); })
        .def_property_readonly("ok", &CurvatureSample::ok);

    py::class_<CometricBlock>(m, "CometricBlock")
        .def_readonly("g11", &CometricBlock::g11)
        .def_readonly("g12", &CometricBlock::g12)
        .def_readonly("g22", &CometricBlock::g22)
        .def_readonly("det", &CometricBlock::det)
        .def_readonly("inv11", &CometricBlock::inv11)
        .def_readonly("inv12", &CometricBlock::inv12)
        .def_readonly("inv22", &CometricBlock::inv22);

    py::class_<ConvexityReport>(m, "ConvexityReport")
        .def_readonly("n", &ConvexityReport::n)
        .def_readonly("min_form", &ConvexityReport::min_form)
        .def_readonly("argmin_direction", &ConvexityReport::argmin_direction)
        .def_readonly("argmin_point", &ConvexityReport::argmin_point)
        .def_readonly("verdict", &ConvexityReport::verdict)
        .def_readonly("failure_point", &ConvexityReport::failure_point);

    m.def("critical_energy", &critical_energy, py::arg("a"));
    m.def("fstar_polar", &fstar_polar, py::arg("params"), py::arg("point"));
    m.def("lstar", &lstar, py::arg("params"), py::arg("point"));
    m.def(
        "fstar_cartesian",
        [](const Vec2& p, const Vec2& q, double C, double a) { return fstar_cartesian({p, q, C}, a); }, py::arg("p"),
        py::arg("q"), py::arg("C"), py::arg("a"));
    m.def(
        "validate_domain",
        [](const MetricParams& params, const PhasePoint& pt) {
            const auto status = validate_domain(params, pt);
            return py::make_tuple(std::string(to_string(status.reason)), status.message);
        },
        py::arg("params"), py::arg("point"));
    m.def("scaling_reduce", &scaling_reduce, py::arg("params"), py::arg("point"));

    m.def("cometric_at", py::overload_cast<const MetricParams&, const PhasePoint&>(&cometric_at), py::arg("params"),
          py::arg("point"));
    m.def("legendre_fiber", py::overload_cast<const MetricParams&, const PhasePoint&>(&legendre_fiber),
          py::arg("params"), py::arg("point"));
    m.def(
        "spray_coeffs",
        [](const MetricParams& params, const PhasePoint& pt) {
            const auto s = spray_coeffs(params, pt);
            return py::make_tuple(s.G, s.H_spray);
        },
        py::arg("params"), py::arg("point"));
    m.def("flag_curvature", py::overload_cast<const MetricParams&, const PhasePoint&>(&flag_curvature),
          py::arg("params"), py::arg("point"));
    m.def("flag_curvature_closed_form", &flag_curvature_closed_form, py::arg("c"), py::arg("x"));

    m.def(
        "hessian_form", [](const Vec2& p, const Vec2& q, double C) { return hessian_form({p, q, C}); }, py::arg("p"),
        py::arg("q"), py::arg("C"));
    m.def("f_of_t", &f_of_t, py::arg("a_lem"), py::arg("t"));
    m.def("verify_convexity", &verify_convexity, py::arg("p"), py::arg("C"), py::arg("a"), py::arg("n") = 360);

    m.def(
        "slice_scan",
        [](double c, double a, double x_min, double x_max, int n, double exclude_band, unsigned threads) {
            ScanResult result;
            {
                py::gil_scoped_release release;
                result = slice_scan(SliceSpec{c, a, x_min, x_max, n, exclude_band}, threads);
            }
            return scan_to_dict(result);
        },
        py::arg("c") = 2.0, py::arg("a") = 1.0, py::arg("x_min") = -10.0, py::arg("x_max") = 10.0,
        py::arg("n") = 2048, py::arg("exclude_band") = 1e-3, py::arg("threads") = 0);
    m.def(
        "grid_scan",
        [](double c, double a, std::pair<double, double> x_range, std::pair<double, double> phi_range, int nx, int nphi,
           double exclude_band, unsigned threads) {
            GridSpec spec{x_range.first, x_range.second, nx, phi_range.first, phi_range.second, nphi, c, a,
                          exclude_band};
            ScanResult result;
            {
                py::gil_scoped_release release;
                result = grid_scan(spec, threads);
            }
            return scan_to_dict(result);
        },
        py::arg("c") = 1.55, py::arg("a") = 1.0,
        py::arg("x_range") = std::make_pair(GridSpec{}.x_min, GridSpec{}.x_max),
        py::arg("phi_range") = std::make_pair(GridSpec{}.phi_min, GridSpec{}.phi_max), py::arg("nx") = 256,
        py::arg("nphi") = 256, py::arg("exclude_band") = 1e-3, py::arg("threads") = 0);

    m.def(
        "run_identity_suite",
        [](std::uint64_t seed, int samples) {
            py::list rows;
            for (const auto& c : run_identity_suite({seed, samples})) {
                py::dict d;
                d["name"] = c.name;
                d["passed"] = c.passed;
                d["worst"] = c.worst;
                d["tolerance"] = c.tolerance;
                d["cases"] = c.cases;
                d["detail"] = c.detail;
                rows.append(d);
            }
            return rows;
        },
        py::arg("seed") = kIdentitySeed, py::arg("samples") = 200);

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
