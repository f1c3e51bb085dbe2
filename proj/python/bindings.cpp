#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "harmlens/census.hpp"
#include "harmlens/critical_curves.hpp"
#include "harmlens/errors.hpp"
#include "harmlens/lensing.hpp"
#include "harmlens/roots.hpp"
#include "harmlens/solver.hpp"
#include "harmlens/verify.hpp"

namespace py = pybind11;

namespace hl = harmlens;

namespace {

hl::SolveOptions solve_options(double tol_accept, bool perturb) {
    hl::SolveOptions opts;
    opts.tol_accept = tol_accept;
    opts.perturb = perturb;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Zeros of conj(r(z)) - z: finding, classification, certification, and the "
              "n-point gravitational lens equation";

    auto base = py::register_exception<hl::Error>(m, "Error");
    py::register_exception<hl::HypothesisError>(m, "HypothesisError", base);
    py::register_exception<hl::NumericalError>(m, "NumericalError", base);
    py::register_exception<hl::NotApplicableError>(m, "NotApplicableError", base);
    py::register_exception<hl::ParseError>(m, "ParseError", base);

    py::enum_<hl::Orientation>(m, "Orientation")
        .value("SENSE_PRESERVING", hl::Orientation::SensePreserving)
        .value("SENSE_REVERSING", hl::Orientation::SenseReversing)
        .value("SINGULAR", hl::Orientation::Singular);

    py::class_<hl::RootRecord>(m, "RootRecord")
        .def_readonly("location", &hl::RootRecord::location)
        .def_readonly("multiplicity", &hl::RootRecord::multiplicity)
        .def_readonly("residual", &hl::RootRecord::residual)
        .def_readonly("certified", &hl::RootRecord::certified)
        .def("__repr__", [](const hl::RootRecord& r) {
            return "RootRecord(" + std::to_string(r.location.real()) + (r.location.imag() < 0 ? "" : "+") +
                   std::to_string(r.location.imag()) + "j, m=" + std::to_string(r.multiplicity) + ")";
        });

    py::class_<hl::RootSet>(m, "RootSet")
        .def_readonly("roots", &hl::RootSet::roots)
        .def_readonly("degree_accounted", &hl::RootSet::degree_accounted)
        .def_readonly("converged", &hl::RootSet::converged)
        .def_readonly("fully_certified", &hl::RootSet::fully_certified)
        .def("locations", &hl::RootSet::locations);

    py::class_<hl::HarmonicZero>(m, "HarmonicZero")
        .def_readonly("location", &hl::HarmonicZero::location)
        .def_readonly("residual", &hl::HarmonicZero::residual)
        .def_readonly("r_prime_abs", &hl::HarmonicZero::r_prime_abs)
        .def_readonly("jacobian", &hl::HarmonicZero::jacobian)
        .def_readonly("orientation", &hl::HarmonicZero::orientation)
        .def_readonly("index", &hl::HarmonicZero::index);

    py::class_<hl::PoleOrder>(m, "PoleOrder")
        .def_readonly("location", &hl::PoleOrder::location)
        .def_readonly("order", &hl::PoleOrder::order);

    py::class_<hl::SolveReport>(m, "SolveReport")
        .def_readonly("degree_n", &hl::SolveReport::degree_n)
        .def_readonly("zeros", &hl::SolveReport::zeros)
        .def_readonly("pole_orders", &hl::SolveReport::pole_orders)
        .def_readonly("n_plus", &hl::SolveReport::n_plus)
        .def_readonly("n_minus", &hl::SolveReport::n_minus)
        .def_readonly("n_singular", &hl::SolveReport::n_singular)
        .def_readonly("pole_order_sum", &hl::SolveReport::pole_order_sum)
        .def_readonly("bound_5n5_ok", &hl::SolveReport::bound_5n5_ok)
        .def_readonly("bound_2n2_ok", &hl::SolveReport::bound_2n2_ok)
        .def_readonly("winding_large_circle", &hl::SolveReport::winding_large_circle)
        .def_readonly("argument_principle_ok", &hl::SolveReport::argument_principle_ok)
        .def_readonly("perturbation_applied", &hl::SolveReport::perturbation_applied)
        .def("zero_count", &hl::SolveReport::zero_count)
        .def("has_singular", &hl::SolveReport::has_singular);

    py::class_<hl::PointMass>(m, "PointMass")
        .def(py::init<double, hl::Cx>(), py::arg("mass"), py::arg("position"))
        .def_readwrite("mass", &hl::PointMass::mass)
        .def_readwrite("position", &hl::PointMass::position);

    py::class_<hl::LensConfig>(m, "LensConfig")
        .def(py::init<>())
        .def_readwrite("gamma", &hl::LensConfig::gamma)
        .def_readwrite("sigma_sign", &hl::LensConfig::sigma_sign)
        .def_readwrite("masses", &hl::LensConfig::masses)
        .def("n", &hl::LensConfig::n);

    py::class_<hl::ImageSet>(m, "ImageSet")
        .def_readonly("images", &hl::ImageSet::images)
        .def_readonly("source", &hl::ImageSet::source)
        .def_readonly("n", &hl::ImageSet::n)
        .def_readonly("bound", &hl::ImageSet::bound)
        .def_readonly("parity_ok", &hl::ImageSet::parity_ok)
        .def_readonly("source_on_caustic", &hl::ImageSet::source_on_caustic)
        .def_readonly("report", &hl::ImageSet::report);

    py::class_<hl::Bbox>(m, "Bbox")
        .def(py::init<>())
        .def(py::init([](double x_min, double x_max, double y_min, double y_max) {
                 return hl::Bbox{x_min, x_max, y_min, y_max};
             }),
             py::arg("x_min"), py::arg("x_max"), py::arg("y_min"), py::arg("y_max"))
        .def_readwrite("x_min", &hl::Bbox::x_min)
        .def_readwrite("x_max", &hl::Bbox::x_max)
        .def_readwrite("y_min", &hl::Bbox::y_min)
        .def_readwrite("y_max", &hl::Bbox::y_max);

    py::class_<hl::RegionInfo>(m, "RegionInfo")
        .def_readonly("sample", &hl::RegionInfo::sample)
        .def_readonly("orientation", &hl::RegionInfo::orientation)
        .def_readonly("unbounded", &hl::RegionInfo::unbounded)
        .def_readonly("cell_count", &hl::RegionInfo::cell_count);

    py::class_<hl::CurveSet>(m, "CurveSet")
        .def_readonly("bbox", &hl::CurveSet::bbox)
        .def_readonly("resolution", &hl::CurveSet::resolution)
        .def_readonly("polylines", &hl::CurveSet::polylines)
        .def_readonly("caustics", &hl::CurveSet::caustics)
        .def_readonly("regions", &hl::CurveSet::regions);

    py::class_<hl::CheckResult>(m, "CheckResult")
        .def_readonly("name", &hl::CheckResult::name)
        .def_readonly("ok", &hl::CheckResult::ok)
        .def_readonly("detail", &hl::CheckResult::detail);

    py::class_<hl::VerifyReport>(m, "VerifyReport")
        .def_readonly("checks", &hl::VerifyReport::checks)
        .def("all_ok", &hl::VerifyReport::all_ok);

    m.def(
        "find_roots",
        [](const std::vector<hl::Cx>& coeffs) { return hl::find_roots(hl::Polynomial(coeffs)); },
        py::arg("coeffs"),
        "All roots of a polynomial given by ascending coefficients, with "
        "multiplicities and certification residuals");

    m.def(
        "solve_rational",
        [](const std::vector<hl::Cx>& num, const std::vector<hl::Cx>& den, double tol_accept,
           bool perturb) {
            const hl::Rational r{hl::Polynomial(num), hl::Polynomial(den)};
            return hl::solve_zeros(r, solve_options(tol_accept, perturb));
        },
        py::arg("num"), py::arg("den"), py::arg("tol_accept") = 1e-8,
        py::arg("perturb") = false,
        "Find and classify all zeros of conj(r(z)) - z for r = num/den "
        "(ascending coefficients)");

    m.def(
        "find_images",
        [](const hl::LensConfig& config, hl::Cx source, double tol_accept) {
            return hl::find_images(config, source, solve_options(tol_accept, false));
        },
        py::arg("config"), py::arg("source") = hl::Cx(0.0), py::arg("tol_accept") = 1e-8,
        "Solve the lens equation for every image of the source");

    m.def(
        "find_images",
        [](const std::vector<std::pair<double, hl::Cx>>& masses, hl::Cx source, double gamma,
           int sigma_sign, double tol_accept) {
            hl::LensConfig config;
            config.gamma = gamma;
            config.sigma_sign = sigma_sign;
            for (const auto& [mass, position] : masses) {
                config.masses.push_back(hl::PointMass{mass, position});
            }
            return hl::find_images(config, source, solve_options(tol_accept, false));
        },
        py::arg("masses"), py::arg("source") = hl::Cx(0.0), py::arg("gamma") = 0.0,
        py::arg("sigma_sign") = 1, py::arg("tol_accept") = 1e-8,
        "Convenience overload taking masses as (mass, position) pairs");

    m.def("parity_check", &hl::parity_check, py::arg("images"),
          "Shear-free image-count parity law; raises NotApplicableError with shear or "
          "a source on a caustic");

    m.def("polygon_lens", &hl::polygon_lens, py::arg("n"), py::arg("rho") = 1.0,
          py::arg("sigma_sign") = 1, "n equal masses 1/n on a regular polygon");

    m.def(
        "trace_critical",
        [](const std::vector<hl::Cx>& num, const std::vector<hl::Cx>& den, const hl::Bbox& bbox,
           int resolution) {
            const hl::Rational r{hl::Polynomial(num), hl::Polynomial(den)};
            return hl::trace_critical_set(r, bbox, resolution);
        },
        py::arg("num"), py::arg("den"), py::arg("bbox"), py::arg("resolution") = 512,
        "Trace the critical set |r'(z)| = 1 and its caustic image over a window");

    m.def(
        "verify_example",
        [](bool skip_census) {
            hl::VerifyOptions opts;
            opts.skip_census = skip_census;
            return hl::verify_reference_example(opts);
        },
        py::arg("skip_census") = false,
        "Full-pipeline check against the embedded extremal quadratic");
}
