#include <iostream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdmqi/analytic.hpp"
#include "pdmqi/cli.hpp"
#include "pdmqi/error.hpp"
#include "pdmqi/info.hpp"
#include "pdmqi/model.hpp"
#include "pdmqi/numerics.hpp"
#include "pdmqi/special.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace pdmqi;

namespace {

py::dict report_dict(const info::InfoReport& r)
{
    py::dict d;
    d["n"] = r.n;
    d["a"] = r.a;
    d["hbar"] = r.hbar;
    d["S_x"] = r.S_x;
    d["S_p"] = r.S_p;
    d["S_sum"] = r.S_sum;
    d["bbm_bound"] = r.bbm_bound;
    d["F_x"] = r.F_x;
    d["F_p"] = r.F_p;
    d["x_mean"] = r.x_mean;
    d["x2_mean"] = r.x2_mean;
    d["p_mean"] = r.p_mean;
    d["p2_mean"] = r.p2_mean;
    d["p2_mean_momentum"] = r.p2_mean_momentum;
    d["sigma_x"] = r.sigma_x;
    d["sigma_p"] = r.sigma_p;
    d["uncertainty_product"] = r.uncertainty_product;
    d["S_p_closed_form"] = r.S_p_closed_form ? py::cast(*r.S_p_closed_form) : py::none();
    d["F_p_closed_form"] = r.F_p_closed_form ? py::cast(*r.F_p_closed_form) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_pdmqi, m)
{
    m.doc() = "Information measures for a particle with solitonic position-dependent mass";

    static py::exception<Error> error_type(m, "PdmqiError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error& e) {
            const std::string message = std::string(to_string(e.kind())) + ": " + e.what();
            py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(message);
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    m.def("hyp2f1_terminating",
          [](double a, double b, double c, double z) { return special::hyp2f1_terminating({a, b, c, z}); },
          "a"_a, "b"_a, "c"_a, "z"_a);

    py::class_<model::ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double, double, double>(), "m0"_a, "a"_a, "v1"_a, "v2"_a, "hbar"_a = 1.0)
        .def_static("preset", &model::ModelParams::preset, "a"_a, "hbar"_a = 1.0)
        .def_property_readonly("m0", &model::ModelParams::m0)
        .def_property_readonly("a", &model::ModelParams::a)
        .def_property_readonly("v1", &model::ModelParams::v1)
        .def_property_readonly("v2", &model::ModelParams::v2)
        .def_property_readonly("hbar", &model::ModelParams::hbar)
        .def_property_readonly("kappa_sq", &model::ModelParams::kappa_sq)
        .def("with_width", &model::ModelParams::with_width, "a"_a)
        .def("is_preset", &model::ModelParams::is_preset);

    m.def("mass_position", &model::mass_position, "x"_a, "params"_a);
    m.def("mass_momentum", &model::mass_momentum, "k"_a, "params"_a);
    m.def("potential_x", &model::potential_x, "x"_a, "params"_a);
    m.def("effective_potential_z", &model::effective_potential_z, "z"_a, "params"_a);
    m.def("x_to_z", &model::x_to_z, "x"_a);
    m.def("z_to_x", &model::z_to_x, "z"_a);

    m.def("energy_level", &analytic::energy_level, "params"_a, "n"_a);
    m.def("normalized_psi", &analytic::normalized_psi, "n"_a, "x"_a, "params"_a);
    m.def("normalized_phi", &analytic::normalized_phi, "n"_a, "p"_a, "params"_a);
    m.def("general_psi1", &analytic::general_psi1, "x"_a, "params"_a, "n"_a);

    py::class_<analytic::BoundState>(m, "BoundState")
        .def(py::init<const model::ModelParams&, int>(), "params"_a, "n"_a)
        .def_property_readonly("n", &analytic::BoundState::n)
        .def_property_readonly("energy", &analytic::BoundState::energy)
        .def_property_readonly("params", &analytic::BoundState::params)
        .def("psi", &analytic::BoundState::psi, "x"_a)
        .def("dpsi", &analytic::BoundState::dpsi, "x"_a)
        .def("phi", &analytic::BoundState::phi, "p"_a, "tol"_a = numerics::kDefaultFourierTol)
        .def("phi_closed_form", &analytic::BoundState::phi_closed_form, "p"_a);

    m.def(
        "compute_report",
        [](const analytic::BoundState& state, double quad_tol, double fourier_tol) {
            info::Tolerances tol;
            tol.quad = quad_tol;
            tol.fourier = fourier_tol;
            info::InfoReport r;
            {
                py::gil_scoped_release release;
                r = info::compute_report(state, tol);
            }
            return report_dict(r);
        },
        "state"_a, "quad_tol"_a = numerics::kDefaultQuadTol, "fourier_tol"_a = numerics::kDefaultFourierTol);
    m.def("bbm_bound", &info::bbm_bound, "hbar"_a = 1.0);

    m.def(
        "fd_spectrum",
        [](const model::ModelParams& params, std::size_t levels, std::size_t points) {
            const auto r = numerics::fd_eigensolve(params, levels, points);
            return py::dict("eigenvalues"_a = r.eigenvalues, "richardson"_a = r.richardson,
                            "convergence_order"_a = r.convergence_order);
        },
        "params"_a, "levels"_a, "points"_a = numerics::kDefaultGridPoints);

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            py::gil_scoped_release release;
            return cli::run(args, std::cout, std::cerr);
        },
        "args"_a, "Runs the command-line front end with the given arguments; returns the exit code.");
}
