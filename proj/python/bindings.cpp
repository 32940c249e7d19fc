#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualjc/analysis.hpp"
#include "dualjc/closed_form.hpp"
#include "dualjc/numerics.hpp"

namespace py = pybind11;
using namespace dualjc;

namespace {

SubsystemPair to_pair(const std::string& name) { return SubsystemPair::parse(name); }

Source to_source(const std::string& s) {
    if (s == "closed") return Source::ClosedForm;
    if (s == "oracle") return Source::Oracle;
    throw ConfigError("source must be 'closed' or 'oracle'");
}

InitialState to_initial(const std::string& family, double alpha) {
    if (family == "psi") return InitialState::psi(alpha);
    if (family == "phi") return InitialState::phi(alpha);
    throw ConfigError("family must be 'psi' or 'phi'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Double Jaynes-Cummings entanglement dynamics";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<QubitEquivalenceError>(m, "QubitEquivalenceError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double omega, double nu, double g) {
                 ModelParams p{omega, nu, g};
                 p.validate();
                 return p;
             }),
             py::arg("omega"), py::arg("nu"), py::arg("g"))
        .def_static("from_detuning", &ModelParams::from_detuning, py::arg("delta"), py::arg("big_g"),
                    py::arg("nu"))
        .def_readonly("omega", &ModelParams::omega)
        .def_readonly("nu", &ModelParams::nu)
        .def_readonly("g", &ModelParams::g)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(omega=" + std::to_string(p.omega) + ", nu=" + std::to_string(p.nu) +
                   ", g=" + std::to_string(p.g) + ")";
        });

    py::class_<JCConstants>(m, "JCConstants")
        .def_readonly("delta", &JCConstants::delta)
        .def_readonly("big_g", &JCConstants::big_g)
        .def_readonly("rabi", &JCConstants::rabi)
        .def_readonly("lambda_plus", &JCConstants::lambda_plus)
        .def_readonly("lambda_minus", &JCConstants::lambda_minus)
        .def_readonly("l_coef", &JCConstants::l_coef)
        .def_readonly("m_coef", &JCConstants::m_coef)
        .def_readonly("n_coef", &JCConstants::n_coef)
        .def_property_readonly("period", &JCConstants::period);

    m.def("derive_constants", &derive_constants, py::arg("params"));

    m.def(
        "psi_amplitudes",
        [](double alpha, const JCConstants& c, double t) {
            const auto x = psi_amplitudes(alpha, c, t);
            return std::vector<Complex>{x.x1, x.x2, x.x3, x.x4};
        },
        py::arg("alpha"), py::arg("constants"), py::arg("t"));
    m.def(
        "phi_amplitudes",
        [](double alpha, const JCConstants& c, double t) {
            const auto x = phi_amplitudes(alpha, c, t);
            return std::vector<Complex>{x.x1, x.x2, x.x3, x.x4, x.x5};
        },
        py::arg("alpha"), py::arg("constants"), py::arg("t"));
    m.def(
        "psi_reduced_density",
        [](double a, const JCConstants& c, double t) { return Eigen::MatrixXcd(psi_reduced_density(a, c, t).entries); },
        py::arg("alpha"), py::arg("constants"), py::arg("t"));
    m.def(
        "phi_reduced_density",
        [](double a, const JCConstants& c, double t) { return Eigen::MatrixXcd(phi_reduced_density(a, c, t).entries); },
        py::arg("alpha"), py::arg("constants"), py::arg("t"));
    m.def("psi_concurrence", &psi_concurrence, py::arg("alpha"), py::arg("constants"), py::arg("t"));
    m.def("phi_f", &phi_f, py::arg("alpha"), py::arg("constants"), py::arg("t"));
    m.def("phi_concurrence", &phi_concurrence, py::arg("alpha"), py::arg("constants"), py::arg("t"));

    m.def(
        "wootters_concurrence",
        [](const Eigen::Matrix4cd& rho) {
            DensityMatrix d;
            d.entries = rho;
            return wootters_concurrence(d);
        },
        py::arg("rho"));

    m.def(
        "evolve_state",
        [](const ModelParams& params, const std::string& family, double alpha, double t, int cutoff) {
            const Propagator prop(build_hamiltonian(params, cutoff));
            return Eigen::VectorXcd(prop.evolve(initial_state_vector(to_initial(family, alpha), cutoff), t).amplitudes);
        },
        py::arg("params"), py::arg("family"), py::arg("alpha"), py::arg("t"), py::arg("cutoff") = 1,
        "Oracle state vector exp(-iHt)|psi0> in flattened basis order.");

    m.def(
        "pair_concurrence",
        [](const ModelParams& params, const std::string& family, double alpha, double t, const std::string& pair,
           int cutoff) {
            const Propagator prop(build_hamiltonian(params, cutoff));
            return pair_concurrence(prop.evolve(initial_state_vector(to_initial(family, alpha), cutoff), t),
                                    to_pair(pair));
        },
        py::arg("params"), py::arg("family"), py::arg("alpha"), py::arg("t"), py::arg("pair") = "AB",
        py::arg("cutoff") = 1);

    m.def(
        "scan",
        [](const std::string& family, double alpha, const ModelParams& params, const std::string& pair, double t_max,
           std::size_t steps, const std::string& source, int cutoff) {
            const auto s = scan(to_initial(family, alpha), params, to_pair(pair), t_max, steps, to_source(source), cutoff);
            return py::make_tuple(s.times, s.values);
        },
        py::arg("family"), py::arg("alpha"), py::arg("params"), py::arg("pair") = "AB", py::arg("t_max") = 4.0 * 3.141592653589793,
        py::arg("steps") = kDefaultSteps, py::arg("source") = "closed", py::arg("cutoff") = 1,
        "Returns (times, concurrences).");

    py::class_<Interval>(m, "Interval")
        .def_readonly("start", &Interval::start)
        .def_readonly("end", &Interval::end)
        .def("__repr__", [](const Interval& iv) {
            return "Interval(" + std::to_string(iv.start) + ", " + std::to_string(iv.end) + ")";
        });

    py::class_<DeathReport>(m, "DeathReport")
        .def_readonly("dead_intervals", &DeathReport::dead_intervals)
        .def_readonly("touch_points", &DeathReport::touch_points)
        .def_readonly("period", &DeathReport::period)
        .def_readonly("initial_concurrence", &DeathReport::initial_concurrence)
        .def_property_readonly("total_dead_time", &DeathReport::total_dead_time);

    m.def(
        "detect_death",
        [](const std::string& family, double alpha, const ModelParams& params, double t_max, std::size_t steps,
           const std::string& source, std::optional<double> zero_tol, int cutoff) {
            const Source src = to_source(source);
            const auto s = scan(to_initial(family, alpha), params, SubsystemPair{Subsystem::AtomA, Subsystem::AtomB},
                                t_max, steps, src, cutoff);
            return detect_death(s, zero_tol.value_or(default_zero_tol(src)));
        },
        py::arg("family"), py::arg("alpha"), py::arg("params"), py::arg("t_max"), py::arg("steps") = kDefaultSteps,
        py::arg("source") = "closed", py::arg("zero_tol") = py::none(), py::arg("cutoff") = 1,
        "Scan the atom-atom concurrence and report sudden-death intervals.");

    m.def("death_threshold_alpha", &death_threshold_alpha);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("max_abs_error", &ValidationReport::max_abs_error)
        .def_readonly("worst_time", &ValidationReport::worst_time)
        .def_readonly("samples", &ValidationReport::samples)
        .def_readonly("tolerance", &ValidationReport::tolerance)
        .def_readonly("passed", &ValidationReport::pass)
        .def_readonly("amplitude_error", &ValidationReport::amplitude_error)
        .def_readonly("density_error", &ValidationReport::density_error)
        .def_readonly("concurrence_error", &ValidationReport::concurrence_error);

    m.def(
        "validate",
        [](const std::string& family, double alpha, const ModelParams& params, double t_max, std::size_t steps,
           double tolerance, int cutoff) {
            return validate(to_initial(family, alpha), params, t_max, steps, tolerance, cutoff);
        },
        py::arg("family"), py::arg("alpha"), py::arg("params"), py::arg("t_max"), py::arg("steps") = 500,
        py::arg("tolerance") = 1e-9, py::arg("cutoff") = 1);
}
