#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cohlab/bath.hpp"
#include "cohlab/channel.hpp"
#include "cohlab/codes.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/propagator.hpp"
#include "cohlab/qubit.hpp"
#include "cohlab/specfun.hpp"

namespace py = pybind11;
using namespace cohlab;

namespace {

TimeGrid to_grid(const py::array_t<double, py::array::c_style | py::array::forcecast>& t) {
  if (t.ndim() != 1) throw DomainError("time samples must be one-dimensional");
  return TimeGrid::from_samples(std::vector<double>(t.data(), t.data() + t.size()));
}

py::array_t<double> to_array(std::span<const double> v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<std::complex<double>> to_array(const std::vector<std::complex<double>>& v) {
  return py::array_t<std::complex<double>>(v.size(), v.data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact coherent-state qubit dynamics in a bosonic bath";

  auto base = py::register_exception<Error>(m, "CohlabError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());

  auto sf = m.def_submodule("specfun", "Special functions");
  sf.def("e1", py::overload_cast<std::complex<double>>(&specfun::e1), py::arg("z"));
  sf.def("ei", &specfun::ei, py::arg("x"));
  sf.def("dawson", &specfun::dawson, py::arg("x"));

  py::enum_<SelfEnergyRoute>(m, "SelfEnergyRoute")
      .value("automatic", SelfEnergyRoute::automatic)
      .value("closed_form", SelfEnergyRoute::closed_form)
      .value("quadrature", SelfEnergyRoute::quadrature);

  py::class_<BathSpec>(m, "BathSpec")
      .def(py::init<double, double, double>(), py::arg("s"), py::arg("eta0"), py::arg("omega_c") = 1.0)
      .def_property_readonly("s", &BathSpec::s)
      .def_property_readonly("eta0", &BathSpec::eta0)
      .def_property_readonly("omega_c", &BathSpec::omega_c)
      .def_property_readonly("eta_s", &BathSpec::eta_s)
      .def("__repr__", [](const BathSpec& b) {
        return "BathSpec(s=" + std::to_string(b.s()) + ", eta0=" + std::to_string(b.eta0()) +
               ", omega_c=" + std::to_string(b.omega_c()) + ")";
      });

  m.def(
      "spectral_density",
      [](const BathSpec& bath, py::array_t<double> omega) {
        return py::vectorize([&bath](double w) { return spectral_density(bath, w); })(omega);
      },
      py::arg("bath"), py::arg("omega"));
  m.def("correlation", &correlation, py::arg("bath"), py::arg("t"));
  m.def("level_shift", &level_shift, py::arg("bath"), py::arg("x"), py::arg("route") = SelfEnergyRoute::automatic);

  py::class_<PoleRecord>(m, "PoleRecord")
      .def_readonly("location", &PoleRecord::location)
      .def_readonly("frequency", &PoleRecord::frequency)
      .def_readonly("residue", &PoleRecord::residue);

  py::class_<PropagatorSolution>(m, "PropagatorSolution")
      .def_property_readonly("t", [](const PropagatorSolution& s) { return to_array(s.grid.samples()); })
      .def_property_readonly("u", [](const PropagatorSolution& s) { return to_array(s.u); })
      .def_property_readonly("method", [](const PropagatorSolution& s) { return std::string(to_string(s.method)); })
      .def_readonly("poles", &PropagatorSolution::poles)
      .def_readonly("steady_modulus", &PropagatorSolution::steady_modulus)
      .def_readonly("error_estimate", &PropagatorSolution::error_estimate);

  m.def(
      "solve_volterra",
      [](const BathSpec& bath, double omega0, const py::array_t<double, py::array::c_style | py::array::forcecast>& t,
         double max_step, double tolerance) {
        VolterraOptions options;
        options.max_step = max_step;
        options.tolerance = tolerance;
        const auto grid = to_grid(t);
        py::gil_scoped_release release;
        return solve_volterra(bath, omega0, grid, options);
      },
      py::arg("bath"), py::arg("omega0"), py::arg("t"), py::arg("max_step") = 0.1, py::arg("tolerance") = 1e-5,
      "Uniform time samples starting at 0.");
  m.def(
      "solve_laplace",
      [](const BathSpec& bath, double omega0, const py::array_t<double, py::array::c_style | py::array::forcecast>& t,
         SelfEnergyRoute route) {
        LaplaceOptions options;
        options.route = route;
        const auto grid = to_grid(t);
        py::gil_scoped_release release;
        return solve_laplace(bath, omega0, grid, options);
      },
      py::arg("bath"), py::arg("omega0"), py::arg("t"), py::arg("route") = SelfEnergyRoute::automatic);
  m.def(
      "solve_markov",
      [](const BathSpec& bath, double omega0, const py::array_t<double, py::array::c_style | py::array::forcecast>& t) {
        return solve_markov(bath, omega0, to_grid(t));
      },
      py::arg("bath"), py::arg("omega0"), py::arg("t"));
  m.def("find_poles", &find_poles, py::arg("bath"), py::arg("omega0"), py::arg("route") = SelfEnergyRoute::automatic);
  m.def("steady_modulus", &steady_modulus, py::arg("bath"), py::arg("omega0"));
  m.def(
      "lamb_shift", [](const BathSpec& bath, double omega0) { return lamb_shift(bath, omega0).omega0_prime; },
      py::arg("bath"), py::arg("omega0"), "Weak-coupling shifted frequency omega0'.");

  m.def("overlap", &overlap, py::arg("bra"), py::arg("ket"));
  m.def("phase_error_prob", py::vectorize(&phase_error_prob), py::arg("alpha0"), py::arg("u"));

  py::class_<TwoQubitState>(m, "TwoQubitState")
      .def_readonly("rho", &TwoQubitState::rho)
      .def_readonly("alpha0", &TwoQubitState::alpha0)
      .def_readonly("u", &TwoQubitState::u)
      .def_readonly("c", &TwoQubitState::c)
      .def_readonly("n_bits", &TwoQubitState::n_bits);

  py::class_<ChannelMetrics>(m, "ChannelMetrics")
      .def_readonly("concurrence", &ChannelMetrics::concurrence)
      .def_readonly("f_max", &ChannelMetrics::f_max)
      .def_readonly("fidelity", &ChannelMetrics::fidelity)
      .def("__repr__", [](const ChannelMetrics& c) {
        return "ChannelMetrics(concurrence=" + std::to_string(c.concurrence) + ", f_max=" + std::to_string(c.f_max) +
               ", fidelity=" + std::to_string(c.fidelity) + ")";
      });

  m.def("cluster_state_density", &cluster_state_density, py::arg("alpha0"), py::arg("u"));
  m.def("cluster_state_density_generic", &cluster_state_density_generic, py::arg("alpha0"), py::arg("u"),
        py::arg("n") = 1);
  m.def("concurrence_closed", &concurrence_closed, py::arg("alpha0"), py::arg("u"));
  m.def("fef_closed", &fef_closed, py::arg("alpha0"), py::arg("u"));
  m.def("wootters_concurrence", &wootters_concurrence, py::arg("state"));
  m.def("fef_oracle", &fef_oracle, py::arg("state"));
  m.def("teleportation_fidelity", &teleportation_fidelity, py::arg("f_max"));
  m.def("channel_metrics", &channel_metrics, py::arg("alpha0"), py::arg("u"));

  m.def("phase_success_prob", &phase_success_prob, py::arg("n"), py::arg("p_e"));
  m.def("corrected_c", &corrected_c, py::arg("n"), py::arg("p_e"));
  m.def("corrected_channel_metrics", &corrected_channel_metrics, py::arg("alpha0"), py::arg("u"), py::arg("n"));
  m.def("bitflip_p_e", &bitflip_p_e, py::arg("n"), py::arg("alpha0"), py::arg("u"));
  m.def("bitflip_density", &bitflip_density, py::arg("n"), py::arg("alpha0"), py::arg("u"));
  m.def("bitflip_metrics", &bitflip_metrics, py::arg("n"), py::arg("alpha0"), py::arg("u"));
}
