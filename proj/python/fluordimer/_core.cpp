#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fluordimer/scan.hpp"
#include "fluordimer/spectrum.hpp"

namespace py = pybind11;
using namespace fluordimer;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Two dipole-coupled J=1/2 to J=1/2 atoms: vacuum couplings, Lindblad "
      "generator, resonance fluorescence spectra and parameter scans.";

  // ------------------------------------------------------------- constants
  m.attr("gamma_pi") = gamma_pi;
  m.attr("gamma_sigma") = gamma_sigma;
  m.attr("lambda_pi") = lambda_pi;
  m.attr("k0") = k0;
  m.attr("n_levels") = n_levels;
  m.attr("n_transitions") = n_transitions;
  m.attr("n_atoms") = n_atoms;
  m.attr("dim") = dim;
  m.attr("vdim") = vdim;
  m.attr("chi_normalisation") = chi_normalisation;

  // ---------------------------------------------------------- atomic model
  m.def("upper_level", &upper_level, py::arg("i"));
  m.def("lower_level", &lower_level, py::arg("i"));
  m.def("is_pi", &is_pi, py::arg("i"));
  m.def("decay_rate", &decay_rate, py::arg("i"));
  m.def("dipole_moment", &dipole_moment, py::arg("i"));
  m.def("atomic_raising", &atomic_raising, py::arg("i"));
  m.def("transition_raising", &transition_raising, py::arg("i"),
        py::arg("atom"));
  m.def("transition_lowering", &transition_lowering, py::arg("i"),
        py::arg("atom"));

  py::class_<Geometry>(m, "Geometry")
      .def(py::init([](double r12, double theta, double phi) {
             Geometry g;
             g.r12 = r12;
             g.theta = theta;
             g.phi = phi;
             return g;
           }),
           py::arg("r12") = Geometry{}.r12, py::arg("theta") = Geometry{}.theta,
           py::arg("phi") = Geometry{}.phi)
      .def_readwrite("r12", &Geometry::r12)
      .def_readwrite("theta", &Geometry::theta)
      .def_readwrite("phi", &Geometry::phi)
      .def("position", &Geometry::position, py::arg("atom"))
      .def("separation", &Geometry::separation);

  py::class_<DriveField>(m, "DriveField")
      .def(py::init([](double rabi, double detuning) {
             DriveField f;
             f.rabi = rabi;
             f.detuning = detuning;
             return f;
           }),
           py::arg("rabi") = DriveField{}.rabi,
           py::arg("detuning") = DriveField{}.detuning)
      .def_readwrite("rabi", &DriveField::rabi)
      .def_readwrite("detuning", &DriveField::detuning);

  m.def("rabi_frequency", &rabi_frequency, py::arg("i"), py::arg("atom"),
        py::arg("geometry"), py::arg("field"));

  // -------------------------------------------------------------- couplings
  m.def("chi_tensor", &chi_tensor, py::arg("r"), py::arg("k") = k0);

  py::class_<TpvcPair>(m, "TpvcPair")
      .def_readonly("gamma", &TpvcPair::gamma)
      .def_readonly("omega", &TpvcPair::omega);
  m.def("tpvc_constants", &tpvc_constants, py::arg("i"), py::arg("j"),
        py::arg("r"));
  m.def("spvc_constant", &spvc_constant, py::arg("i"), py::arg("j"));

  py::enum_<CouplingGroup>(m, "CouplingGroup")
      .value("diagonal", CouplingGroup::diagonal)
      .value("spvc", CouplingGroup::spvc)
      .value("g1", CouplingGroup::g1)
      .value("g2", CouplingGroup::g2)
      .value("g3", CouplingGroup::g3)
      .value("g4", CouplingGroup::g4)
      .value("g5", CouplingGroup::g5);
  m.def("classify_group", &classify_group, py::arg("i"), py::arg("j"),
        py::arg("mu"), py::arg("nu"));

  py::class_<GroupMask>(m, "GroupMask")
      .def(py::init<>())
      .def_static("all_on", &GroupMask::all_on)
      .def_static("all_off", &GroupMask::all_off)
      .def_readwrite("scale", &GroupMask::scale)
      .def_readwrite("spvc_eom", &GroupMask::spvc_eom)
      .def("factor", &GroupMask::factor, py::arg("group"));

  py::class_<CouplingTable>(m, "CouplingTable")
      .def("gamma", &CouplingTable::gamma, py::arg("i"), py::arg("j"),
           py::arg("mu"), py::arg("nu"))
      .def("omega", &CouplingTable::omega, py::arg("i"), py::arg("j"),
           py::arg("mu"), py::arg("nu"))
      .def("max_conjugate_asymmetry", &CouplingTable::max_conjugate_asymmetry);
  m.def("build_coupling_table", &build_coupling_table, py::arg("geometry"),
        py::arg("mask") = GroupMask::all_on());

  // ------------------------------------------------------------- generator
  py::register_exception<SteadyStateError>(m, "SteadyStateError",
                                           PyExc_RuntimeError);

  m.def("vectorize", &vectorize, py::arg("a"));
  m.def("unvectorize", &unvectorize, py::arg("v"));
  m.def("trace_functional", &trace_functional);
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("field"),
        py::arg("geometry"));
  m.def("build_liouvillian", &build_liouvillian, py::arg("field"),
        py::arg("geometry"), py::arg("table"));
  m.def("steady_state", &steady_state, py::arg("m"));

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_readonly("right_vectors", &SpectralDecomposition::right_vectors);
  m.def("liouvillian_eigenvalues", &liouvillian_eigenvalues, py::arg("m"),
        py::arg("with_vectors") = false);

  m.def("propagator", &propagator, py::arg("m"), py::arg("t"));
  m.def("time_evolve", &time_evolve, py::arg("rho0"), py::arg("t"),
        py::arg("m"));
  m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("atom"));

  // --------------------------------------------------------------- spectra
  m.def("default_detector", &default_detector);

  py::class_<SpectrumTermFlags>(m, "SpectrumTermFlags")
      .def(py::init<>())
      .def_readwrite("p1", &SpectrumTermFlags::p1)
      .def_readwrite("p2", &SpectrumTermFlags::p2)
      .def_readwrite("p3", &SpectrumTermFlags::p3)
      .def_readwrite("p4", &SpectrumTermFlags::p4);

  py::class_<SpectrumTrace>(m, "SpectrumTrace")
      .def_readonly("omega", &SpectrumTrace::omega)
      .def_readonly("total", &SpectrumTrace::total)
      .def_readonly("p1", &SpectrumTrace::p1)
      .def_readonly("p2", &SpectrumTrace::p2)
      .def_readonly("p3", &SpectrumTrace::p3)
      .def_readonly("p4", &SpectrumTrace::p4)
      .def("intra", &SpectrumTrace::intra)
      .def("inter", &SpectrumTrace::inter);

  py::class_<SpectrumSolver>(m, "SpectrumSolver")
      .def(py::init<const DriveField&, const Geometry&, const CouplingTable&>(),
           py::arg("field"), py::arg("geometry"), py::arg("table"))
      .def("correlation_transform", &SpectrumSolver::correlation_transform,
           py::arg("i"), py::arg("j"), py::arg("mu"), py::arg("nu"),
           py::arg("omega"), py::arg("detector") = default_detector())
      .def("evaluate", &SpectrumSolver::evaluate, py::arg("grid"),
           py::arg("flags") = SpectrumTermFlags{},
           py::arg("detector") = default_detector(), py::arg("workers") = 1)
      .def("coherent_intensity", &SpectrumSolver::coherent_intensity,
           py::arg("detector") = default_detector())
      .def("liouvillian", &SpectrumSolver::liouvillian,
           py::return_value_policy::copy)
      .def("steady_state_vec", &SpectrumSolver::steady_state_vec,
           py::return_value_policy::copy)
      .def("geometry", &SpectrumSolver::geometry,
           py::return_value_policy::copy);

  // ------------------------------------------------------------------ scans
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);

  py::enum_<ScanMode>(m, "ScanMode")
      .value("spectrum", ScanMode::spectrum)
      .value("eigenvalues_vs_rabi", ScanMode::eigenvalues_vs_rabi)
      .value("eigenvalues_vs_distance", ScanMode::eigenvalues_vs_distance)
      .value("steady_vs_detuning", ScanMode::steady_vs_detuning)
      .value("group_study", ScanMode::group_study);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("min", &GridSpec::min)
      .def_readwrite("max", &GridSpec::max)
      .def_readwrite("count", &GridSpec::count);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("drive", &RunConfig::drive)
      .def_readwrite("geometry", &RunConfig::geometry)
      .def_readwrite("mask", &RunConfig::mask)
      .def_readwrite("flags", &RunConfig::flags)
      .def_readwrite("grid", &RunConfig::grid)
      .def_readwrite("group", &RunConfig::group)
      .def_readwrite("p_values", &RunConfig::p_values)
      .def_readwrite("workers", &RunConfig::workers)
      .def_readwrite("out", &RunConfig::out);

  m.def("parse_config", &parse_config, py::arg("text"),
        py::arg("overrides") = std::vector<std::string>{});
  m.def("parse_config_file", &parse_config_file, py::arg("path"),
        py::arg("overrides") = std::vector<std::string>{});

  py::class_<ScanResult>(m, "ScanResult")
      .def_readonly("columns", &ScanResult::columns)
      .def_readonly("rows", &ScanResult::rows);
  m.def("run_scan", &run_scan, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("to_csv", &to_csv, py::arg("result"));
  m.def("write_csv", &write_csv, py::arg("result"), py::arg("path"));
}
