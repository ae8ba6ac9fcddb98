// Copyright 2026 The nmqw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nmqw/blp.hpp"
#include "nmqw/io.hpp"
#include "nmqw/qmath.hpp"
#include "nmqw/qwalk.hpp"
#include "nmqw/tomography.hpp"

namespace py = pybind11;
using namespace nmqw;

PYBIND11_MODULE(_core, m) {
  m.doc() = "BLP non-Markovianity from N^2 prepared-state dynamics, with an "
            "open-quantum-walk simulator";

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def(py::init([](double h, double t, double p) {
             return Tolerances{h, t, p};
           }),
           py::arg("hermiticity"), py::arg("trace"), py::arg("psd"))
      .def_readwrite("hermiticity", &Tolerances::hermiticity)
      .def_readwrite("trace", &Tolerances::trace)
      .def_readwrite("psd", &Tolerances::psd);

  py::class_<PureState>(m, "PureState")
      .def(py::init<ComplexVector>(), py::arg("amplitudes"))
      .def_static("basis_vector", &PureState::basis_vector, py::arg("m"), py::arg("dim"))
      .def_property_readonly("amplitudes", &PureState::amplitudes)
      .def_property_readonly("dim", &PureState::dim);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<ComplexMatrix, const Tolerances&>(), py::arg("matrix"),
           py::arg("tolerances") = Tolerances{})
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("dim", &DensityMatrix::dim);

  m.def("hermitian_eigenvalues", &hermitian_eigenvalues, py::arg("h"),
        py::arg("tol") = 1e-10);
  m.def("partial_trace_env",
        py::overload_cast<const ComplexMatrix&, Eigen::Index, Eigen::Index>(
            &partial_trace_env),
        py::arg("joint"), py::arg("n_sys"), py::arg("n_env"));
  m.def("pure_to_density", &pure_to_density, py::arg("psi"));
  m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));

  py::enum_<LabelKind>(m, "LabelKind")
      .value("DIAG", LabelKind::Diag)
      .value("X", LabelKind::X)
      .value("Y", LabelKind::Y);

  py::class_<BasisLabel>(m, "BasisLabel")
      .def_static("diag", &BasisLabel::diag, py::arg("m"))
      .def_static("x", &BasisLabel::x, py::arg("m"), py::arg("n"))
      .def_static("y", &BasisLabel::y, py::arg("m"), py::arg("n"))
      .def_readonly("kind", &BasisLabel::kind)
      .def_readonly("m", &BasisLabel::m)
      .def_readonly("n", &BasisLabel::n)
      .def("__str__", &BasisLabel::str)
      .def("__repr__", &BasisLabel::str)
      .def("__eq__",
           [](const BasisLabel& a, const BasisLabel& b) { return a == b; })
      .def("__lt__", [](const BasisLabel& a, const BasisLabel& b) { return a < b; })
      .def("__hash__", [](const BasisLabel& label) {
        return std::hash<int>()(static_cast<int>(label.kind) * 1000003 +
                                label.m * 1009 + label.n);
      });

  py::class_<CoefficientVector>(m, "CoefficientVector")
      .def(py::init<>())
      .def_readwrite("a0", &CoefficientVector::a0)
      .def_readwrite("ax", &CoefficientVector::ax)
      .def_readwrite("ay", &CoefficientVector::ay)
      .def_property_readonly("dim", &CoefficientVector::dim);

  py::class_<DynamicsDataset> dataset(m, "DynamicsDataset");
  py::enum_<DynamicsDataset::Flavor>(dataset, "Flavor")
      .value("PREPARED", DynamicsDataset::Flavor::Prepared)
      .value("BASIS", DynamicsDataset::Flavor::Basis);
  dataset.def(py::init<>())
      .def_readwrite("flavor", &DynamicsDataset::flavor)
      .def_readwrite("dim", &DynamicsDataset::dim)
      .def_readwrite("times", &DynamicsDataset::times)
      .def_readwrite("series", &DynamicsDataset::series)
      .def_readwrite("metadata", &DynamicsDataset::metadata)
      .def("validate", &DynamicsDataset::validate, py::arg("tolerances") = Tolerances{})
      .def_property_readonly("num_times", &DynamicsDataset::num_times);

  m.def("basis_operators", &basis_operators, py::arg("dim"));
  m.def("prepared_states", &prepared_states, py::arg("dim"));
  m.def("recover_basis_dynamics", &recover_basis_dynamics, py::arg("prepared"));
  m.def("decompose", &decompose, py::arg("rho"));

  py::class_<ReconstructOptions>(m, "ReconstructOptions")
      .def(py::init<>())
      .def_readwrite("tolerances", &ReconstructOptions::tolerances)
      .def_readwrite("project_psd", &ReconstructOptions::project_psd);

  m.def("reconstruct_dynamics", &reconstruct_dynamics, py::arg("coeffs"),
        py::arg("basis"), py::arg("options") = ReconstructOptions{});

  py::class_<DistanceTrajectory>(m, "DistanceTrajectory")
      .def(py::init<>())
      .def_readwrite("times", &DistanceTrajectory::times)
      .def_readwrite("values", &DistanceTrajectory::values);

  py::enum_<PairMode>(m, "PairMode")
      .value("ORTHOGONAL_PURE", PairMode::OrthogonalPure)
      .value("FREE_PURE", PairMode::FreePure)
      .value("GENERAL_DENSITY", PairMode::GeneralDensity);

  py::enum_<SearchMethod>(m, "SearchMethod")
      .value("SIMPLEX", SearchMethod::Simplex)
      .value("GRADIENT", SearchMethod::Gradient);

  py::class_<PairParams>(m, "PairParams")
      .def(py::init<>())
      .def_readwrite("raw1", &PairParams::raw1)
      .def_readwrite("raw2", &PairParams::raw2)
      .def_readwrite("mode", &PairParams::mode);

  py::class_<OptimizerOptions>(m, "OptimizerOptions")
      .def(py::init<>())
      .def_readwrite("mode", &OptimizerOptions::mode)
      .def_readwrite("method", &OptimizerOptions::method)
      .def_readwrite("restarts", &OptimizerOptions::restarts)
      .def_readwrite("max_iterations", &OptimizerOptions::max_iterations)
      .def_readwrite("tolerance", &OptimizerOptions::tolerance)
      .def_readwrite("seed", &OptimizerOptions::seed)
      .def_readwrite("threads", &OptimizerOptions::threads);

  py::class_<OptimizerDiagnostics>(m, "OptimizerDiagnostics")
      .def_readonly("restarts", &OptimizerDiagnostics::restarts)
      .def_readonly("seed", &OptimizerDiagnostics::seed)
      .def_readonly("mode", &OptimizerDiagnostics::mode)
      .def_readonly("method", &OptimizerDiagnostics::method)
      .def_readonly("max_iterations", &OptimizerDiagnostics::max_iterations)
      .def_readonly("tolerance", &OptimizerDiagnostics::tolerance)
      .def_readonly("best_restart", &OptimizerDiagnostics::best_restart)
      .def_readonly("total_iterations", &OptimizerDiagnostics::total_iterations)
      .def_readonly("converged_restarts", &OptimizerDiagnostics::converged_restarts)
      .def_readonly("abandoned_restarts", &OptimizerDiagnostics::abandoned_restarts)
      .def_readonly("floor_value", &OptimizerDiagnostics::floor_value);

  py::class_<BLPResult>(m, "BLPResult")
      .def_readonly("value", &BLPResult::value)
      .def_readonly("pair", &BLPResult::pair)
      .def_readonly("rho1", &BLPResult::rho1)
      .def_readonly("rho2", &BLPResult::rho2)
      .def_readonly("trajectory", &BLPResult::trajectory)
      .def_readonly("diagnostics", &BLPResult::diagnostics);

  m.def("trace_distance", &trace_distance, py::arg("rho1"), py::arg("rho2"));
  m.def("distance_trajectory", &distance_trajectory, py::arg("dyn1"), py::arg("dyn2"),
        py::arg("times"));
  m.def("blp_functional", &blp_functional, py::arg("trajectory"));
  m.def("optimize_pair", &optimize_pair, py::arg("basis"),
        py::arg("options") = OptimizerOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("grid_scan_qubit", &grid_scan_qubit, py::arg("basis"), py::arg("n_theta") = 200,
        py::arg("n_phi") = 400, py::call_guard<py::gil_scoped_release>());

  py::enum_<PhaseConvention>(m, "PhaseConvention")
      .value("LITERAL", PhaseConvention::Literal)
      .value("OMEGA_DT", PhaseConvention::OmegaDt);

  py::class_<QWConfig>(m, "QWConfig")
      .def(py::init<>())
      .def_readwrite("half_width", &QWConfig::half_width)
      .def_readwrite("steps", &QWConfig::steps)
      .def_readwrite("omega0", &QWConfig::omega0)
      .def_readwrite("omega_carrier", &QWConfig::omega_carrier)
      .def_readwrite("n_h", &QWConfig::n_h)
      .def_readwrite("n_v", &QWConfig::n_v)
      .def_readwrite("dt_h", &QWConfig::dt_h)
      .def_readwrite("dt_v", &QWConfig::dt_v)
      .def_readwrite("boundary", &QWConfig::boundary)
      .def_readwrite("env_weights", &QWConfig::env_weights)
      .def_readwrite("phase_convention", &QWConfig::phase_convention)
      .def_property_readonly("sites", &QWConfig::sites)
      .def_property_readonly("system_dim", &QWConfig::system_dim)
      .def("validate", &QWConfig::validate);

  m.def("build_step_operator", &build_step_operator, py::arg("config"));
  m.def("evolve_reduced", &evolve_reduced, py::arg("config"), py::arg("rho0"),
        py::call_guard<py::gil_scoped_release>());
  m.def("generate_prepared_dataset", &generate_prepared_dataset, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<DephasingDataset>(m, "DephasingDataset")
      .def_readonly("dataset", &DephasingDataset::dataset)
      .def_readonly("analytic_value", &DephasingDataset::analytic_value);

  m.def("synthetic_dephasing_dataset", &synthetic_dephasing_dataset,
        py::arg("delta_phase_per_step"), py::arg("steps"));

  py::class_<ReadOptions>(m, "ReadOptions")
      .def(py::init<>())
      .def_readwrite("tolerances", &ReadOptions::tolerances);

  m.def("read_dataset", &read_dataset, py::arg("text"), py::arg("options") = ReadOptions{});
  m.def("write_dataset", &write_dataset, py::arg("dataset"));
  m.def("read_config", &read_config, py::arg("text"));
  m.def("write_config", &write_config, py::arg("config"));
  m.def("read_result", &read_result, py::arg("text"));
  m.def("write_result", &write_result, py::arg("result"));
  m.def("write_trajectory_table", &write_trajectory_table, py::arg("trajectory"));
}
