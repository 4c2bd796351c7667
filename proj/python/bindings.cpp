// Python face of the library. Mirrors the C++ surface: models, evolution,
// entropy rates, detection, and the three-qubit classification, so the same
// operations drive notebooks and the CLI alike. Precondition violations
// surface as ValueError, numerical failures as RuntimeError.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "qdiss/entanglement.hpp"

namespace py = pybind11;
using namespace qdiss;

namespace {

EvolveOptions parse_options(const std::string& method, double max_step) {
  EvolveOptions options;
  if (method == "rk4") {
    options.method = Method::rk4;
  } else if (method == "exact") {
    options.method = Method::exact;
  } else {
    throw std::invalid_argument("method must be 'rk4' or 'exact'");
  }
  options.max_step = max_step;
  return options;
}

}  // namespace

PYBIND11_MODULE(_qdiss, m) {
  m.doc() = "Dissipative qubit dynamics and entropy-based entanglement tests";

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<ComplexMatrix, std::vector<int>>(), py::arg("matrix"),
           py::arg("dims"))
      .def_static("from_pure", &DensityMatrix::from_pure,
                  py::arg("amplitudes"), py::arg("dims"))
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("dims", &DensityMatrix::dims)
      .def("purity", &DensityMatrix::purity)
      .def("probabilities",
           [](const DensityMatrix& rho) {
             return rho.spectrum().probabilities;
           })
      .def("marginal", &DensityMatrix::marginal, py::arg("keep"));

  py::class_<Channel>(m, "Channel")
      .def(py::init([](double rate, ComplexMatrix op) {
             return Channel{rate, std::move(op)};
           }),
           py::arg("rate"), py::arg("op"))
      .def_readonly("rate", &Channel::rate)
      .def_readonly("op", &Channel::op);

  py::class_<DiagonalModel>(m, "DiagonalModel")
      .def(py::init<ComplexMatrix, std::vector<Channel>>(),
           py::arg("hamiltonian"), py::arg("channels"))
      .def_property_readonly("hamiltonian", &DiagonalModel::hamiltonian)
      .def_property_readonly("channels", &DiagonalModel::channels)
      .def("completely_positive", &DiagonalModel::completely_positive);

  py::class_<GKSModel>(m, "GKSModel")
      .def(py::init<ComplexMatrix, std::vector<ComplexMatrix>, ComplexMatrix>(),
           py::arg("hamiltonian"), py::arg("ops"), py::arg("coeff"))
      .def_property_readonly("hamiltonian", &GKSModel::hamiltonian)
      .def_property_readonly("ops", &GKSModel::ops)
      .def_property_readonly("coeff", &GKSModel::coeff);

  m.def("diagonalize", &diagonalize_gks, py::arg("model"));
  m.def("generator",
        py::overload_cast<const DiagonalModel&, const ComplexMatrix&>(
            &generator),
        py::arg("model"), py::arg("rho"));
  m.def("generator",
        py::overload_cast<const GKSModel&, const ComplexMatrix&>(&generator),
        py::arg("model"), py::arg("rho"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states);

  m.def(
      "evolve",
      [](const DiagonalModel& model, const DensityMatrix& initial,
         const std::vector<double>& grid, const std::string& method,
         double max_step) {
        return evolve(model, initial, grid, parse_options(method, max_step));
      },
      py::arg("model"), py::arg("initial"), py::arg("grid"),
      py::arg("method") = "rk4", py::arg("max_step") = 1e-3);

  m.def("positivity_probe", &positivity_probe, py::arg("model"),
        py::arg("psi0"), py::arg("psi1"), py::arg("dt"));
  m.def(
      "trace_power_rate",
      [](const DiagonalModel& model, const DensityMatrix& rho, double q) {
        return trace_power_rate(model, rho, q);
      },
      py::arg("model"), py::arg("rho"), py::arg("q"));
  m.def("purity_rate", &purity_rate, py::arg("model"), py::arg("rho"));
  m.def(
      "tsallis_rate",
      [](const DiagonalModel& model, const DensityMatrix& rho, double q) {
        return tsallis_rate(model, rho, q);
      },
      py::arg("model"), py::arg("rho"), py::arg("q"));

  m.def(
      "tsallis_entropy",
      [](const std::vector<double>& p, double q) {
        return tsallis_entropy(p, q);
      },
      py::arg("probabilities"), py::arg("q"));
  m.def("default_q_grid", &default_q_grid);

  py::enum_<Sign>(m, "Sign")
      .value("negative", Sign::negative)
      .value("zero", Sign::zero)
      .value("positive", Sign::positive);

  py::class_<ConditionalEntropyResult>(m, "ConditionalEntropyResult")
      .def_readonly("value", &ConditionalEntropyResult::value)
      .def_readonly("q", &ConditionalEntropyResult::q)
      .def_readonly("conditioned_on", &ConditionalEntropyResult::conditioned_on)
      .def_readonly("numerator", &ConditionalEntropyResult::numerator)
      .def_readonly("denominator", &ConditionalEntropyResult::denominator);

  m.def(
      "conditional_q_entropy",
      [](const DensityMatrix& joint, const std::vector<int>& condition_on,
         double q) { return conditional_q_entropy(joint, condition_on, q); },
      py::arg("joint"), py::arg("condition_on"), py::arg("q"));
  m.def("conditional_sign_at_infinity", &conditional_sign_at_infinity,
        py::arg("joint"), py::arg("condition_on"));

  m.def("pauli", &pauli, py::arg("axis"), py::arg("party"),
        py::arg("n_parties"));
  m.def(
      "werner",
      [](double x, int levels, int parties) {
        return werner({x, levels, parties});
      },
      py::arg("x"), py::arg("levels") = 2, py::arg("parties") = 2);
  m.def("werner_threshold", &werner_threshold, py::arg("levels"),
        py::arg("parties"));

  py::class_<ThreeQubitState>(m, "ThreeQubitState")
      .def_readonly("label", &ThreeQubitState::label)
      .def_readonly("amplitudes", &ThreeQubitState::amplitudes)
      .def("density", &ThreeQubitState::density);

  m.def("three_qubit", &three_qubit, py::arg("label"));
  m.def("three_qubit_labels", &three_qubit_labels);
  m.def("heisenberg_3spin", &heisenberg_3spin);

  py::class_<EntanglementVerdict>(m, "EntanglementVerdict")
      .def_readonly("detected_by_q_criterion",
                    &EntanglementVerdict::detected_by_q_criterion)
      .def_readonly("witness_q", &EntanglementVerdict::witness_q)
      .def_readonly("min_conditional_value",
                    &EntanglementVerdict::min_conditional_value)
      .def_readonly("infinity_sign", &EntanglementVerdict::infinity_sign)
      .def_readonly("ppt_min_eigenvalue",
                    &EntanglementVerdict::ppt_min_eigenvalue)
      .def_readonly("condition_on", &EntanglementVerdict::condition_on)
      .def_readonly("remainder", &EntanglementVerdict::remainder);

  m.def("detect", &detect, py::arg("rho"), py::arg("condition_on"),
        py::arg("q_grid") = default_q_grid());
  m.def("ppt_min_eigenvalue", &ppt_min_eigenvalue, py::arg("rho"));
  m.def(
      "threshold_scan",
      [](int levels, int parties, const std::vector<int>& condition_on,
         double tol) {
        return threshold_scan({0.0, levels, parties}, condition_on,
                              default_q_grid(), tol);
      },
      py::arg("levels"), py::arg("parties"),
      py::arg("condition_on") = std::vector<int>{}, py::arg("tol") = 1e-4);

  py::enum_<Symmetry>(m, "Symmetry")
      .value("S", Symmetry::S)
      .value("AS", Symmetry::AS)
      .value("NS", Symmetry::NS);

  m.def(
      "symmetry_label",
      [](const ComplexVector& psi, const std::vector<int>& dims, int a, int b) {
        return symmetry_label(psi, dims, a, b);
      },
      py::arg("psi"), py::arg("dims"), py::arg("party_a"), py::arg("party_b"));
  m.def(
      "symmetry_label",
      [](const DensityMatrix& rho, int a, int b) {
        return symmetry_label(rho, a, b);
      },
      py::arg("rho"), py::arg("party_a"), py::arg("party_b"));

  py::class_<SymmetrySummary>(m, "SymmetrySummary")
      .def_readonly("label", &SymmetrySummary::label)
      .def_readonly("parties", &SymmetrySummary::parties);

  m.def("full_symmetry", &full_symmetry, py::arg("psi"), py::arg("dims"));

  py::class_<MarginalClassification>(m, "MarginalClassification")
      .def_readonly("pair", &MarginalClassification::pair)
      .def_readonly("symmetry", &MarginalClassification::symmetry)
      .def_readonly("robustness", &MarginalClassification::robustness)
      .def_readonly("ppt_min_eigenvalue",
                    &MarginalClassification::ppt_min_eigenvalue)
      .def_readonly("q_criterion_detected",
                    &MarginalClassification::q_criterion_detected)
      .def_readonly("min_conditional_value",
                    &MarginalClassification::min_conditional_value);

  py::class_<ClassificationRow>(m, "ClassificationRow")
      .def_readonly("label", &ClassificationRow::label)
      .def_readonly("marginals", &ClassificationRow::marginals)
      .def_readonly("full", &ClassificationRow::full);

  m.def("classify_three_qubit", &classify_three_qubit, py::arg("label"));

  py::class_<DetectionTransition>(m, "DetectionTransition")
      .def_readonly("t_before", &DetectionTransition::t_before)
      .def_readonly("t_after", &DetectionTransition::t_after)
      .def_readonly("to_detected", &DetectionTransition::to_detected);

  py::class_<EntanglementTimeline>(m, "EntanglementTimeline")
      .def_readonly("times", &EntanglementTimeline::times)
      .def_readonly("verdicts", &EntanglementTimeline::verdicts)
      .def_readonly("transitions", &EntanglementTimeline::transitions);

  m.def(
      "track",
      [](const DiagonalModel& model, const DensityMatrix& rho0,
         const std::vector<double>& times, const std::vector<int>& condition_on,
         const std::vector<double>& q_grid, const std::string& method,
         double max_step) {
        return track(model, rho0, times, condition_on, q_grid,
                     parse_options(method, max_step));
      },
      py::arg("model"), py::arg("rho0"), py::arg("times"),
      py::arg("condition_on"), py::arg("q_grid") = default_q_grid(),
      py::arg("method") = "rk4", py::arg("max_step") = 1e-3);
}
