#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neuroncode/errors.hpp"
#include "neuroncode/network.hpp"
#include "neuroncode/serialization.hpp"

namespace py = pybind11;
using namespace neuroncode;

namespace pybind11 {
namespace detail {

// Rational <-> fractions.Fraction (ints and exact strings also accepted)
template <>
struct type_caster<mpq_class> {
  PYBIND11_TYPE_CASTER(mpq_class, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    try {
      if (py::isinstance<py::int_>(src)) {
        value = parse_rational(py::cast<std::string>(py::str(src)));
        return true;
      }
      if (py::isinstance<py::str>(src)) {
        value = parse_rational(py::cast<std::string>(src));
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
        std::string numerator =
            py::cast<std::string>(py::str(src.attr("numerator")));
        std::string denominator =
            py::cast<std::string>(py::str(src.attr("denominator")));
        value = parse_rational(numerator + "/" + denominator);
        return true;
      }
    } catch (const neuroncode::error&) {
      return false;
    }
    return false;
  }

  static handle cast(const mpq_class& src, return_value_policy, handle) {
    object fraction = module_::import("fractions").attr("Fraction");
    return fraction(to_fraction_string(src)).release();
  }
};

}  // namespace detail
}  // namespace pybind11

namespace {

SignVector sign_vector_from_list(const std::vector<int>& entries) {
  return SignVector::from_entries(
      std::span<const int>(entries.data(), entries.size()));
}

std::vector<SignVector> hypercube_list(std::size_t n) {
  std::vector<SignVector> points;
  points.reserve(hypercube_size(n, 20));
  for (const SignVector& x : enumerate_hypercube(n, 20)) points.push_back(x);
  return points;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "coded threshold neurons: exact constructions and verification";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const resource_error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    } catch (const neuroncode::error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<SignVector>(m, "SignVector")
      .def(py::init(&sign_vector_from_list), py::arg("entries"))
      .def("__len__", &SignVector::size)
      .def("__getitem__",
           [](const SignVector& x, std::size_t i) { return x[i]; })
      .def("__repr__", &SignVector::to_string)
      .def("to_list", &SignVector::to_entries)
      .def("hamming_weight", &SignVector::hamming_weight)
      .def(py::self == py::self)
      .def(py::self < py::self);

  m.def("xor_product", &xor_product, py::arg("a"), py::arg("b"));
  m.def("hamming_weight",
        [](const SignVector& x) { return hamming_weight(x); });
  m.def("chi", &chi, py::arg("subset_mask"), py::arg("x"));
  m.def("parity", &parity, py::arg("x"));
  m.def("inner_product", &inner_product, py::arg("x"), py::arg("w"));
  m.def("enumerate_hypercube", &hypercube_list, py::arg("n"));
  m.def("point_from_index", &point_from_index, py::arg("n"), py::arg("index"));
  m.def("index_of_point", &index_of_point, py::arg("x"));

  py::class_<Spectrum>(m, "Spectrum")
      .def_property_readonly("dimension", &Spectrum::dimension)
      .def("coefficient", &Spectrum::coefficient, py::arg("subset_mask"))
      .def("coefficients", &Spectrum::coefficients)
      .def("reconstruct", &Spectrum::reconstruct, py::arg("x"))
      .def("sum_of_squares", &Spectrum::sum_of_squares)
      .def("max_abs_excluding_empty", &Spectrum::max_abs_excluding_empty);

  m.def(
      "walsh_hadamard",
      [](const std::vector<Rational>& table, std::size_t n) {
        return walsh_hadamard(table, n);
      },
      py::arg("truth_table"), py::arg("n"),
      "table indexed by bit pattern: bit i set means coordinate i is -1");
  m.def(
      "spectrum_of",
      [](const Neuron& neuron) {
        return walsh_hadamard(
            [&neuron](const SignVector& x) {
              return Rational(neuron.evaluate(x));
            },
            neuron.dimension());
      },
      py::arg("neuron"));

  py::class_<Neuron>(m, "Neuron")
      .def(py::init<std::vector<Rational>, Rational>(), py::arg("weights"),
           py::arg("bias"))
      .def_property_readonly("dimension", &Neuron::dimension)
      .def_property_readonly("weights", &Neuron::weights)
      .def_property_readonly("bias", &Neuron::bias)
      .def("evaluate", &Neuron::evaluate, py::arg("x"))
      .def("preactivation", &Neuron::preactivation, py::arg("x"))
      .def("has_binary_weights", &Neuron::has_binary_weights)
      .def("has_integer_weights", &Neuron::has_integer_weights)
      .def("__repr__", [](const Neuron& n) { return neuron_to_json(n); });

  py::class_<BinaryNeuron>(m, "BinaryNeuron")
      .def(py::init<SignVector, long long>(), py::arg("weights"),
           py::arg("bias"))
      .def_static("canonicalize", &BinaryNeuron::canonicalize,
                  py::arg("neuron"))
      .def_property_readonly("dimension", &BinaryNeuron::dimension)
      .def_property_readonly("weights", &BinaryNeuron::weights)
      .def_property_readonly("bias", &BinaryNeuron::bias)
      .def("evaluate", &BinaryNeuron::evaluate, py::arg("x"))
      .def("is_constant", &BinaryNeuron::is_constant)
      .def("as_neuron", &BinaryNeuron::as_neuron)
      .def("hamming_thresholds", &BinaryNeuron::hamming_thresholds);

  m.def("canonical_bias", &canonical_bias, py::arg("bias"), py::arg("span"));
  m.def("canonicalize_integer_bias", &canonicalize_integer_bias,
        py::arg("neuron"));
  m.def("delta", &delta, py::arg("neuron"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("classify_points", &classify_points, py::arg("neuron"),
        py::arg("cap") = kDefaultEnumerationCap);

  py::class_<Encoder>(m, "Encoder")
      .def_static("identity", &Encoder::identity, py::arg("n"))
      .def_static("constant", &Encoder::constant, py::arg("target"),
                  py::arg("m"), py::arg("cap") = kDefaultEnumerationCap)
      .def_static("replication", &Encoder::replication, py::arg("inner"),
                  py::arg("times"))
      .def_static("parity", &Encoder::parity, py::arg("n"))
      .def_static("generalized_parity", &Encoder::generalized_parity,
                  py::arg("weights"))
      .def_static("punctured_hadamard", &Encoder::punctured_hadamard,
                  py::arg("n"), py::arg("cap") = kHadamardCap)
      .def_property_readonly("input_dimension", &Encoder::input_dimension)
      .def_property_readonly("output_dimension", &Encoder::output_dimension)
      .def_property_readonly("kind", &Encoder::kind_name)
      .def("encode", &Encoder::encode, py::arg("x"));

  py::class_<Solution>(m, "Solution")
      .def_readonly("encoder", &Solution::encoder)
      .def_readonly("coded_weights", &Solution::coded_weights)
      .def_readonly("coded_bias", &Solution::coded_bias)
      .def_property_readonly("coded_length", &Solution::coded_length)
      .def("coded_evaluate", &Solution::coded_evaluate, py::arg("x"))
      .def("coded_preactivation", &Solution::coded_preactivation,
           py::arg("x"))
      .def("__repr__",
           [](const Solution& s) { return solution_to_json(s); });

  m.def("make_solution", &make_solution, py::arg("encoder"),
        py::arg("coded_weights"), py::arg("coded_bias"));
  m.def("identity_solution", &identity_solution, py::arg("neuron"));
  m.def("constant_solution", &constant_solution, py::arg("neuron"),
        py::arg("m"), py::arg("cap") = kDefaultEnumerationCap);
  m.def("replicate", &replicate, py::arg("solution"), py::arg("times"));
  m.def("parity_solution", &parity_solution, py::arg("neuron"));
  m.def("generalized_parity_solution", &generalized_parity_solution,
        py::arg("neuron"));
  m.def("fourier_solution", &fourier_solution, py::arg("neuron"),
        py::arg("cap") = kHadamardCap);

  py::class_<NoisePattern>(m, "NoisePattern")
      .def(py::init([](std::vector<std::size_t> erasures,
                       std::vector<std::size_t> errors) {
             return NoisePattern{std::move(erasures), std::move(errors)};
           }),
           py::arg("erasures") = std::vector<std::size_t>{},
           py::arg("errors") = std::vector<std::size_t>{})
      .def_readonly("erasures", &NoisePattern::erasures)
      .def_readonly("errors", &NoisePattern::errors)
      .def("cost", &NoisePattern::cost)
      .def("__repr__", &NoisePattern::to_string);

  py::class_<Witness>(m, "Witness")
      .def_readonly("input", &Witness::input)
      .def_readonly("pattern", &Witness::pattern)
      .def("__repr__", &Witness::to_string);

  m.def("noisy_preactivation", &noisy_preactivation, py::arg("solution"),
        py::arg("x"), py::arg("pattern"));
  m.def("noisy_evaluate", &noisy_evaluate, py::arg("solution"), py::arg("x"),
        py::arg("pattern"));
  m.def("find_ts_violation", &find_ts_violation, py::arg("solution"),
        py::arg("neuron"), py::arg("t"), py::arg("s"),
        py::arg("budget") = kDefaultPatternBudget);
  m.def("is_ts_robust", &is_ts_robust, py::arg("solution"), py::arg("neuron"),
        py::arg("t"), py::arg("s"), py::arg("budget") = kDefaultPatternBudget);
  m.def("robustness_radius", &robustness_radius, py::arg("solution"),
        py::arg("neuron"), py::arg("budget") = kDefaultPatternBudget);

  m.def(
      "l1_distance_to_hyperplane",
      [](const std::vector<Rational>& z, const std::vector<Rational>& v,
         const Rational& mu) { return l1_distance_to_hyperplane(z, v, mu); },
      py::arg("z"), py::arg("v"), py::arg("mu"));
  m.def(
      "l1_distance_to_clipped",
      [](const std::vector<Rational>& z, const std::vector<Rational>& v,
         const Rational& mu) { return l1_distance_to_clipped(z, v, mu); },
      py::arg("z"), py::arg("v"), py::arg("mu"),
      "None means the clipped hyperplane is unreachable (infinite)");

  m.def("min_distance", &min_distance, py::arg("solution"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("relative_distance", &relative_distance, py::arg("solution"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def(
      "joint_min_distance",
      [](const Encoder& encoder,
         const std::vector<std::pair<std::vector<Rational>, Rational>>& pairs,
         std::size_t cap) { return joint_min_distance(encoder, pairs, cap); },
      py::arg("encoder"), py::arg("pairs"),
      py::arg("cap") = kDefaultEnumerationCap);
  m.def("distance_criterion_robust", &distance_criterion_robust,
        py::arg("solution"), py::arg("neuron"), py::arg("r"),
        py::arg("cap") = kDefaultEnumerationCap);

  py::class_<RobustnessReport>(m, "RobustnessReport")
      .def_readonly("coded_length", &RobustnessReport::coded_length)
      .def_readonly("min_dist", &RobustnessReport::min_dist)
      .def_readonly("relative", &RobustnessReport::relative)
      .def_readonly("radius", &RobustnessReport::radius)
      .def_readonly("radius_capped", &RobustnessReport::radius_capped)
      .def_readonly("witnesses", &RobustnessReport::witnesses)
      .def_readonly("checked_patterns", &RobustnessReport::checked_patterns)
      .def_readonly("wall_seconds", &RobustnessReport::wall_seconds)
      .def("__repr__",
           [](const RobustnessReport& r) { return report_to_json(r); });

  m.def("analyze_robustness", &analyze_robustness, py::arg("solution"),
        py::arg("neuron"), py::arg("budget") = kDefaultPatternBudget,
        py::arg("cap") = kDefaultEnumerationCap);

  py::class_<LayeredNetwork>(m, "LayeredNetwork")
      .def(py::init<std::size_t, std::vector<std::vector<BinaryNeuron>>>(),
           py::arg("input_width"), py::arg("layers"))
      .def_property_readonly("input_width", &LayeredNetwork::input_width)
      .def_property_readonly("output_width", &LayeredNetwork::output_width)
      .def_property_readonly("layer_count", &LayeredNetwork::layer_count)
      .def("forward", &LayeredNetwork::forward, py::arg("x"));

  py::class_<FaultPlan>(m, "FaultPlan")
      .def(py::init<>())
      .def_readwrite("patterns", &FaultPlan::patterns)
      .def_readwrite("per_node_budget", &FaultPlan::per_node_budget)
      .def("__repr__", &FaultPlan::to_string);

  py::class_<FaultCheckReport>(m, "FaultCheckReport")
      .def_readonly("inputs", &FaultCheckReport::inputs)
      .def_readonly("plans", &FaultCheckReport::plans)
      .def_readonly("checked", &FaultCheckReport::checked)
      .def_readonly("failures", &FaultCheckReport::failures)
      .def_readonly("passed", &FaultCheckReport::passed)
      .def_readonly("first_failure", &FaultCheckReport::first_failure);

  py::class_<TrialStatistics>(m, "TrialStatistics")
      .def_readonly("trials", &TrialStatistics::trials)
      .def_readonly("agreements", &TrialStatistics::agreements)
      .def_readonly("seed", &TrialStatistics::seed)
      .def_readonly("per_layer_fault_histogram",
                    &TrialStatistics::per_layer_fault_histogram)
      .def("accuracy", &TrialStatistics::accuracy);

  py::class_<CodedNetwork>(m, "CodedNetwork")
      .def_property_readonly("coded_input_width",
                             &CodedNetwork::coded_input_width)
      .def_property_readonly(
          "fault_prone_gates",
          [](const CodedNetwork& n) { return n.fault_prone_gates(); })
      .def("set_fault_prone_gates", &CodedNetwork::set_fault_prone_gates,
           py::arg("enabled"))
      .def("forward", &CodedNetwork::forward, py::arg("x"))
      .def("inject_and_forward", &CodedNetwork::inject_and_forward,
           py::arg("x"), py::arg("plan"))
      .def("forward_trace", &CodedNetwork::forward_trace, py::arg("x"),
           py::arg("plan") = FaultPlan{})
      .def_property_readonly("coded_layers", &CodedNetwork::coded_layers);

  m.def("code_network", &code_network, py::arg("network"));
  m.def("identity_baseline", &identity_baseline, py::arg("network"));
  m.def("exhaustive_single_fault_check", &exhaustive_single_fault_check,
        py::arg("network"), py::arg("budget") = kDefaultPatternBudget);
  m.def("monte_carlo_fault_sim", &monte_carlo_fault_sim, py::arg("network"),
        py::arg("erasure_prob"), py::arg("error_prob"), py::arg("trials"),
        py::arg("seed"));

  m.def("neuron_to_json", &neuron_to_json, py::arg("neuron"));
  m.def("neuron_from_json", &neuron_from_json, py::arg("text"));
  m.def("network_to_json", &network_to_json, py::arg("network"));
  m.def("network_from_json", &network_from_json, py::arg("text"));
  m.def("solution_to_json", &solution_to_json, py::arg("solution"));
  m.def("solution_from_json", &solution_from_json, py::arg("text"));

  m.attr("DEFAULT_ENUMERATION_CAP") = kDefaultEnumerationCap;
  m.attr("DEFAULT_PATTERN_BUDGET") = kDefaultPatternBudget;
  m.attr("SPECTRUM_CAP") = kSpectrumCap;
  m.attr("HADAMARD_CAP") = kHadamardCap;
  m.attr("__version__") = "0.1.0";
}
