#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "neuroncode/errors.hpp"
#include "neuroncode/serialization.hpp"
#include "test_support.hpp"

using namespace neuroncode;
using testsupport::Rng;

TEST_CASE("rational literals parse exactly") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2") == -2);
  CHECK(parse_rational("+7") == 7);
  CHECK(parse_rational("1/3") == make_rational(1, 3));
  CHECK(parse_rational("-4/6") == make_rational(-2, 3));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("-0.5") == make_rational(-1, 2));
  CHECK(parse_rational(".5") == make_rational(1, 2));
  CHECK(parse_rational("5.") == 5);
  CHECK(parse_rational(" 2/4 ") == make_rational(1, 2));

  CHECK_THROWS_AS(parse_rational("1e5"), parse_error);
  CHECK_THROWS_AS(parse_rational("1E-2"), parse_error);
  CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
  CHECK_THROWS_AS(parse_rational(""), parse_error);
  CHECK_THROWS_AS(parse_rational("."), parse_error);
  CHECK_THROWS_AS(parse_rational("two"), parse_error);
  CHECK_THROWS_AS(parse_rational("1 / 2"), parse_error);
}

TEST_CASE("fraction strings round-trip") {
  Rng rng(64);
  for (int sample = 0; sample < 100; ++sample) {
    Rational value =
        make_rational(rng.in_range(-500, 500), rng.in_range(1, 40));
    CHECK(parse_rational(to_fraction_string(value)) == value);
  }
  CHECK(to_fraction_string(Rational(5)) == "5");
  CHECK(to_fraction_string(make_rational(1, 2)) == "1/2");
  CHECK(to_fraction_string(make_rational(-2, 4)) == "-1/2");
}

TEST_CASE("neuron records round-trip") {
  Neuron original({make_rational(1, 3), Rational(-2), make_rational(5, 7)},
                  make_rational(-1, 2));
  Neuron copy = neuron_from_json(neuron_to_json(original));
  CHECK(copy.weights() == original.weights());
  CHECK(copy.bias() == original.bias());

  Neuron decimal = neuron_from_json(
      R"({"weights": ["0.5", "-1", "2/3"], "bias": "0.25"})");
  CHECK(decimal.weights()[0] == make_rational(1, 2));
  CHECK(decimal.weights()[2] == make_rational(2, 3));
  CHECK(decimal.bias() == make_rational(1, 4));

  // integers are accepted directly
  Neuron ints = neuron_from_json(R"({"weights": [1, 1, -1], "bias": 0})");
  CHECK(ints.weights()[2] == -1);
}

TEST_CASE("neuron record errors name the offending field") {
  CHECK_THROWS_WITH_AS(neuron_from_json(R"({"bias": "0"})"),
                       doctest::Contains("weights"), parse_error);
  CHECK_THROWS_WITH_AS(neuron_from_json(R"({"weights": ["1"]})"),
                       doctest::Contains("bias"), parse_error);
  CHECK_THROWS_WITH_AS(
      neuron_from_json(R"({"weights": ["1e3"], "bias": "0"})"),
      doctest::Contains("weights"), parse_error);
  CHECK_THROWS_AS(neuron_from_json("not json"), parse_error);
  CHECK_THROWS_AS(neuron_from_json(R"({"weights": [], "bias": "0"})"),
                  parse_error);
}

TEST_CASE("network records round-trip and canonicalize biases") {
  LayeredNetwork net = network_from_json(R"({
    "input_width": 3,
    "layers": [
      [{"weights": [1, 1, -1], "bias": "0.5"},
       {"weights": [1, 1, 1], "bias": 0},
       {"weights": [-1, 1, 1], "bias": -2}],
      [{"weights": [1, -1, 1], "bias": 0}]
    ]
  })");
  CHECK(net.input_width() == 3);
  CHECK(net.layer_count() == 2);
  CHECK(net.layers()[0][0].bias() == 0);  // 0.5 rounded onto the grid

  LayeredNetwork copy = network_from_json(network_to_json(net));
  for (const SignVector& x : enumerate_hypercube(3)) {
    CHECK(copy.forward(x) == net.forward(x));
  }

  CHECK_THROWS_AS(network_from_json(R"({"layers": []})"), parse_error);
  CHECK_THROWS_AS(network_from_json(R"({
    "input_width": 2,
    "layers": [[{"weights": [2, 1], "bias": 0}]]
  })"),
                  domain_error);  // non-binary weights
}

TEST_CASE("solution records round-trip for every encoder kind") {
  Rng rng(4242);
  Neuron maj = testsupport::majority3();
  BinaryNeuron binary = BinaryNeuron::canonicalize(maj);

  std::vector<Solution> solutions;
  solutions.push_back(identity_solution(maj));
  solutions.push_back(constant_solution(maj, 4));
  solutions.push_back(replicate(parity_solution(binary), 3));
  solutions.push_back(parity_solution(binary));
  solutions.push_back(
      generalized_parity_solution(canonicalize_integer_bias(Neuron({2, -1}, 0))));
  solutions.push_back(fourier_solution(maj));

  for (const Solution& solution : solutions) {
    Solution copy = solution_from_json(solution_to_json(solution));
    CHECK(copy.coded_weights == solution.coded_weights);
    CHECK(copy.coded_bias == solution.coded_bias);
    CHECK(copy.coded_length() == solution.coded_length());
    std::size_t n = solution.input_dimension();
    for (const SignVector& x : enumerate_hypercube(n)) {
      CHECK(copy.encoder.encode(x) == solution.encoder.encode(x));
      CHECK(copy.coded_evaluate(x) == solution.coded_evaluate(x));
    }
  }

  CHECK_THROWS_WITH_AS(solution_from_json(R"({"kind": "mystery",
    "parameters": {}, "v": ["1"], "mu": "0"})"),
                       doctest::Contains("kind"), parse_error);
}

TEST_CASE("robustness reports serialize with exact fractions") {
  Neuron maj = testsupport::majority3();
  RobustnessReport report = analyze_robustness(identity_solution(maj), maj);
  std::string csv = report_csv_row(report);
  CHECK(csv.rfind("3,1,1/3,0,", 0) == 0);
  CHECK(report_csv_header() == "m,d,relative,radius,witnesses,wall_seconds");

  std::string json = report_to_json(report);
  CHECK(json.find("\"d\": \"1\"") != std::string::npos);
  CHECK(json.find("\"relative\": \"1/3\"") != std::string::npos);
}

TEST_CASE("trial statistics serialize deterministically") {
  TrialStatistics stats;
  stats.trials = 100;
  stats.agreements = 99;
  stats.seed = 7;
  CHECK(trial_csv_row("mc", stats) == "mc,100,99,99/100,7");
  CHECK(trial_csv_header() == "trial_config,trials,agreements,accuracy,seed");
}

TEST_CASE("files round-trip through the filesystem helpers") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "neuroncode_io_test";
  fs::create_directories(dir);
  fs::path path = dir / "neuron.json";

  Neuron neuron({1, 1, -1}, 0);
  save_neuron(neuron, path.string());
  Neuron loaded = load_neuron(path.string());
  CHECK(loaded.weights() == neuron.weights());

  CHECK_THROWS_AS(load_neuron((dir / "missing.json").string()), parse_error);
  fs::remove_all(dir);
}
