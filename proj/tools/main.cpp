#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "neuroncode/errors.hpp"
#include "neuroncode/network.hpp"
#include "neuroncode/serialization.hpp"

using namespace neuroncode;

namespace {

constexpr int kExitRobust = 0;
constexpr int kExitNotRobust = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

struct OutputOptions {
  std::string format = "human";
  std::string out;
};

void emit(const OutputOptions& options, const std::string& content,
          const std::string& stdout_summary) {
  if (!options.out.empty()) {
    write_text_file(options.out, content);
    if (!stdout_summary.empty()) std::cout << stdout_summary << "\n";
  } else {
    std::cout << content;
  }
}

std::string subset_string(std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; mask >> i; ++i) {
    if ((mask >> i) & 1) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  }
  return out + "}";
}

// --solution identity|replication:L|parity|gen-parity|fourier|constant:M
Solution build_solution(const Neuron& neuron, const std::string& spec) {
  auto numeric_suffix = [&spec](std::size_t offset) -> unsigned long {
    try {
      return std::stoul(spec.substr(offset));
    } catch (const std::exception&) {
      throw parse_error("malformed solution parameter in '" + spec + "'");
    }
  };
  if (spec == "identity") return identity_solution(neuron);
  if (spec == "parity") {
    return parity_solution(BinaryNeuron::canonicalize(neuron));
  }
  if (spec == "gen-parity") {
    return generalized_parity_solution(canonicalize_integer_bias(neuron));
  }
  if (spec == "fourier") return fourier_solution(neuron);
  if (spec.rfind("replication:", 0) == 0) {
    unsigned long times = numeric_suffix(sizeof("replication:") - 1);
    return replicate(identity_solution(neuron),
                     static_cast<unsigned>(times));
  }
  if (spec.rfind("constant:", 0) == 0) {
    return constant_solution(neuron, numeric_suffix(sizeof("constant:") - 1));
  }
  throw parse_error("unknown solution kind '" + spec + "'");
}

int run_analyze(const std::string& path, const OutputOptions& options) {
  Neuron neuron = load_neuron(path);
  std::size_t n = neuron.dimension();

  std::string canonical = "-";
  if (neuron.has_binary_weights()) {
    canonical = std::to_string(BinaryNeuron::canonicalize(neuron).bias());
  } else if (neuron.has_integer_weights() && !neuron.has_zero_weights()) {
    canonical =
        to_fraction_string(canonicalize_integer_bias(neuron).bias());
  }

  if (neuron.has_zero_weights()) {
    throw degenerate_error("all weights are zero; nothing to analyze");
  }
  Rational margin = delta(neuron);

  std::vector<std::pair<std::uint64_t, Rational>> top;
  if (n <= kSpectrumCap) {
    Spectrum spectrum = walsh_hadamard(
        [&neuron](const SignVector& x) { return Rational(neuron.evaluate(x)); },
        n);
    for (std::uint64_t mask = 0; mask < spectrum.subset_count(); ++mask) {
      if (spectrum.coefficient(mask) != 0) {
        top.emplace_back(mask, spectrum.coefficient(mask));
      }
    }
    std::stable_sort(top.begin(), top.end(),
                     [](const auto& a, const auto& b) {
                       return abs(a.second) > abs(b.second);
                     });
    if (top.size() > 8) top.resize(8);
  } else {
    std::cerr << "note: spectrum skipped, n exceeds the dense cap\n";
  }

  if (options.format == "record") {
    nlohmann::json coefficients = nlohmann::json::array();
    for (const auto& [mask, value] : top) {
      coefficients.push_back({{"subset", subset_string(mask)},
                              {"value", to_fraction_string(value)}});
    }
    nlohmann::json record = {
        {"n", n},
        {"binary", neuron.has_binary_weights()},
        {"integer", neuron.has_integer_weights()},
        {"bias", to_fraction_string(neuron.bias())},
        {"canonical_bias", canonical},
        {"delta", to_fraction_string(margin)},
        {"top_spectrum", std::move(coefficients)}};
    emit(options, record.dump(2) + "\n", "analysis written");
    return kExitRobust;
  }
  if (options.format == "csv") {
    std::ostringstream csv;
    csv << "n,binary,integer,bias,canonical_bias,delta\n"
        << n << ',' << (neuron.has_binary_weights() ? 1 : 0) << ','
        << (neuron.has_integer_weights() ? 1 : 0) << ','
        << to_fraction_string(neuron.bias()) << ',' << canonical << ','
        << to_fraction_string(margin) << "\n";
    emit(options, csv.str(), "analysis written");
    return kExitRobust;
  }

  std::ostringstream out;
  out << "n: " << n << "\n"
      << "binary weights: " << (neuron.has_binary_weights() ? "yes" : "no")
      << "\n"
      << "integer weights: " << (neuron.has_integer_weights() ? "yes" : "no")
      << "\n"
      << "bias: " << to_fraction_string(neuron.bias()) << "\n"
      << "canonical bias: " << canonical << "\n"
      << "delta: " << to_fraction_string(margin) << "\n";
  if (!top.empty()) {
    out << "largest spectrum coefficients:\n";
    for (const auto& [mask, value] : top) {
      out << "  " << subset_string(mask) << ": " << to_fraction_string(value)
          << "\n";
    }
  }
  emit(options, out.str(), "");
  return kExitRobust;
}

int run_verify(const std::string& path, const std::string& solution_spec,
               unsigned r, int t, int s, std::uint64_t budget,
               const OutputOptions& options) {
  Neuron neuron = load_neuron(path);
  Solution solution = build_solution(neuron, solution_spec);

  bool single_pair = t >= 0 || s >= 0;
  unsigned pair_t = t >= 0 ? static_cast<unsigned>(t) : 0;
  unsigned pair_s = s >= 0 ? static_cast<unsigned>(s) : 0;

  bool oracle_robust = true;
  std::optional<Witness> witness;
  if (single_pair) {
    witness = find_ts_violation(solution, neuron, pair_t, pair_s, budget);
    oracle_robust = !witness.has_value();
  } else {
    for (unsigned cost = 0; cost <= r && oracle_robust; ++cost) {
      for (unsigned errors = 0; 2 * errors <= cost; ++errors) {
        unsigned erasures = cost - 2 * errors;
        witness =
            find_ts_violation(solution, neuron, erasures, errors, budget);
        if (witness) {
          oracle_robust = false;
          break;
        }
      }
    }
  }

  bool criterion_robust =
      single_pair ? oracle_robust
                  : distance_criterion_robust(solution, neuron, r);
  bool disagree = !single_pair && criterion_robust != oracle_robust;

  Rational d = min_distance(solution);
  Rational rel = relative_distance(solution);

  std::ostringstream human;
  human << "solution: " << solution.encoder.kind_name()
        << " (m=" << solution.coded_length() << ")\n"
        << "d: " << to_fraction_string(d)
        << ", d/m: " << to_fraction_string(rel) << "\n";
  if (single_pair) {
    human << "target: (" << pair_t << " erasures, " << pair_s
          << " errors)\n";
  } else {
    human << "target: r = " << r << "\n"
          << "distance criterion: "
          << (criterion_robust ? "robust" : "not robust") << "\n";
  }
  human << "exhaustive oracle: " << (oracle_robust ? "robust" : "not robust")
        << "\n";
  if (witness) human << "witness: " << witness->to_string() << "\n";
  if (disagree) {
    human << "WARNING: oracle and distance criterion disagree\n";
    std::cerr << "WARNING: oracle and distance criterion disagree\n";
  }

  if (options.format == "record") {
    nlohmann::json record = {
        {"solution", solution.encoder.kind_name()},
        {"m", solution.coded_length()},
        {"d", to_fraction_string(d)},
        {"relative", to_fraction_string(rel)},
        {"oracle_robust", oracle_robust},
        {"verdicts_disagree", disagree}};
    if (single_pair) {
      record["t"] = pair_t;
      record["s"] = pair_s;
    } else {
      record["r"] = r;
      record["criterion_robust"] = criterion_robust;
    }
    if (witness) {
      record["witness"] = {{"input", witness->input.to_string()},
                           {"erasures", witness->pattern.erasures},
                           {"errors", witness->pattern.errors}};
    }
    emit(options, record.dump(2) + "\n",
         oracle_robust ? "robust" : "not robust");
  } else {
    emit(options, human.str(), oracle_robust ? "robust" : "not robust");
  }
  return oracle_robust ? kExitRobust : kExitNotRobust;
}

int run_distance(const std::string& path, const std::string& solution_spec,
                 bool compare, const OutputOptions& options) {
  Neuron neuron = load_neuron(path);

  std::vector<std::string> specs;
  if (compare) {
    specs = {"identity", "replication:2"};
    if (neuron.has_binary_weights()) specs.push_back("parity");
    if (neuron.has_integer_weights() && !neuron.has_zero_weights() &&
        !neuron.has_binary_weights()) {
      specs.push_back("gen-parity");
    }
    if (neuron.dimension() <= kHadamardCap) specs.push_back("fourier");
    specs.push_back("constant:" + std::to_string(neuron.dimension() + 1));
  } else {
    specs = {solution_spec};
  }

  struct Row {
    std::string kind;
    std::size_t m;
    Rational d;
    Rational relative;
  };
  std::vector<Row> rows;
  for (const std::string& spec : specs) {
    try {
      Solution solution = build_solution(neuron, spec);
      rows.push_back(Row{spec, solution.coded_length(),
                         min_distance(solution),
                         relative_distance(solution)});
    } catch (const degenerate_error&) {
      if (!compare) throw;  // skip inapplicable kinds only in a comparison
    }
  }

  if (options.format == "record") {
    nlohmann::json list = nlohmann::json::array();
    for (const Row& row : rows) {
      list.push_back({{"solution", row.kind},
                      {"m", row.m},
                      {"d", to_fraction_string(row.d)},
                      {"relative", to_fraction_string(row.relative)}});
    }
    emit(options, list.dump(2) + "\n", "distances written");
  } else if (options.format == "csv") {
    std::ostringstream csv;
    csv << "solution,n,m,d,relative\n";
    for (const Row& row : rows) {
      csv << row.kind << ',' << neuron.dimension() << ',' << row.m << ','
          << to_fraction_string(row.d) << ','
          << to_fraction_string(row.relative) << "\n";
    }
    emit(options, csv.str(), "distances written");
  } else {
    std::ostringstream out;
    for (const Row& row : rows) {
      out << row.kind << ": m=" << row.m
          << ", d=" << to_fraction_string(row.d)
          << ", d/m=" << to_fraction_string(row.relative) << "\n";
    }
    emit(options, out.str(), "");
  }
  return kExitRobust;
}

int run_simulate(const std::string& path, const std::string& erasure_prob,
                 const std::string& error_prob, std::uint64_t trials,
                 std::uint64_t seed, bool baseline, bool faulty_gates,
                 std::uint64_t budget, const OutputOptions& options) {
  LayeredNetwork network = load_network(path);
  CodedNetwork coded =
      baseline ? identity_baseline(network) : code_network(network);
  coded.set_fault_prone_gates(faulty_gates);

  FaultCheckReport sweep = exhaustive_single_fault_check(coded, budget);

  std::ostringstream csv;
  csv << trial_csv_header() << "\n";
  {
    TrialStatistics as_stats;
    as_stats.trials = sweep.checked;
    as_stats.agreements = sweep.checked - sweep.failures;
    as_stats.seed = seed;
    csv << trial_csv_row("exhaustive_single_erasure", as_stats) << "\n";
  }

  std::optional<TrialStatistics> mc;
  if (trials > 0) {
    mc = monte_carlo_fault_sim(coded, parse_rational(erasure_prob),
                               parse_rational(error_prob), trials, seed);
    std::string config = "mc_erasure=" + erasure_prob +
                         "_error=" + error_prob;
    csv << trial_csv_row(config, *mc) << "\n";
  }

  std::ostringstream human;
  human << "network: " << network.input_width() << " inputs, "
        << network.layer_count() << " layers, coded as "
        << (baseline ? "identity baseline" : "parity") << "\n"
        << "single-erasure sweep: " << sweep.checked << " checks, "
        << sweep.failures << " failures -> "
        << (sweep.passed ? "PASS" : "FAIL") << "\n";
  if (sweep.first_failure) {
    human << "first failure: input " << sweep.first_failure->first.to_string()
          << " plan " << sweep.first_failure->second.to_string() << "\n";
  }
  if (mc) {
    human << "random faults: " << mc->agreements << "/" << mc->trials
          << " agreements (accuracy "
          << to_fraction_string(mc->accuracy()) << ", seed " << seed
          << ")\n";
    for (std::size_t layer = 0; layer < mc->per_layer_fault_histogram.size();
         ++layer) {
      human << "  layer " << layer << " fault counts:";
      for (const auto& [faults, count] :
           mc->per_layer_fault_histogram[layer]) {
        human << " " << faults << "x" << count;
      }
      human << "\n";
    }
  }
  std::cout << human.str();

  if (!options.out.empty()) {
    write_text_file(options.out, csv.str());
  } else if (options.format == "csv") {
    std::cout << csv.str();
  }
  return sweep.passed ? kExitRobust : kExitNotRobust;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded threshold neurons: construction and verification"};
  app.require_subcommand(1);

  OutputOptions options;
  std::string neuron_path;
  std::string network_path;
  std::string solution_spec = "parity";
  unsigned r = 1;
  int t = -1;
  int s = -1;
  std::uint64_t budget = kDefaultPatternBudget;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string erasure_prob = "0";
  std::string error_prob = "0";
  bool compare = false;
  bool baseline = false;
  bool faulty_gates = false;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", options.format, "human, csv, or record")
        ->check(CLI::IsMember({"human", "csv", "record"}));
    cmd->add_option("--out", options.out, "write the report to this path");
  };

  CLI::App* analyze =
      app.add_subcommand("analyze", "margins and spectrum of a neuron");
  analyze->add_option("neuron", neuron_path, "neuron record (JSON)")
      ->required();
  add_output(analyze);

  CLI::App* verify =
      app.add_subcommand("verify", "prove or refute robustness of a solution");
  verify->add_option("neuron", neuron_path, "neuron record (JSON)")
      ->required();
  verify->add_option("--solution", solution_spec,
                     "identity, replication:L, parity, gen-parity, fourier, "
                     "or constant:M");
  verify->add_option("--r", r, "target robustness radius");
  verify->add_option("--t", t, "check one pattern class: erasure count");
  verify->add_option("--s", s, "check one pattern class: error count");
  verify->add_option("--budget", budget, "pattern enumeration budget");
  add_output(verify);

  CLI::App* distance =
      app.add_subcommand("distance", "minimum and relative distance");
  distance->add_option("neuron", neuron_path, "neuron record (JSON)")
      ->required();
  distance->add_option("--solution", solution_spec,
                       "solution kind (see verify)");
  distance->add_flag("--compare", compare,
                     "tabulate every applicable solution kind");
  add_output(distance);

  CLI::App* simulate =
      app.add_subcommand("simulate", "fault sweeps over a coded network");
  simulate->add_option("network", network_path, "network record (JSON)")
      ->required();
  simulate->add_option("--erasure-prob", erasure_prob,
                       "per-synapse erasure probability (exact rational)");
  simulate->add_option("--error-prob", error_prob,
                       "per-synapse error probability (exact rational)");
  simulate->add_option("--trials", trials, "random trials to run");
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_flag("--baseline", baseline,
                     "wrap neurons with the identity instead of parity");
  simulate->add_flag("--faulty-gates", faulty_gates,
                     "subject parity gates to the fault model");
  simulate->add_option("--budget", budget, "pattern enumeration budget");
  add_output(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (app.got_subcommand(analyze)) return run_analyze(neuron_path, options);
    if (app.got_subcommand(verify)) {
      return run_verify(neuron_path, solution_spec, r, t, s, budget, options);
    }
    if (app.got_subcommand(distance)) {
      return run_distance(neuron_path, solution_spec, compare, options);
    }
    if (app.got_subcommand(simulate)) {
      return run_simulate(network_path, erasure_prob, error_prob, trials,
                          seed, baseline, faulty_gates, budget, options);
    }
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
