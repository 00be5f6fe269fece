#include "neuroncode/network.hpp"

#include <sstream>

#include "neuroncode/errors.hpp"

namespace neuroncode {
namespace {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static std::uint64_t scramble(std::uint64_t x) {
    SplitMix64 g{x};
    return g.next();
  }
};

// decides u/2^64 < p exactly
struct ProbabilityThreshold {
  Integer numerator_shifted;  // p.num << 64
  Integer denominator;

  explicit ProbabilityThreshold(const Rational& p)
      : numerator_shifted(p.get_num() << 64), denominator(p.get_den()) {}

  bool below(std::uint64_t draw) const {
    Integer lhs = Integer(static_cast<unsigned long>(draw)) * denominator;
    return lhs < numerator_shifted;
  }
};

}  // namespace

LayeredNetwork::LayeredNetwork(std::size_t input_width,
                               std::vector<std::vector<BinaryNeuron>> layers)
    : input_width_(input_width), layers_(std::move(layers)) {
  if (input_width_ == 0) {
    throw dimension_error("network input width must be positive");
  }
  if (layers_.empty()) throw dimension_error("network needs at least one layer");
  std::size_t expected = input_width_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].empty()) {
      throw dimension_error("layer " + std::to_string(i) + " is empty");
    }
    for (const BinaryNeuron& neuron : layers_[i]) {
      if (neuron.dimension() != expected) {
        throw dimension_error("layer " + std::to_string(i) +
                              " neuron width does not match previous layer");
      }
    }
    expected = layers_[i].size();
  }
}

SignVector LayeredNetwork::forward(const SignVector& x) const {
  if (x.size() != input_width_) {
    throw dimension_error("input length does not match network input width");
  }
  SignVector stage = x;
  for (const std::vector<BinaryNeuron>& layer : layers_) {
    SignVector next(layer.size());
    for (std::size_t i = 0; i < layer.size(); ++i) {
      next.set(i, layer[i].evaluate(stage));
    }
    stage = std::move(next);
  }
  return stage;
}

CodedNetwork::CodedNetwork(LayeredNetwork original, CodingMode mode)
    : original_(std::move(original)), mode_(mode) {
  coded_layers_.reserve(original_.layer_count());
  for (const std::vector<BinaryNeuron>& layer : original_.layers()) {
    std::vector<Solution> coded;
    coded.reserve(layer.size());
    for (const BinaryNeuron& neuron : layer) {
      if (mode_ == CodingMode::kParity) {
        coded.push_back(parity_solution(neuron));
      } else {
        coded.push_back(identity_solution(neuron.as_neuron()));
      }
    }
    coded_layers_.push_back(std::move(coded));
  }
  weight_rows_.reserve(coded_layers_.size());
  bias_rows_.reserve(coded_layers_.size());
  for (const std::vector<Solution>& layer : coded_layers_) {
    std::vector<std::vector<long long>> rows;
    std::vector<long long> biases;
    for (const Solution& solution : layer) {
      std::vector<long long> row;
      row.reserve(solution.coded_weights.size());
      for (const Rational& v : solution.coded_weights) row.push_back(to_long(v));
      rows.push_back(std::move(row));
      biases.push_back(to_long(solution.coded_bias));
    }
    weight_rows_.push_back(std::move(rows));
    bias_rows_.push_back(std::move(biases));
  }
}

CodedNetwork CodedNetwork::parity_coded(const LayeredNetwork& network) {
  return CodedNetwork(network, CodingMode::kParity);
}

CodedNetwork CodedNetwork::identity_baseline(const LayeredNetwork& network) {
  return CodedNetwork(network, CodingMode::kIdentityBaseline);
}

std::size_t CodedNetwork::coded_input_width() const {
  return original_.input_width() + (mode_ == CodingMode::kParity ? 1 : 0);
}

bool CodedNetwork::has_gate(std::size_t layer) const {
  return mode_ == CodingMode::kParity && layer + 1 < original_.layer_count();
}

std::size_t CodedNetwork::incoming_width(std::size_t layer,
                                         std::size_t node) const {
  if (layer >= original_.layer_count()) {
    throw dimension_error("layer index out of range");
  }
  std::size_t width = original_.layer_width(layer);
  if (node == width) {
    if (!has_gate(layer)) throw dimension_error("layer has no parity gate");
    return width;  // the gate reads this layer's neuron outputs
  }
  if (node > width) throw dimension_error("node index out of range");
  std::size_t previous =
      layer == 0 ? original_.input_width() : original_.layer_width(layer - 1);
  return previous + (mode_ == CodingMode::kParity ? 1 : 0);
}

void CodedNetwork::validate_plan(const FaultPlan& plan) const {
  for (const auto& [key, pattern] : plan.patterns) {
    auto [layer, node] = key;
    if (layer >= original_.layer_count()) {
      throw domain_error("fault plan addresses a layer that does not exist");
    }
    std::size_t width = original_.layer_width(layer);
    if (node == width) {
      if (!has_gate(layer) || !fault_prone_gates_) {
        throw domain_error("fault plan addresses an ideal parity gate");
      }
    } else if (node > width) {
      throw domain_error("fault plan addresses a node that does not exist");
    }
    pattern.validate(incoming_width(layer, node));
    if (pattern.cost() > plan.per_node_budget) {
      throw domain_error("fault pattern exceeds the per-node budget");
    }
  }
}

std::vector<std::vector<int>> CodedNetwork::run(const SignVector& x,
                                                const FaultPlan& plan) const {
  if (x.size() != original_.input_width()) {
    throw dimension_error("input length does not match network input width");
  }
  std::vector<std::vector<int>> trace;
  std::vector<int> stage;
  stage.reserve(coded_input_width());
  for (std::size_t i = 0; i < x.size(); ++i) stage.push_back(x[i]);
  if (mode_ == CodingMode::kParity) stage.push_back(parity(x));
  trace.push_back(stage);

  for (std::size_t layer = 0; layer < coded_layers_.size(); ++layer) {
    std::size_t width = original_.layer_width(layer);
    std::vector<int> outputs;
    outputs.reserve(width + 1);
    for (std::size_t node = 0; node < width; ++node) {
      const std::vector<long long>& weights = weight_rows_[layer][node];
      long long sum = -bias_rows_[layer][node];
      auto it = plan.patterns.find({layer, node});
      if (it == plan.patterns.end()) {
        for (std::size_t j = 0; j < weights.size(); ++j) {
          sum += weights[j] * stage[j];
        }
      } else {
        NoisySignVector reading(stage);
        for (std::size_t j : it->second.errors) reading.negate_at(j);
        for (std::size_t j : it->second.erasures) reading.erase_at(j);
        for (std::size_t j = 0; j < weights.size(); ++j) {
          sum += weights[j] * reading[j];
        }
      }
      outputs.push_back(sum >= 0 ? +1 : -1);
    }
    if (has_gate(layer)) {
      // the gate reads this layer's actual (possibly faulty) outputs
      int product = 1;
      auto it = plan.patterns.find({layer, width});
      if (it == plan.patterns.end()) {
        for (int value : outputs) product *= value;
      } else {
        NoisySignVector reading{std::vector<int>(outputs.begin(),
                                                 outputs.end())};
        for (std::size_t j : it->second.errors) reading.negate_at(j);
        for (std::size_t j : it->second.erasures) reading.erase_at(j);
        for (std::size_t j = 0; j < outputs.size(); ++j) {
          product *= reading[j];
        }
      }
      outputs.push_back(product);
    }
    stage = outputs;
    trace.push_back(stage);
  }
  return trace;
}

SignVector CodedNetwork::forward(const SignVector& x) const {
  return inject_and_forward(x, FaultPlan{});
}

SignVector CodedNetwork::inject_and_forward(const SignVector& x,
                                            const FaultPlan& plan) const {
  validate_plan(plan);
  std::vector<std::vector<int>> trace = run(x, plan);
  const std::vector<int>& last = trace.back();
  std::size_t width = original_.output_width();
  SignVector out(width);
  for (std::size_t i = 0; i < width; ++i) out.set(i, last[i]);
  return out;
}

std::vector<std::vector<int>> CodedNetwork::forward_trace(
    const SignVector& x, const FaultPlan& plan) const {
  validate_plan(plan);
  return run(x, plan);
}

std::vector<std::vector<int>> CodedNetwork::forward_trace_unchecked(
    const SignVector& x, const FaultPlan& plan) const {
  return run(x, plan);
}

std::string FaultPlan::to_string() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [key, pattern] : patterns) {
    if (!first) out << "; ";
    first = false;
    out << "layer " << key.first << " node " << key.second << ": "
        << pattern.to_string();
  }
  out << "}";
  return out.str();
}

Rational TrialStatistics::accuracy() const {
  if (trials == 0) return Rational(1);
  return Rational(static_cast<unsigned long>(agreements)) /
         Rational(static_cast<unsigned long>(trials));
}

CodedNetwork code_network(const LayeredNetwork& network) {
  return CodedNetwork::parity_coded(network);
}

CodedNetwork identity_baseline(const LayeredNetwork& network) {
  return CodedNetwork::identity_baseline(network);
}

FaultCheckReport exhaustive_single_fault_check(const CodedNetwork& network,
                                               std::uint64_t budget) {
  const LayeredNetwork& original = network.original();
  std::size_t n = original.input_width();
  if (n > 63) throw resource_error("input width too large to enumerate");

  // one odometer digit per neuron: 0 = clean, k = erase synapse k-1
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  std::vector<std::size_t> radix;
  unsigned __int128 plan_count = 1;
  for (std::size_t layer = 0; layer < original.layer_count(); ++layer) {
    for (std::size_t node = 0; node < original.layer_width(layer); ++node) {
      nodes.emplace_back(layer, node);
      radix.push_back(network.incoming_width(layer, node) + 1);
      plan_count *= radix.back();
      if (plan_count > budget) {
        throw resource_error("single-fault plan enumeration exceeds budget");
      }
    }
  }
  unsigned __int128 total = plan_count << n;
  if (total > budget) {
    throw resource_error("single-fault enumeration exceeds budget");
  }

  FaultCheckReport report;
  report.inputs = 1ull << n;
  report.plans = static_cast<std::uint64_t>(plan_count);

  for (std::uint64_t index = 0; index < report.inputs; ++index) {
    SignVector x = point_from_index(n, index);
    SignVector clean = original.forward(x);
    std::vector<std::size_t> digits(nodes.size(), 0);
    while (true) {
      FaultPlan plan;
      plan.per_node_budget = 1;
      for (std::size_t d = 0; d < digits.size(); ++d) {
        if (digits[d] != 0) {
          plan.patterns[nodes[d]] =
              NoisePattern{{digits[d] - 1}, {}};
        }
      }
      SignVector noisy = network.inject_and_forward(x, plan);
      ++report.checked;
      if (noisy != clean) {
        ++report.failures;
        if (!report.first_failure) {
          report.first_failure = {x, plan};
        }
      }
      // advance the odometer, last digit fastest
      std::size_t d = digits.size();
      while (d > 0) {
        --d;
        if (++digits[d] < radix[d]) break;
        digits[d] = 0;
        if (d == 0) goto next_input;
      }
      if (digits.empty()) break;
    }
  next_input:;
  }
  report.passed = report.failures == 0;
  return report;
}

TrialStatistics monte_carlo_fault_sim(const CodedNetwork& network,
                                      const Rational& erasure_prob,
                                      const Rational& error_prob,
                                      std::uint64_t trials,
                                      std::uint64_t seed) {
  if (erasure_prob < 0 || erasure_prob > 1 || error_prob < 0 ||
      error_prob > 1 || erasure_prob + error_prob > 1) {
    throw domain_error(
        "fault probabilities must lie in [0,1] and sum to at most 1");
  }
  const LayeredNetwork& original = network.original();
  std::size_t n = original.input_width();

  ProbabilityThreshold erase_below(erasure_prob);
  ProbabilityThreshold error_below(erasure_prob + error_prob);
  bool no_faults = erasure_prob == 0 && error_prob == 0;

  TrialStatistics stats;
  stats.trials = trials;
  stats.seed = seed;
  stats.per_layer_fault_histogram.resize(original.layer_count());

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng{SplitMix64::scramble(seed) ^
                   SplitMix64::scramble(trial + 0x51ed270b9d1cf6ffull)};
    SignVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, (rng.next() >> 63) ? -1 : +1);
    }

    FaultPlan plan;
    plan.per_node_budget = 0;  // unused on this path
    std::vector<unsigned> layer_faults(original.layer_count(), 0);
    for (std::size_t layer = 0; layer < original.layer_count(); ++layer) {
      std::size_t width = original.layer_width(layer);
      std::size_t node_count =
          width + ((network.fault_prone_gates() && network.has_gate(layer))
                       ? 1
                       : 0);
      for (std::size_t node = 0; node < node_count; ++node) {
        std::size_t incoming = network.incoming_width(layer, node);
        NoisePattern pattern;
        for (std::size_t j = 0; j < incoming; ++j) {
          std::uint64_t draw = rng.next();
          if (no_faults) continue;
          if (erase_below.below(draw)) {
            pattern.erasures.push_back(j);
          } else if (error_below.below(draw)) {
            pattern.errors.push_back(j);
          }
        }
        if (!pattern.empty()) {
          layer_faults[layer] +=
              static_cast<unsigned>(pattern.erasures.size() +
                                    pattern.errors.size());
          plan.patterns[{layer, node}] = std::move(pattern);
        }
      }
    }
    for (std::size_t layer = 0; layer < layer_faults.size(); ++layer) {
      ++stats.per_layer_fault_histogram[layer][layer_faults[layer]];
    }

    SignVector clean = original.forward(x);
    std::vector<std::vector<int>> trace =
        network.forward_trace_unchecked(x, plan);
    const std::vector<int>& last = trace.back();
    bool agree = true;
    for (std::size_t i = 0; i < clean.size(); ++i) {
      if (last[i] != clean[i]) {
        agree = false;
        break;
      }
    }
    if (agree) ++stats.agreements;
  }
  return stats;
}

}  // namespace neuroncode
