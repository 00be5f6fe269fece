#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "neuroncode/robustness.hpp"
#include "neuroncode/solutions.hpp"

namespace neuroncode {

// Feed-forward network of binary-weight neurons with canonical biases;
// layer i reads the outputs of layer i-1.
class LayeredNetwork {
 public:
  LayeredNetwork(std::size_t input_width,
                 std::vector<std::vector<BinaryNeuron>> layers);

  std::size_t input_width() const { return input_width_; }
  std::size_t output_width() const { return layers_.back().size(); }
  std::size_t layer_count() const { return layers_.size(); }
  std::size_t layer_width(std::size_t layer) const {
    return layers_.at(layer).size();
  }
  const std::vector<std::vector<BinaryNeuron>>& layers() const {
    return layers_;
  }

  SignVector forward(const SignVector& x) const;

 private:
  std::size_t input_width_;
  std::vector<std::vector<BinaryNeuron>> layers_;
};

enum class CodingMode { kParity, kIdentityBaseline };

// Per-node noise assignment. Key is (layer, node); node < layer width
// addresses that neuron's incoming coded synapses, node == layer width
// addresses the layer's parity gate (fault-prone gates only). Every
// pattern must respect the per-node cost budget t + 2s.
struct FaultPlan {
  std::map<std::pair<std::size_t, std::size_t>, NoisePattern> patterns;
  unsigned per_node_budget = 1;

  bool empty() const { return patterns.empty(); }
  std::string to_string() const;
};

struct FaultCheckReport {
  std::uint64_t inputs = 0;
  std::uint64_t plans = 0;
  std::uint64_t checked = 0;   // (input, plan) pairs evaluated
  std::uint64_t failures = 0;  // pairs whose output differed
  bool passed = false;
  std::optional<std::pair<SignVector, FaultPlan>> first_failure;
};

struct TrialStatistics {
  std::uint64_t trials = 0;
  std::uint64_t agreements = 0;
  std::uint64_t seed = 0;
  // per layer: number of faulted synapses in a trial -> how many trials
  std::vector<std::map<unsigned, std::uint64_t>> per_layer_fault_histogram;
  Rational accuracy() const;
};

// A network with every neuron replaced by its coded solution. Parity mode
// appends a parity bit to the input and a parity gate to every layer but
// the last; the identity baseline keeps the wiring untouched (for
// comparison only). Gates are ideal unless fault-prone gates are enabled.
class CodedNetwork {
 public:
  static CodedNetwork parity_coded(const LayeredNetwork& network);
  static CodedNetwork identity_baseline(const LayeredNetwork& network);

  const LayeredNetwork& original() const { return original_; }
  CodingMode mode() const { return mode_; }
  const std::vector<std::vector<Solution>>& coded_layers() const {
    return coded_layers_;
  }

  bool fault_prone_gates() const { return fault_prone_gates_; }
  void set_fault_prone_gates(bool enabled) { fault_prone_gates_ = enabled; }

  std::size_t coded_input_width() const;
  // width of the synapse bundle into (layer, node); node == width(layer)
  // is the layer's gate
  std::size_t incoming_width(std::size_t layer, std::size_t node) const;
  bool has_gate(std::size_t layer) const;

  SignVector forward(const SignVector& x) const;
  SignVector inject_and_forward(const SignVector& x,
                                const FaultPlan& plan) const;
  // stage values for inspection: encoded input, then each layer's outputs
  // with its gate value appended; entries in {-1, 0, +1}
  std::vector<std::vector<int>> forward_trace(const SignVector& x,
                                              const FaultPlan& plan) const;
  // same, but without the per-node budget check; for random fault draws,
  // which have no cost cap
  std::vector<std::vector<int>> forward_trace_unchecked(
      const SignVector& x, const FaultPlan& plan) const;

 private:
  CodedNetwork(LayeredNetwork original, CodingMode mode);
  void validate_plan(const FaultPlan& plan) const;
  std::vector<std::vector<int>> run(const SignVector& x,
                                    const FaultPlan& plan) const;

  LayeredNetwork original_;
  CodingMode mode_;
  std::vector<std::vector<Solution>> coded_layers_;
  // integer views of the coded weights, for the forward loops
  std::vector<std::vector<std::vector<long long>>> weight_rows_;
  std::vector<std::vector<long long>> bias_rows_;
  bool fault_prone_gates_ = false;
};

CodedNetwork code_network(const LayeredNetwork& network);
CodedNetwork identity_baseline(const LayeredNetwork& network);

// Every plan with at most one erased synapse per coded neuron, against
// every input; gates stay clean. Counts failures and keeps the first
// failing (input, plan) in deterministic order.
FaultCheckReport exhaustive_single_fault_check(
    const CodedNetwork& network, std::uint64_t budget = kDefaultPatternBudget);

// Random per-synapse faults: each synapse independently erased with
// probability erasure_prob, errored with error_prob, clean otherwise.
// Deterministic for a fixed (seed, trial count); trial randomness depends
// only on (seed, trial index).
TrialStatistics monte_carlo_fault_sim(const CodedNetwork& network,
                                      const Rational& erasure_prob,
                                      const Rational& error_prob,
                                      std::uint64_t trials,
                                      std::uint64_t seed);

}  // namespace neuroncode
