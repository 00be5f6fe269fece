#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neuroncode/solutions.hpp"

namespace neuroncode {

// default cap on enumerated (input, pattern) evaluations
inline constexpr std::uint64_t kDefaultPatternBudget = 1ull << 30;

// Disjoint erasure and error index sets over the coded coordinates.
// An erased coordinate contributes nothing; an errored one contributes
// its negation. Pattern cost is |erasures| + 2·|errors|.
struct NoisePattern {
  std::vector<std::size_t> erasures;
  std::vector<std::size_t> errors;

  unsigned cost() const {
    return static_cast<unsigned>(erasures.size() + 2 * errors.size());
  }
  bool empty() const { return erasures.empty() && errors.empty(); }
  void validate(std::size_t coded_length) const;
  std::string to_string() const;

  friend bool operator==(const NoisePattern&, const NoisePattern&) = default;
};

NoisySignVector apply_pattern(const SignVector& coded,
                              const NoisePattern& pattern);

Rational noisy_preactivation(const Solution& solution, const SignVector& x,
                             const NoisePattern& pattern);
int noisy_evaluate(const Solution& solution, const SignVector& x,
                   const NoisePattern& pattern);

struct Witness {
  SignVector input;
  NoisePattern pattern;
  std::string to_string() const;
};

// First (input, pattern) in deterministic order (inputs lexicographic,
// then erasure sets, then error sets) where the noisy coded output
// disagrees with the neuron; nullopt when (t,s)-robust.
std::optional<Witness> find_ts_violation(
    const Solution& solution, const Neuron& neuron, unsigned t, unsigned s,
    std::uint64_t budget = kDefaultPatternBudget);

bool is_ts_robust(const Solution& solution, const Neuron& neuron, unsigned t,
                  unsigned s, std::uint64_t budget = kDefaultPatternBudget);

// Largest r such that every (t,s) with t+2s <= r passes, by exhaustive
// enumeration; capped at the coded length.
unsigned robustness_radius(const Solution& solution, const Neuron& neuron,
                           std::uint64_t budget = kDefaultPatternBudget);

// |z·v - mu| / max|v_j|, the exact L1 distance to the hyperplane z·v = mu.
Rational l1_distance_to_hyperplane(std::span<const Rational> z,
                                   std::span<const Rational> v,
                                   const Rational& mu);

// Exact L1 distance from z (inside [-1,1]^m) to the hyperplane clipped to
// the cube, via greedy saturation of the largest-|v| coordinates; nullopt
// when the clipped hyperplane is unreachable (infinite distance).
std::optional<Rational> l1_distance_to_clipped(std::span<const Rational> z,
                                               std::span<const Rational> v,
                                               const Rational& mu);

// min over x of the distance from E(x) to the decision hyperplane
Rational min_distance(const Solution& solution,
                      std::size_t cap = kDefaultEnumerationCap);

Rational relative_distance(const Solution& solution,
                           std::size_t cap = kDefaultEnumerationCap);

// smallest min_distance over several coded neurons sharing one encoder
Rational joint_min_distance(
    const Encoder& encoder,
    std::span<const std::pair<std::vector<Rational>, Rational>> pairs,
    std::size_t cap = kDefaultEnumerationCap);

// per-class minima of the clipped distances; nullopt means +infinity
// (empty class, or no encoded point of the class can reach the clipped
// hyperplane)
struct ClassDistances {
  std::optional<Rational> positive;
  std::optional<Rational> negative;
  bool agreement = false;  // coded output matches the neuron on every input
};

ClassDistances clipped_class_distances(const Solution& solution,
                                       const Neuron& neuron,
                                       std::size_t cap = kDefaultEnumerationCap);

// Geometric criterion for r-robustness: coded agreement everywhere,
// r <= d(positive class) and r < d(negative class), with distances taken
// to the clipped hyperplane. r = 0 reduces to the agreement check.
bool distance_criterion_robust(const Solution& solution, const Neuron& neuron,
                               unsigned r,
                               std::size_t cap = kDefaultEnumerationCap);

struct RobustnessReport {
  std::size_t coded_length = 0;  // m
  Rational min_dist;             // d
  Rational relative;             // d / m
  unsigned radius = 0;
  bool radius_capped = false;  // radius reached the coded length unfalsified
  // first failing (input, pattern) per (t,s) frontier at radius + 1;
  // empty exactly when the radius is capped
  std::vector<Witness> witnesses;
  std::uint64_t checked_patterns = 0;
  double wall_seconds = 0.0;
};

RobustnessReport analyze_robustness(
    const Solution& solution, const Neuron& neuron,
    std::uint64_t budget = kDefaultPatternBudget,
    std::size_t cap = kDefaultEnumerationCap);

}  // namespace neuroncode
