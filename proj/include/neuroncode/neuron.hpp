#pragma once

#include <utility>
#include <vector>

#include "neuroncode/rational.hpp"
#include "neuroncode/sign_vector.hpp"

namespace neuroncode {

// Linear threshold neuron over ±1 inputs: x -> sign(x·w - theta), with
// sign(0) = +1 and exact rational arithmetic throughout.
class Neuron {
 public:
  Neuron(std::vector<Rational> weights, Rational bias);

  std::size_t dimension() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& bias() const { return bias_; }

  Rational preactivation(const SignVector& x) const;  // x·w - theta
  int evaluate(const SignVector& x) const;

  bool has_binary_weights() const;   // every weight is +1 or -1
  bool has_integer_weights() const;
  bool has_zero_weights() const;     // all weights zero (constant neuron)
  Rational linf_weight() const;      // max |w_i|
  Rational l1_weight() const;        // sum |w_i|

 private:
  std::vector<Rational> weights_;
  Rational bias_;
  // integer view for the enumeration loops, when weights and bias are
  // integers of safe magnitude; exactness is unaffected
  std::vector<long long> fast_weights_;
  long long fast_bias_ = 0;
  bool has_fast_path_ = false;
};

// Binary-weight neuron with an integer bias on the canonical grid
// {-n-1, -n+1, ..., n+1} (n - bias is always odd).
class BinaryNeuron {
 public:
  BinaryNeuron(SignVector weights, long long bias);
  // rounds the bias onto the canonical grid without changing any output;
  // requires ±1 weights
  static BinaryNeuron canonicalize(const Neuron& neuron);

  std::size_t dimension() const { return weights_.size(); }
  const SignVector& weights() const { return weights_; }
  long long bias() const { return bias_; }

  int evaluate(const SignVector& x) const;
  bool is_constant() const;  // bias is ±(n+1)
  Neuron as_neuron() const;

  // (pos_bound, neg_bound) = ((n-bias-1)/2, (n-bias+1)/2):
  // output is +1 iff hamming_weight(x ⊕ w) <= pos_bound,
  //           -1 iff hamming_weight(x ⊕ w) >= neg_bound.
  std::pair<long long, long long> hamming_thresholds() const;

 private:
  SignVector weights_;
  long long bias_;
};

// Canonical rounding of a bias against dot products confined to
// {-span, -span+2, ..., span}: bias <= -span maps to -span-1, bias > span
// to span+1, and bias in (-span+2t, -span+2t+2] to -span+2t+1. The rounded
// bias never changes any threshold output.
long long canonical_bias(const Rational& bias, long long span);

// Footnote rounding applied to an integer-weight neuron, span = sum |w_i|.
Neuron canonicalize_integer_bias(const Neuron& neuron);

// min over x of |x·w - theta| / max|w_i|; the neuron's own L1 margin.
Rational delta(const Neuron& neuron,
               std::size_t cap = kDefaultEnumerationCap);

// partition of the hypercube into positive and negative points, in
// enumeration order
std::pair<std::vector<SignVector>, std::vector<SignVector>> classify_points(
    const Neuron& neuron, std::size_t cap = kDefaultEnumerationCap);

}  // namespace neuroncode
