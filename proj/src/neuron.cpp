#include "neuroncode/neuron.hpp"

#include "neuroncode/errors.hpp"

namespace neuroncode {

Neuron::Neuron(std::vector<Rational> weights, Rational bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.empty()) {
    throw dimension_error("neuron needs at least one weight");
  }
  if (is_integral(bias_)) {
    Integer reach = abs(bias_.get_num());
    bool integral = true;
    for (const Rational& w : weights_) {
      if (!is_integral(w)) {
        integral = false;
        break;
      }
      reach += abs(w.get_num());
    }
    if (integral && mpz_sizeinbase(reach.get_mpz_t(), 2) <= 55) {
      fast_weights_.reserve(weights_.size());
      for (const Rational& w : weights_) fast_weights_.push_back(to_long(w));
      fast_bias_ = to_long(bias_);
      has_fast_path_ = true;
    }
  }
}

Rational Neuron::preactivation(const SignVector& x) const {
  if (x.size() != weights_.size()) {
    throw dimension_error("input length does not match neuron dimension");
  }
  Rational sum = -bias_;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (x.is_negative(i)) {
      sum -= weights_[i];
    } else {
      sum += weights_[i];
    }
  }
  return sum;
}

int Neuron::evaluate(const SignVector& x) const {
  if (has_fast_path_) {
    if (x.size() != weights_.size()) {
      throw dimension_error("input length does not match neuron dimension");
    }
    long long sum = -fast_bias_;
    for (std::size_t i = 0; i < fast_weights_.size(); ++i) {
      sum += x.is_negative(i) ? -fast_weights_[i] : fast_weights_[i];
    }
    return sum >= 0 ? +1 : -1;
  }
  return sign_of(preactivation(x));
}

bool Neuron::has_binary_weights() const {
  for (const Rational& w : weights_) {
    if (w != 1 && w != -1) return false;
  }
  return true;
}

bool Neuron::has_integer_weights() const {
  for (const Rational& w : weights_) {
    if (!is_integral(w)) return false;
  }
  return true;
}

bool Neuron::has_zero_weights() const {
  for (const Rational& w : weights_) {
    if (w != 0) return false;
  }
  return true;
}

Rational Neuron::linf_weight() const {
  Rational best = 0;
  for (const Rational& w : weights_) {
    Rational magnitude = abs(w);
    if (magnitude > best) best = magnitude;
  }
  return best;
}

Rational Neuron::l1_weight() const {
  Rational sum = 0;
  for (const Rational& w : weights_) sum += abs(w);
  return sum;
}

BinaryNeuron::BinaryNeuron(SignVector weights, long long bias)
    : weights_(std::move(weights)), bias_(bias) {
  long long n = static_cast<long long>(weights_.size());
  if (bias < -n - 1 || bias > n + 1 || (n - bias) % 2 == 0) {
    throw domain_error("bias must lie on the canonical grid {-n-1,...,n+1}");
  }
}

BinaryNeuron BinaryNeuron::canonicalize(const Neuron& neuron) {
  if (!neuron.has_binary_weights()) {
    throw domain_error("canonical form requires ±1 weights");
  }
  SignVector w(neuron.dimension());
  for (std::size_t i = 0; i < neuron.dimension(); ++i) {
    w.set(i, neuron.weights()[i] == 1 ? +1 : -1);
  }
  long long span = static_cast<long long>(neuron.dimension());
  return BinaryNeuron(std::move(w), canonical_bias(neuron.bias(), span));
}

int BinaryNeuron::evaluate(const SignVector& x) const {
  if (x.size() != weights_.size()) {
    throw dimension_error("input length does not match neuron dimension");
  }
  return inner_product(x, weights_) - bias_ >= 0 ? +1 : -1;
}

bool BinaryNeuron::is_constant() const {
  long long n = static_cast<long long>(weights_.size());
  return bias_ == n + 1 || bias_ == -n - 1;
}

Neuron BinaryNeuron::as_neuron() const {
  std::vector<Rational> w;
  w.reserve(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    w.emplace_back(weights_[i]);
  }
  return Neuron(std::move(w), Rational(static_cast<long>(bias_)));
}

std::pair<long long, long long> BinaryNeuron::hamming_thresholds() const {
  long long n = static_cast<long long>(weights_.size());
  long long pos_bound = (n - bias_ - 1) / 2;
  return {pos_bound, pos_bound + 1};
}

long long canonical_bias(const Rational& bias, long long span) {
  long span_l = static_cast<long>(span);
  if (bias <= -span_l) return -span - 1;
  if (bias > span_l) return span + 1;
  // bias in (-span+2t, -span+2t+2] for t = ceil((bias+span)/2) - 1
  Rational shifted = (bias + span_l) / 2;
  Integer t_ceil;
  mpz_cdiv_q(t_ceil.get_mpz_t(), shifted.get_num().get_mpz_t(),
             shifted.get_den().get_mpz_t());
  long long t = t_ceil.get_si() - 1;
  return -span + 2 * t + 1;
}

Neuron canonicalize_integer_bias(const Neuron& neuron) {
  if (!neuron.has_integer_weights()) {
    throw domain_error("canonical rounding requires integer weights");
  }
  long long span = to_long(neuron.l1_weight());
  long long rounded = canonical_bias(neuron.bias(), span);
  return Neuron(neuron.weights(), Rational(static_cast<long>(rounded)));
}

Rational delta(const Neuron& neuron, std::size_t cap) {
  if (neuron.has_zero_weights()) {
    throw degenerate_error("margin undefined for all-zero weights");
  }
  Rational scale = neuron.linf_weight();
  bool first = true;
  Rational best = 0;
  for (const SignVector& x : enumerate_hypercube(neuron.dimension(), cap)) {
    Rational margin = abs(neuron.preactivation(x));
    if (first || margin < best) {
      best = margin;
      first = false;
    }
    if (best == 0) break;
  }
  return best / scale;
}

std::pair<std::vector<SignVector>, std::vector<SignVector>> classify_points(
    const Neuron& neuron, std::size_t cap) {
  std::vector<SignVector> positive;
  std::vector<SignVector> negative;
  for (const SignVector& x : enumerate_hypercube(neuron.dimension(), cap)) {
    if (neuron.evaluate(x) == 1) {
      positive.push_back(x);
    } else {
      negative.push_back(x);
    }
  }
  return {std::move(positive), std::move(negative)};
}

}  // namespace neuroncode
