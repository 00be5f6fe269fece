#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "neuroncode/boolean.hpp"
#include "neuroncode/neuron.hpp"

namespace neuroncode {

inline constexpr std::size_t kHadamardCap = 16;

class Encoder;

struct IdentityEncoder {};

// maps x to +1_m or -1_m according to the target's output; baseline only
struct ConstantEncoder {
  Neuron target;
};

// concatenation of `times` copies of the inner encoding
struct ReplicationEncoder {
  std::shared_ptr<const Encoder> inner;
  unsigned times;
};

// (x_1, ..., x_n, x_1·x_2···x_n)
struct ParityEncoder {};

// x_i repeated |w_i| times, then the product of the odd-weight coordinates
struct GeneralizedParityEncoder {
  std::vector<long long> weights;
};

// all nonempty monomials chi_S(x), subsets ordered by ascending bitmask
struct PuncturedHadamardEncoder {};

using EncoderKind =
    std::variant<IdentityEncoder, ConstantEncoder, ReplicationEncoder,
                 ParityEncoder, GeneralizedParityEncoder,
                 PuncturedHadamardEncoder>;

// A coding map {±1}^n -> {±1}^m whose coordinates are multilinear monomials
// of the input (the constant encoder being the one deliberate exception).
class Encoder {
 public:
  static Encoder identity(std::size_t n);
  static Encoder constant(Neuron target, std::size_t m,
                          std::size_t cap = kDefaultEnumerationCap);
  static Encoder replication(Encoder inner, unsigned times);
  static Encoder parity(std::size_t n);
  static Encoder generalized_parity(std::vector<long long> weights);
  static Encoder punctured_hadamard(std::size_t n,
                                    std::size_t cap = kHadamardCap);

  std::size_t input_dimension() const { return n_; }
  std::size_t output_dimension() const { return m_; }
  const EncoderKind& kind() const { return kind_; }
  std::string kind_name() const;

  SignVector encode(const SignVector& x) const;

 private:
  Encoder(std::size_t n, std::size_t m, EncoderKind kind);

  std::size_t n_;
  std::size_t m_;
  EncoderKind kind_;
};

// Coded neuron (E, v, mu): x -> sign(E(x)·v - mu), sign(0) = +1.
struct Solution {
  Encoder encoder;
  std::vector<Rational> coded_weights;  // v, never all-zero
  Rational coded_bias;                  // mu

  std::size_t input_dimension() const { return encoder.input_dimension(); }
  std::size_t coded_length() const { return encoder.output_dimension(); }

  Rational coded_preactivation(const SignVector& x) const;
  int coded_evaluate(const SignVector& x) const;
};

Solution make_solution(Encoder encoder, std::vector<Rational> coded_weights,
                       Rational coded_bias);

// (Id, w, theta): the uncoded neuron itself
Solution identity_solution(const Neuron& neuron);

// repeat-the-answer baseline over m wires
Solution constant_solution(const Neuron& neuron, std::size_t m,
                           std::size_t cap = kDefaultEnumerationCap);

// concatenate the solution with itself `times` times; bias scales
Solution replicate(const Solution& solution, unsigned times);

// one parity bit of redundancy; requires a canonical-bias binary neuron
Solution parity_solution(const BinaryNeuron& neuron);

// parity construction for integer weights; requires the bias to be
// canonical with respect to sum |w_i|
Solution generalized_parity_solution(const Neuron& neuron);

// punctured-Hadamard encoding weighted by the spectrum of the neuron
Solution fourier_solution(const Neuron& neuron,
                          std::size_t cap = kHadamardCap);

}  // namespace neuroncode
