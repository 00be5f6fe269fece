#include "neuroncode/solutions.hpp"

#include <bit>

#include "neuroncode/errors.hpp"

namespace neuroncode {
namespace {

long long abs_weight_sum(const std::vector<long long>& weights) {
  long long total = 0;
  for (long long w : weights) total += w < 0 ? -w : w;
  return total;
}

int sign_flip_power(long long exponent) {
  // (-1)^exponent with exponent possibly negative
  return exponent % 2 == 0 ? +1 : -1;
}

}  // namespace

Encoder::Encoder(std::size_t n, std::size_t m, EncoderKind kind)
    : n_(n), m_(m), kind_(std::move(kind)) {
  if (n_ == 0) throw dimension_error("encoder input dimension must be positive");
  if (m_ == 0) throw dimension_error("encoder output dimension must be positive");
}

Encoder Encoder::identity(std::size_t n) {
  return Encoder(n, n, IdentityEncoder{});
}

Encoder Encoder::constant(Neuron target, std::size_t m, std::size_t cap) {
  if (m == 0) throw dimension_error("constant encoder needs m >= 1");
  if (target.dimension() > cap) {
    throw resource_error("constant encoder requires evaluating the target; "
                         "dimension exceeds the enumeration cap");
  }
  std::size_t n = target.dimension();
  return Encoder(n, m, ConstantEncoder{std::move(target)});
}

Encoder Encoder::replication(Encoder inner, unsigned times) {
  if (times == 0) throw domain_error("replication factor must be positive");
  std::size_t n = inner.input_dimension();
  std::size_t m = inner.output_dimension() * times;
  auto shared = std::make_shared<const Encoder>(std::move(inner));
  return Encoder(n, m, ReplicationEncoder{std::move(shared), times});
}

Encoder Encoder::parity(std::size_t n) {
  return Encoder(n, n + 1, ParityEncoder{});
}

Encoder Encoder::generalized_parity(std::vector<long long> weights) {
  if (weights.empty()) {
    throw dimension_error("generalized parity needs at least one weight");
  }
  long long total = abs_weight_sum(weights);
  if (total == 0) {
    throw domain_error("generalized parity requires a nonzero weight");
  }
  std::size_t n = weights.size();
  std::size_t m = static_cast<std::size_t>(total) + 1;
  return Encoder(n, m, GeneralizedParityEncoder{std::move(weights)});
}

Encoder Encoder::punctured_hadamard(std::size_t n, std::size_t cap) {
  if (n == 0) throw dimension_error("encoder input dimension must be positive");
  if (n > cap) {
    throw resource_error("punctured Hadamard length 2^n - 1 exceeds cap at n = " +
                         std::to_string(n));
  }
  return Encoder(n, (1ull << n) - 1, PuncturedHadamardEncoder{});
}

std::string Encoder::kind_name() const {
  struct Visitor {
    std::string operator()(const IdentityEncoder&) const { return "identity"; }
    std::string operator()(const ConstantEncoder&) const { return "constant"; }
    std::string operator()(const ReplicationEncoder& r) const {
      return "replication:" + std::to_string(r.times) + " of " +
             r.inner->kind_name();
    }
    std::string operator()(const ParityEncoder&) const { return "parity"; }
    std::string operator()(const GeneralizedParityEncoder&) const {
      return "generalized-parity";
    }
    std::string operator()(const PuncturedHadamardEncoder&) const {
      return "punctured-hadamard";
    }
  };
  return std::visit(Visitor{}, kind_);
}

SignVector Encoder::encode(const SignVector& x) const {
  if (x.size() != n_) {
    throw dimension_error("input length does not match encoder dimension");
  }

  struct Visitor {
    const SignVector& x;
    std::size_t m;

    SignVector operator()(const IdentityEncoder&) const { return x; }

    SignVector operator()(const ConstantEncoder& e) const {
      SignVector out(m);
      if (e.target.evaluate(x) == -1) {
        for (std::size_t j = 0; j < m; ++j) out.set(j, -1);
      }
      return out;
    }

    SignVector operator()(const ReplicationEncoder& e) const {
      SignVector block = e.inner->encode(x);
      SignVector out(m);
      std::size_t offset = 0;
      for (unsigned copy = 0; copy < e.times; ++copy) {
        for (std::size_t j = 0; j < block.size(); ++j) {
          if (block.is_negative(j)) out.set(offset + j, -1);
        }
        offset += block.size();
      }
      return out;
    }

    SignVector operator()(const ParityEncoder&) const {
      SignVector out(m);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.is_negative(i)) out.set(i, -1);
      }
      if (neuroncode::parity(x) == -1) out.set(m - 1, -1);
      return out;
    }

    SignVector operator()(const GeneralizedParityEncoder& e) const {
      SignVector out(m);
      std::size_t offset = 0;
      std::uint64_t odd_mask = 0;
      for (std::size_t i = 0; i < e.weights.size(); ++i) {
        long long copies = e.weights[i] < 0 ? -e.weights[i] : e.weights[i];
        for (long long c = 0; c < copies; ++c) {
          if (x.is_negative(i)) out.set(offset, -1);
          ++offset;
        }
        if (copies % 2 != 0) odd_mask |= 1ull << i;
      }
      if (chi(odd_mask, x) == -1) out.set(m - 1, -1);
      return out;
    }

    SignVector operator()(const PuncturedHadamardEncoder&) const {
      SignVector out(m);
      std::uint64_t bits = x.bit_pattern();
      for (std::uint64_t mask = 1; mask <= m; ++mask) {
        if (std::popcount(mask & bits) % 2 != 0) out.set(mask - 1, -1);
      }
      return out;
    }
  };
  return std::visit(Visitor{x, m_}, kind_);
}

Rational Solution::coded_preactivation(const SignVector& x) const {
  SignVector coded = encoder.encode(x);
  Rational sum = -coded_bias;
  for (std::size_t j = 0; j < coded_weights.size(); ++j) {
    if (coded.is_negative(j)) {
      sum -= coded_weights[j];
    } else {
      sum += coded_weights[j];
    }
  }
  return sum;
}

int Solution::coded_evaluate(const SignVector& x) const {
  return sign_of(coded_preactivation(x));
}

Solution make_solution(Encoder encoder, std::vector<Rational> coded_weights,
                       Rational coded_bias) {
  if (coded_weights.size() != encoder.output_dimension()) {
    throw dimension_error("coded weight length must equal the coded length");
  }
  bool all_zero = true;
  for (const Rational& v : coded_weights) {
    if (v != 0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) {
    throw degenerate_error("coded weights must not be all zero");
  }
  return Solution{std::move(encoder), std::move(coded_weights),
                  std::move(coded_bias)};
}

Solution identity_solution(const Neuron& neuron) {
  return make_solution(Encoder::identity(neuron.dimension()),
                       neuron.weights(), neuron.bias());
}

Solution constant_solution(const Neuron& neuron, std::size_t m,
                           std::size_t cap) {
  std::vector<Rational> ones(m, Rational(1));
  return make_solution(Encoder::constant(neuron, m, cap), std::move(ones),
                       Rational(0));
}

Solution replicate(const Solution& solution, unsigned times) {
  if (times == 0) throw domain_error("replication factor must be positive");
  if (times == 1) return solution;
  std::vector<Rational> tiled;
  tiled.reserve(solution.coded_weights.size() * times);
  for (unsigned copy = 0; copy < times; ++copy) {
    tiled.insert(tiled.end(), solution.coded_weights.begin(),
                 solution.coded_weights.end());
  }
  return make_solution(Encoder::replication(solution.encoder, times),
                       std::move(tiled),
                       solution.coded_bias * static_cast<long>(times));
}

Solution parity_solution(const BinaryNeuron& neuron) {
  std::size_t n = neuron.dimension();
  long long theta_prime = (static_cast<long long>(n) - neuron.bias() - 1) / 2;
  int redundancy =
      sign_flip_power(theta_prime) * parity(neuron.weights());
  std::vector<Rational> v;
  v.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(neuron.weights()[i]);
  v.emplace_back(redundancy);
  return make_solution(Encoder::parity(n), std::move(v),
                       Rational(static_cast<long>(neuron.bias())));
}

Solution generalized_parity_solution(const Neuron& neuron) {
  if (!neuron.has_integer_weights()) {
    throw domain_error("generalized parity requires integer weights");
  }
  if (neuron.has_zero_weights()) {
    throw domain_error("generalized parity requires a nonzero weight");
  }
  std::vector<long long> weights;
  weights.reserve(neuron.dimension());
  for (const Rational& w : neuron.weights()) weights.push_back(to_long(w));
  long long span = abs_weight_sum(weights);

  if (!is_integral(neuron.bias())) {
    throw domain_error("bias must be canonical with respect to sum |w_i|");
  }
  long long theta = to_long(neuron.bias());
  if (theta < -span - 1 || theta > span + 1 || (span - theta) % 2 == 0) {
    throw domain_error("bias must be canonical with respect to sum |w_i|");
  }

  long long theta_prime = (span - theta - 1) / 2;
  // chi over the sign-replicated weight vector: product of sign(w_i)^|w_i|
  int chi_replicated = 1;
  for (long long w : weights) {
    if (w < 0 && (-w) % 2 != 0) chi_replicated = -chi_replicated;
  }

  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(span) + 1);
  for (long long w : weights) {
    long long copies = w < 0 ? -w : w;
    for (long long c = 0; c < copies; ++c) v.emplace_back(w < 0 ? -1 : 1);
  }
  v.emplace_back(sign_flip_power(theta_prime) * chi_replicated);
  return make_solution(Encoder::generalized_parity(std::move(weights)),
                       std::move(v), Rational(static_cast<long>(theta)));
}

Solution fourier_solution(const Neuron& neuron, std::size_t cap) {
  std::size_t n = neuron.dimension();
  if (n > cap) {
    throw resource_error("spectrum encoding exceeds cap at n = " +
                         std::to_string(n));
  }
  Spectrum spectrum = walsh_hadamard(
      [&neuron](const SignVector& x) { return Rational(neuron.evaluate(x)); },
      n);
  std::vector<Rational> v;
  v.reserve(spectrum.subset_count() - 1);
  for (std::uint64_t mask = 1; mask < spectrum.subset_count(); ++mask) {
    v.push_back(spectrum.coefficient(mask));
  }
  Rational mu = -spectrum.coefficient(0);
  return make_solution(Encoder::punctured_hadamard(n, cap), std::move(v),
                       std::move(mu));
}

}  // namespace neuroncode
