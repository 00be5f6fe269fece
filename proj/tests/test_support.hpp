#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "neuroncode/neuron.hpp"
#include "neuroncode/rational.hpp"
#include "neuroncode/sign_vector.hpp"

namespace testsupport {

// deterministic generator so failures reproduce exactly
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  long long in_range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(hi - lo + 1));
  }

  bool coin() { return next() >> 63; }
};

inline neuroncode::Neuron majority3() {
  return neuroncode::Neuron({1, 1, 1}, 0);
}

// the running 3-input example: sign(x1 + x2 - x3)
inline neuroncode::Neuron mixed_sign_neuron() {
  return neuroncode::Neuron({1, 1, -1}, 0);
}

inline neuroncode::SignVector random_point(Rng& rng, std::size_t n) {
  neuroncode::SignVector x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, rng.coin() ? -1 : +1);
  return x;
}

inline neuroncode::BinaryNeuron random_binary_neuron(Rng& rng, std::size_t n,
                                                     bool allow_constant) {
  while (true) {
    neuroncode::SignVector w = random_point(rng, n);
    long long span = static_cast<long long>(n);
    // canonical grid {-n-1, -n+1, ..., n+1}
    long long choices = span + 2;
    long long bias = -span - 1 + 2 * rng.in_range(0, choices - 1);
    if (!allow_constant && (bias == span + 1 || bias == -span - 1)) continue;
    return neuroncode::BinaryNeuron(std::move(w), bias);
  }
}

// Exhaustive reference for the clipped L1 distance. Some optimal point has
// at most one coordinate away from {z_j, -1, +1}; enumerate the free
// coordinate and every breakpoint assignment of the rest.
inline std::optional<neuroncode::Rational> clipped_distance_oracle(
    std::span<const neuroncode::Rational> z,
    std::span<const neuroncode::Rational> v, const neuroncode::Rational& mu) {
  using neuroncode::Rational;
  std::size_t m = z.size();
  Rational gap = -mu;
  for (std::size_t j = 0; j < m; ++j) gap += z[j] * v[j];
  if (gap == 0) return Rational(0);

  std::optional<Rational> best;
  for (std::size_t free = 0; free < m; ++free) {
    if (v[free] == 0) continue;
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != free) others.push_back(j);
    }
    std::size_t combos = 1;
    for (std::size_t i = 0; i < others.size(); ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      Rational partial = 0;
      Rational cost = 0;
      std::size_t digits = code;
      for (std::size_t j : others) {
        Rational value;
        switch (digits % 3) {
          case 0: value = z[j]; break;
          case 1: value = -1; break;
          default: value = 1; break;
        }
        digits /= 3;
        partial += value * v[j];
        cost += abs(z[j] - value);
      }
      Rational y_free = (mu - partial) / v[free];
      if (abs(y_free) > 1) continue;
      cost += abs(z[free] - y_free);
      if (!best || cost < *best) best = cost;
    }
  }
  return best;
}

}  // namespace testsupport
