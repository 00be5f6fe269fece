#include "neuroncode/boolean.hpp"

#include <bit>

#include "neuroncode/errors.hpp"

namespace neuroncode {

Spectrum::Spectrum(std::size_t n, std::vector<Rational> coefficients)
    : n_(n), coefficients_(std::move(coefficients)) {
  if (n == 0) throw dimension_error("spectrum dimension must be positive");
  if (n > kSpectrumCap) {
    throw resource_error("spectrum dimension " + std::to_string(n) +
                         " exceeds dense cap " + std::to_string(kSpectrumCap));
  }
  if (coefficients_.size() != (1ull << n)) {
    throw dimension_error("spectrum must hold one coefficient per subset");
  }
}

const Rational& Spectrum::coefficient(std::uint64_t subset_mask) const {
  if (subset_mask >= coefficients_.size()) {
    throw dimension_error("subset index out of range");
  }
  return coefficients_[subset_mask];
}

Rational Spectrum::reconstruct(const SignVector& x) const {
  if (x.size() != n_) {
    throw dimension_error("point dimension does not match spectrum");
  }
  std::uint64_t bits = x.bit_pattern();
  Rational sum = 0;
  for (std::uint64_t mask = 0; mask < coefficients_.size(); ++mask) {
    if (std::popcount(mask & bits) % 2 == 0) {
      sum += coefficients_[mask];
    } else {
      sum -= coefficients_[mask];
    }
  }
  return sum;
}

Rational Spectrum::sum_of_squares() const {
  Rational sum = 0;
  for (const Rational& c : coefficients_) sum += c * c;
  return sum;
}

Rational Spectrum::max_abs_excluding_empty() const {
  Rational best = 0;
  for (std::uint64_t mask = 1; mask < coefficients_.size(); ++mask) {
    Rational magnitude = abs(coefficients_[mask]);
    if (magnitude > best) best = magnitude;
  }
  return best;
}

Spectrum walsh_hadamard(const std::vector<Rational>& truth_table,
                        std::size_t n) {
  if (n == 0) throw dimension_error("transform dimension must be positive");
  if (n > kSpectrumCap) {
    throw resource_error("transform dimension " + std::to_string(n) +
                         " exceeds dense cap " + std::to_string(kSpectrumCap));
  }
  std::uint64_t points = 1ull << n;
  if (truth_table.size() != points) {
    throw domain_error("truth table must cover all 2^n points");
  }

  std::vector<Rational> coefficients = truth_table;
  for (std::size_t bit = 0; bit < n; ++bit) {
    std::uint64_t step = 1ull << bit;
    for (std::uint64_t block = 0; block < points; block += 2 * step) {
      for (std::uint64_t i = block; i < block + step; ++i) {
        Rational low = coefficients[i];
        Rational high = coefficients[i + step];
        coefficients[i] = low + high;
        coefficients[i + step] = low - high;
      }
    }
  }
  Rational scale = make_rational(1, static_cast<long long>(points));
  for (Rational& c : coefficients) c *= scale;
  return Spectrum(n, std::move(coefficients));
}

Spectrum walsh_hadamard(const std::function<Rational(const SignVector&)>& f,
                        std::size_t n) {
  if (n == 0) throw dimension_error("transform dimension must be positive");
  if (n > kSpectrumCap) {
    throw resource_error("transform dimension " + std::to_string(n) +
                         " exceeds dense cap " + std::to_string(kSpectrumCap));
  }
  std::uint64_t points = 1ull << n;
  std::vector<Rational> table(points);
  for (std::uint64_t bits = 0; bits < points; ++bits) {
    table[bits] = f(SignVector::from_bit_pattern(n, bits));
  }
  return walsh_hadamard(table, n);
}

}  // namespace neuroncode
