#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "neuroncode/rational.hpp"
#include "neuroncode/sign_vector.hpp"

namespace neuroncode {

// Dense spectra keep 2^n exact coefficients; refuse beyond this.
inline constexpr std::size_t kSpectrumCap = 20;

// Fourier coefficients of f: {±1}^n -> Q over all 2^n subsets of [n],
// indexed by subset bitmask (bit i <-> coordinate i).
class Spectrum {
 public:
  Spectrum(std::size_t n, std::vector<Rational> coefficients);

  std::size_t dimension() const { return n_; }
  std::size_t subset_count() const { return coefficients_.size(); }
  const Rational& coefficient(std::uint64_t subset_mask) const;
  const std::vector<Rational>& coefficients() const { return coefficients_; }

  // sum over S of coeff(S) * chi_S(x); recovers f exactly
  Rational reconstruct(const SignVector& x) const;
  // sum of squared coefficients; exactly 1 for ±1-valued sources
  Rational sum_of_squares() const;
  // ∞-norm of the spectrum with the empty-set coefficient dropped
  Rational max_abs_excluding_empty() const;

 private:
  std::size_t n_;
  std::vector<Rational> coefficients_;
};

// truth_table is indexed by bit pattern (bit i set <-> coordinate i is -1)
// and must cover all 2^n points; coefficients are exact rational averages
// of chi_S(x) * f(x).
Spectrum walsh_hadamard(const std::vector<Rational>& truth_table,
                        std::size_t n);
Spectrum walsh_hadamard(const std::function<Rational(const SignVector&)>& f,
                        std::size_t n);

}  // namespace neuroncode
