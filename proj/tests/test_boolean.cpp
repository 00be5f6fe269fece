#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>

#include "neuroncode/boolean.hpp"
#include "neuroncode/errors.hpp"
#include "neuroncode/sign_vector.hpp"
#include "test_support.hpp"

using namespace neuroncode;
using testsupport::Rng;

namespace {

// direct-definition transform: coeff(S) = mean of chi_S(x) f(x)
Rational spectrum_oracle(const std::vector<Rational>& table, std::size_t n,
                         std::uint64_t mask) {
  Rational sum = 0;
  for (std::uint64_t bits = 0; bits < table.size(); ++bits) {
    int sign = std::popcount(mask & bits) % 2 == 0 ? +1 : -1;
    sum += sign * table[bits];
  }
  return sum / make_rational(1ll << n);
}

}  // namespace

TEST_CASE("pointwise product matches the spec examples") {
  auto a = SignVector::from_entries({1, -1});
  CHECK(xor_product(a, a) == SignVector::from_entries({1, 1}));

  auto b = SignVector::from_entries({1, -1, 1});
  auto c = SignVector::from_entries({1, 1, -1});
  CHECK(xor_product(b, c) == SignVector::from_entries({1, -1, -1}));

  CHECK_THROWS_AS(xor_product(a, b), dimension_error);
}

TEST_CASE("pointwise product is bitwise XOR in the packed representation") {
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      auto product = xor_product(SignVector::from_bit_pattern(4, a),
                                 SignVector::from_bit_pattern(4, b));
      CHECK(product.bit_pattern() == (a ^ b));
    }
  }
}

TEST_CASE("hamming weight counts -1 entries") {
  CHECK(hamming_weight(SignVector::from_entries({1, 1, 1})) == 0);
  CHECK(hamming_weight(SignVector::from_entries({-1, -1, -1})) == 3);
  CHECK(hamming_weight(SignVector::from_entries({1, -1, 1})) == 1);
}

TEST_CASE("parity monomials") {
  auto x = SignVector::from_entries({1, -1, 1});
  CHECK(chi(0, x) == 1);  // empty product
  CHECK(chi(0b111, x) == -1);
  CHECK(chi(0b101, SignVector::from_entries({-1, 1, -1})) == 1);
  CHECK_THROWS_AS(chi(0b1000, x), dimension_error);
}

TEST_CASE("chi is multiplicative over pointwise products") {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::uint64_t points = 1ull << n;
    for (std::uint64_t mask = 0; mask < points; ++mask) {
      for (std::uint64_t xb = 0; xb < points; ++xb) {
        for (std::uint64_t yb = 0; yb < points; ++yb) {
          auto x = SignVector::from_bit_pattern(n, xb);
          auto y = SignVector::from_bit_pattern(n, yb);
          CHECK(chi(mask, x) * chi(mask, y) == chi(mask, xor_product(x, y)));
        }
      }
    }
  }
}

TEST_CASE("inner product examples") {
  auto x = SignVector::from_entries({1, -1, 1, -1, 1});
  CHECK(inner_product(x, x) == 5);
  CHECK(inner_product(SignVector::from_entries({1, -1, 1}),
                      SignVector::from_entries({1, 1, -1})) == -1);
}

TEST_CASE("inner product agrees with the naive sum for all n=6 pairs") {
  const std::size_t n = 6;
  for (std::uint64_t xb = 0; xb < 64; ++xb) {
    for (std::uint64_t wb = 0; wb < 64; ++wb) {
      auto x = SignVector::from_bit_pattern(n, xb);
      auto w = SignVector::from_bit_pattern(n, wb);
      long long naive = 0;
      for (std::size_t i = 0; i < n; ++i) naive += x[i] * w[i];
      CHECK(inner_product(x, w) == naive);
      // weight identity: x·w = n - 2 w_H(x ⊕ w)
      CHECK(naive == static_cast<long long>(n) -
                         2 * static_cast<long long>(
                                 hamming_weight(xor_product(x, w))));
    }
  }
}

TEST_CASE("transform of the constant function") {
  std::vector<Rational> table(8, Rational(1));
  Spectrum spectrum = walsh_hadamard(table, 3);
  CHECK(spectrum.coefficient(0) == 1);
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    CHECK(spectrum.coefficient(mask) == 0);
  }
}

TEST_CASE("transform of majority on three inputs") {
  Neuron maj = testsupport::majority3();
  Spectrum spectrum = walsh_hadamard(
      [&maj](const SignVector& x) { return Rational(maj.evaluate(x)); }, 3);

  Rational half = make_rational(1, 2);
  CHECK(spectrum.coefficient(0b001) == half);
  CHECK(spectrum.coefficient(0b010) == half);
  CHECK(spectrum.coefficient(0b100) == half);
  CHECK(spectrum.coefficient(0b111) == -half);
  CHECK(spectrum.coefficient(0) == 0);
  CHECK(spectrum.coefficient(0b011) == 0);
  CHECK(spectrum.coefficient(0b101) == 0);
  CHECK(spectrum.coefficient(0b110) == 0);
  CHECK(spectrum.max_abs_excluding_empty() == half);

  // cross-check every coefficient against the direct definition
  std::vector<Rational> table;
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    table.emplace_back(maj.evaluate(SignVector::from_bit_pattern(3, bits)));
  }
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    CHECK(spectrum.coefficient(mask) == spectrum_oracle(table, 3, mask));
  }

  // and reconstruct the function exactly
  for (const SignVector& x : enumerate_hypercube(3)) {
    CHECK(spectrum.reconstruct(x) == maj.evaluate(x));
  }
}

TEST_CASE("random Boolean tables satisfy Parseval and reconstruct exactly") {
  Rng rng(2024);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int sample = 0; sample < 3; ++sample) {
      std::uint64_t points = 1ull << n;
      std::vector<Rational> table;
      table.reserve(points);
      for (std::uint64_t i = 0; i < points; ++i) {
        table.emplace_back(rng.coin() ? 1 : -1);
      }
      Spectrum spectrum = walsh_hadamard(table, n);
      CHECK(spectrum.sum_of_squares() == 1);
      if (n <= 6) {
        for (std::uint64_t bits = 0; bits < points; ++bits) {
          CHECK(spectrum.reconstruct(SignVector::from_bit_pattern(n, bits)) ==
                table[bits]);
        }
      }
    }
  }
}

TEST_CASE("rational-valued tables also reconstruct exactly") {
  Rng rng(77);
  const std::size_t n = 4;
  std::vector<Rational> table;
  for (std::uint64_t i = 0; i < 16; ++i) {
    table.push_back(make_rational(rng.in_range(-20, 20), rng.in_range(1, 7)));
  }
  Spectrum spectrum = walsh_hadamard(table, n);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    CHECK(spectrum.reconstruct(SignVector::from_bit_pattern(n, bits)) ==
          table[bits]);
  }
}

TEST_CASE("transform input validation") {
  CHECK_THROWS_AS(walsh_hadamard(std::vector<Rational>(7, Rational(1)), 3),
                  neuroncode::domain_error);
  CHECK_THROWS_AS(walsh_hadamard(std::vector<Rational>(1, Rational(1)), 21),
                  resource_error);
}

TEST_CASE("hypercube enumeration order and cardinality") {
  std::vector<SignVector> points;
  for (const SignVector& x : enumerate_hypercube(1)) points.push_back(x);
  REQUIRE(points.size() == 2);
  CHECK(points[0] == SignVector::from_entries({1}));
  CHECK(points[1] == SignVector::from_entries({-1}));

  // lexicographic with +1 < -1
  std::vector<SignVector> expected3 = {
      SignVector::from_entries({1, 1, 1}),
      SignVector::from_entries({1, 1, -1}),
      SignVector::from_entries({1, -1, 1}),
      SignVector::from_entries({1, -1, -1}),
      SignVector::from_entries({-1, 1, 1}),
      SignVector::from_entries({-1, 1, -1}),
      SignVector::from_entries({-1, -1, 1}),
      SignVector::from_entries({-1, -1, -1}),
  };
  std::size_t at = 0;
  for (const SignVector& x : enumerate_hypercube(3)) {
    REQUIRE(at < expected3.size());
    CHECK(x == expected3[at]);
    if (at > 0) CHECK(expected3[at - 1] < x);
    ++at;
  }
  CHECK(at == 8);

  std::set<std::uint64_t> seen;
  for (const SignVector& x : enumerate_hypercube(10)) {
    seen.insert(x.bit_pattern());
  }
  CHECK(seen.size() == 1024);

  CHECK_THROWS_AS(enumerate_hypercube(25), resource_error);
  CHECK(enumerate_hypercube(12, 16).size() == 4096);
}

TEST_CASE("point index round trip") {
  for (std::size_t n : {1, 3, 7, 11}) {
    for (std::uint64_t index = 0; index < (1ull << n); ++index) {
      CHECK(index_of_point(point_from_index(n, index)) == index);
    }
  }
}

TEST_CASE("noisy vectors hold erasures as zeros") {
  NoisySignVector noisy(SignVector::from_entries({1, -1, 1}));
  noisy.erase_at(1);
  noisy.negate_at(2);
  CHECK(noisy[0] == 1);
  CHECK(noisy[1] == 0);
  CHECK(noisy[2] == -1);
  CHECK(noisy.is_erased(1));
  CHECK_THROWS_AS(noisy.erase_at(3), dimension_error);
  CHECK_THROWS_AS(NoisySignVector({2, 0}), neuroncode::domain_error);
}
