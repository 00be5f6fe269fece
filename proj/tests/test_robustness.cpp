#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "neuroncode/errors.hpp"
#include "neuroncode/robustness.hpp"
#include "neuroncode/solutions.hpp"
#include "test_support.hpp"

using namespace neuroncode;
using testsupport::Rng;

namespace {

Solution mixed_parity() {
  return parity_solution(
      BinaryNeuron::canonicalize(testsupport::mixed_sign_neuron()));
}

std::vector<Rational> rationals(std::initializer_list<long> values) {
  std::vector<Rational> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

using testsupport::clipped_distance_oracle;

}  // namespace

TEST_CASE("noisy evaluation reproduces the single-erasure rows") {
  Solution solution = mixed_parity();
  Neuron neuron = testsupport::mixed_sign_neuron();

  SignVector first = SignVector::from_entries({1, -1, 1});
  CHECK(noisy_preactivation(solution, first, {{0}, {}}) == -3);
  CHECK(noisy_preactivation(solution, first, {{1}, {}}) == -1);
  CHECK(noisy_preactivation(solution, first, {{2}, {}}) == -1);
  CHECK(noisy_preactivation(solution, first, {{3}, {}}) == -1);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(noisy_evaluate(solution, first, {{j}, {}}) == -1);
  }

  SignVector second = SignVector::from_entries({-1, 1, -1});
  CHECK(noisy_preactivation(solution, second, {{0}, {}}) == 3);
  CHECK(noisy_preactivation(solution, second, {{3}, {}}) == 1);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(noisy_evaluate(solution, second, {{j}, {}}) == +1);
  }

  // no noise means the plain coded value
  for (const SignVector& x : enumerate_hypercube(3)) {
    CHECK(noisy_evaluate(solution, x, {}) == solution.coded_evaluate(x));
    CHECK(noisy_evaluate(solution, x, {}) == neuron.evaluate(x));
  }
}

TEST_CASE("noise patterns are validated") {
  Solution solution = mixed_parity();
  SignVector x = SignVector::from_entries({1, -1, 1});
  CHECK_THROWS_AS(noisy_evaluate(solution, x, {{1}, {1}}), domain_error);
  CHECK_THROWS_AS(noisy_evaluate(solution, x, {{4}, {}}), dimension_error);
  CHECK_THROWS_AS(noisy_evaluate(solution, x, {{1, 1}, {}}), domain_error);

  NoisySignVector noisy =
      apply_pattern(solution.encoder.encode(x), {{0}, {2}});
  CHECK(noisy[0] == 0);
  CHECK(noisy[2] == -solution.encoder.encode(x)[2]);
}

TEST_CASE("single erasures never flip the parity-coded neuron") {
  CHECK(is_ts_robust(mixed_parity(), testsupport::mixed_sign_neuron(), 1, 0));
  CHECK(is_ts_robust(mixed_parity(), testsupport::mixed_sign_neuron(), 0, 0));
}

TEST_CASE("identity solutions break under one erasure, with a witness") {
  Neuron maj = testsupport::majority3();
  Solution solution = identity_solution(maj);
  auto witness = find_ts_violation(solution, maj, 1, 0);
  REQUIRE(witness.has_value());
  // first failure in enumeration order
  CHECK(witness->input == SignVector::from_entries({1, -1, -1}));
  CHECK(witness->pattern.erasures == std::vector<std::size_t>{1});
  CHECK(witness->pattern.errors.empty());
  // and it really is a violation
  CHECK(noisy_evaluate(solution, witness->input, witness->pattern) !=
        maj.evaluate(witness->input));
}

TEST_CASE("zero-noise robustness is exactly coded agreement") {
  Neuron maj = testsupport::majority3();
  CHECK(is_ts_robust(identity_solution(maj), maj, 0, 0));
  Solution shifted =
      make_solution(Encoder::identity(3), rationals({1, 1, 1}), Rational(4));
  CHECK_FALSE(is_ts_robust(shifted, maj, 0, 0));
}

TEST_CASE("robustness radius of the running examples") {
  CHECK(robustness_radius(mixed_parity(), testsupport::mixed_sign_neuron()) ==
        1);
  Neuron maj = testsupport::majority3();
  CHECK(robustness_radius(constant_solution(maj, 4), maj) == 3);
  CHECK(robustness_radius(constant_solution(maj, 1), maj) == 0);
  CHECK(robustness_radius(identity_solution(maj), maj) == 0);
  CHECK_THROWS_AS(
      robustness_radius(
          make_solution(Encoder::identity(3), rationals({1, 1, 1}), Rational(4)),
          maj),
      domain_error);
}

TEST_CASE("robustness reports carry witnesses at the failing frontier") {
  Neuron maj = testsupport::majority3();
  RobustnessReport report = analyze_robustness(identity_solution(maj), maj);
  CHECK(report.coded_length == 3);
  CHECK(report.min_dist == 1);
  CHECK(report.relative == make_rational(1, 3));
  CHECK(report.radius == 0);
  CHECK_FALSE(report.radius_capped);
  REQUIRE(!report.witnesses.empty());
  for (const Witness& witness : report.witnesses) {
    CHECK(noisy_evaluate(identity_solution(maj), witness.input,
                         witness.pattern) != maj.evaluate(witness.input));
  }
  CHECK(report.checked_patterns > 0);
}

TEST_CASE("everything below the radius passes") {
  Rng rng(321);
  for (int sample = 0; sample < 6; ++sample) {
    std::size_t n = 1 + rng.below(3);
    BinaryNeuron binary = testsupport::random_binary_neuron(rng, n, true);
    Neuron neuron = binary.as_neuron();
    std::vector<Solution> solutions;
    solutions.push_back(parity_solution(binary));
    solutions.push_back(replicate(identity_solution(neuron), 2));
    solutions.push_back(constant_solution(neuron, 3));
    for (const Solution& solution : solutions) {
      std::size_t m = solution.coded_length();
      unsigned radius = robustness_radius(solution, neuron);
      for (unsigned t = 0; t <= m && t <= 4; ++t) {
        for (unsigned s = 0; t + s <= m && s <= 2; ++s) {
          if (t + 2 * s <= radius) {
            CHECK(is_ts_robust(solution, neuron, t, s));
          }
        }
      }
    }
  }
}

TEST_CASE("exact (t,s) robustness is not monotone in isolation") {
  // two coded coordinates that cancel each other: flipping both restores
  // the sign, flipping exactly one breaks it
  BinaryNeuron constant(SignVector::from_entries({1}), 2);
  Solution solution = parity_solution(constant);
  CHECK(solution.coded_weights == rationals({1, -1}));
  CHECK_FALSE(is_ts_robust(solution, constant.as_neuron(), 0, 1));
  CHECK(is_ts_robust(solution, constant.as_neuron(), 0, 2));
  CHECK(is_ts_robust(solution, constant.as_neuron(), 1, 1));
  // the radius-style quantification stays monotone regardless
  CHECK(robustness_radius(solution, constant.as_neuron()) == 1);
}

TEST_CASE("plain hyperplane distance") {
  CHECK(l1_distance_to_hyperplane(rationals({1, 1}), rationals({1, -1}),
                                  Rational(0)) == 0);
  CHECK(l1_distance_to_hyperplane(rationals({1, -1, 1, -1}),
                                  rationals({1, 1, -1, 1}), Rational(0)) == 2);
  CHECK(l1_distance_to_hyperplane(rationals({1, 1}), rationals({2, 1}),
                                  Rational(0)) == make_rational(3, 2));
  CHECK_THROWS_AS(l1_distance_to_hyperplane(rationals({1, 1}),
                                            rationals({0, 0}), Rational(0)),
                  degenerate_error);
}

TEST_CASE("clipped distance follows the greedy saturation") {
  auto z = rationals({1, 1});
  auto v = rationals({2, 1});
  auto far = l1_distance_to_clipped(z, v, Rational(-3));
  REQUIRE(far.has_value());
  CHECK(*far == 4);

  CHECK_FALSE(l1_distance_to_clipped(z, rationals({1, 1}), Rational(3))
                  .has_value());

  auto near = l1_distance_to_clipped(z, v, Rational(0));
  REQUIRE(near.has_value());
  CHECK(*near == make_rational(3, 2));
  CHECK(*near == l1_distance_to_hyperplane(z, v, Rational(0)));

  CHECK_THROWS_AS(l1_distance_to_clipped(rationals({2, 0}), v, Rational(0)),
                  domain_error);
}

TEST_CASE("clipped distance equals the breakpoint oracle on a grid") {
  std::vector<Rational> z_values = {Rational(-1), make_rational(-1, 2),
                                    Rational(0), make_rational(1, 2),
                                    Rational(1)};
  std::vector<Rational> v_values = {Rational(-2), Rational(0), Rational(1),
                                    Rational(3)};
  std::vector<Rational> mu_values = {Rational(-3), Rational(0),
                                     make_rational(3, 2), Rational(4)};

  for (const Rational& z0 : z_values) {
    for (const Rational& z1 : z_values) {
      for (const Rational& v0 : v_values) {
        for (const Rational& v1 : v_values) {
          if (v0 == 0 && v1 == 0) continue;
          for (const Rational& mu : mu_values) {
            std::vector<Rational> z = {z0, z1};
            std::vector<Rational> v = {v0, v1};
            auto greedy = l1_distance_to_clipped(z, v, mu);
            auto oracle = clipped_distance_oracle(z, v, mu);
            CHECK(greedy.has_value() == oracle.has_value());
            if (greedy && oracle) CHECK(*greedy == *oracle);
          }
        }
      }
    }
  }
}

TEST_CASE("clipped distance never undercuts the plain distance") {
  Rng rng(808);
  for (int sample = 0; sample < 200; ++sample) {
    std::size_t m = 1 + rng.below(4);
    std::vector<Rational> z, v;
    for (std::size_t j = 0; j < m; ++j) {
      z.push_back(make_rational(rng.in_range(-4, 4), 4));
      v.push_back(make_rational(rng.in_range(-3, 3)));
    }
    bool zero = true;
    for (const Rational& value : v) {
      if (value != 0) zero = false;
    }
    if (zero) continue;
    Rational mu = make_rational(rng.in_range(-6, 6), 2);
    auto clipped = l1_distance_to_clipped(z, v, mu);
    Rational plain = l1_distance_to_hyperplane(z, v, mu);
    if (clipped) CHECK(*clipped >= plain);
  }
}

TEST_CASE("distance criterion matches the running examples") {
  Solution parity = mixed_parity();
  Neuron neuron = testsupport::mixed_sign_neuron();
  CHECK(distance_criterion_robust(parity, neuron, 1));
  CHECK_FALSE(distance_criterion_robust(parity, neuron, 2));

  Neuron maj = testsupport::majority3();
  CHECK(distance_criterion_robust(constant_solution(maj, 4), maj, 3));
  CHECK_FALSE(distance_criterion_robust(constant_solution(maj, 4), maj, 4));
}

TEST_CASE("the distance criterion is conservative when one class is empty") {
  // constant +1 neuron: every encoded point is positive, and the positive
  // class only touches the clipped hyperplane at a cube corner it cannot
  // cross. The pattern oracle proves robustness the criterion denies; the
  // oracle is the ground truth.
  BinaryNeuron constant(SignVector::from_entries({1, 1}), -3);
  Solution solution = parity_solution(constant);
  Neuron plain = constant.as_neuron();
  for (unsigned cost = 0; cost <= 4; ++cost) {
    for (unsigned s = 0; 2 * s <= cost; ++s) {
      CHECK(is_ts_robust(solution, plain, cost - 2 * s, s));
    }
  }
  CHECK_FALSE(distance_criterion_robust(solution, plain, 3));
  CHECK(distance_criterion_robust(solution, plain, 2));
}

TEST_CASE("criterion and oracle agree across solution families") {
  Rng rng(99);
  for (int sample = 0; sample < 10; ++sample) {
    std::size_t n = 1 + rng.below(3);
    BinaryNeuron binary = testsupport::random_binary_neuron(rng, n, false);
    Neuron neuron = binary.as_neuron();
    std::vector<Solution> solutions;
    solutions.push_back(parity_solution(binary));
    solutions.push_back(constant_solution(neuron, 2 + rng.below(3)));
    solutions.push_back(replicate(parity_solution(binary), 2));
    for (const Solution& solution : solutions) {
      unsigned radius = robustness_radius(solution, neuron);
      for (unsigned r = 1; r <= 4; ++r) {
        bool oracle = radius >= r;
        CHECK(distance_criterion_robust(solution, neuron, r) == oracle);
      }
    }
  }
}

TEST_CASE("minimum distance of the stock constructions") {
  Rng rng(1234);
  for (std::size_t n = 1; n <= 8; ++n) {
    BinaryNeuron binary = testsupport::random_binary_neuron(rng, n, false);
    CHECK(min_distance(parity_solution(binary)) == 2);
    CHECK(min_distance(identity_solution(binary.as_neuron())) == 1);
  }
}

TEST_CASE("joint distance over a shared encoder") {
  Encoder parity = Encoder::parity(4);
  Rng rng(5150);
  std::vector<std::pair<std::vector<Rational>, Rational>> pairs;
  for (int i = 0; i < 3; ++i) {
    BinaryNeuron neuron = testsupport::random_binary_neuron(rng, 4, false);
    Solution solution = parity_solution(neuron);
    pairs.emplace_back(solution.coded_weights, solution.coded_bias);
  }
  CHECK(joint_min_distance(parity, pairs) == 2);

  Solution single = parity_solution(testsupport::random_binary_neuron(rng, 4, false));
  std::vector<std::pair<std::vector<Rational>, Rational>> one = {
      {single.coded_weights, single.coded_bias}};
  CHECK(joint_min_distance(parity, one) == min_distance(single));

  // a pair whose hyperplane passes through an encoded point drags the
  // joint distance to zero
  Encoder parity2 = Encoder::parity(2);
  std::vector<std::pair<std::vector<Rational>, Rational>> with_bad = {
      {rationals({1, 1, 1}), Rational(3)}};  // E(1,1) lands on the plane
  CHECK(joint_min_distance(parity2, with_bad) == 0);

  CHECK_THROWS_AS(joint_min_distance(parity, {}), domain_error);
}

TEST_CASE("budget overruns raise resource errors") {
  Neuron maj = testsupport::majority3();
  CHECK_THROWS_AS(find_ts_violation(identity_solution(maj), maj, 1, 0, 2),
                  resource_error);
  CHECK_THROWS_AS(robustness_radius(identity_solution(maj), maj, 4),
                  resource_error);
}
