#include "neuroncode/robustness.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "neuroncode/errors.hpp"

namespace neuroncode {
namespace {

// saturating binomial coefficient, clamped at `limit`
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t limit) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(result);
}

// lexicographic size-k index combinations out of {0,...,m-1};
// visit returns false to stop early
template <typename Visit>
bool for_each_combination(std::size_t m, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> indices(k);
  std::iota(indices.begin(), indices.end(), 0);
  if (k > m) return true;
  while (true) {
    if (!visit(std::as_const(indices))) return false;
    // advance to the next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (indices[i] != i + m - k) {
        ++indices[i];
        for (std::size_t j = i + 1; j < k; ++j) indices[j] = indices[j - 1] + 1;
        break;
      }
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

int scalar_sign(long long value) { return value >= 0 ? +1 : -1; }
int scalar_sign(const Rational& value) { return sign_of(value); }

// per-coordinate products E(x)_j * v_j and their sum minus the bias
template <typename Scalar>
struct PointView {
  std::vector<Scalar> contributions;
  Scalar base;  // sum of contributions - bias
};

template <typename Scalar>
PointView<Scalar> make_point_view(const SignVector& coded,
                                  const std::vector<Scalar>& weights,
                                  const Scalar& bias) {
  PointView<Scalar> view;
  view.contributions.resize(weights.size());
  view.base = -bias;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    view.contributions[j] = coded.is_negative(j) ? Scalar(-weights[j])
                                                 : weights[j];
    view.base += view.contributions[j];
  }
  return view;
}

// first failing (erasures, errors) pair for one input point, or nullopt
template <typename Scalar>
std::optional<NoisePattern> find_point_violation(const PointView<Scalar>& view,
                                                 int expected, unsigned t,
                                                 unsigned s) {
  std::size_t m = view.contributions.size();
  std::optional<NoisePattern> found;
  std::vector<std::size_t> complement;
  for_each_combination(m, t, [&](const std::vector<std::size_t>& erasures) {
    Scalar after_erasures = view.base;
    for (std::size_t j : erasures) after_erasures -= view.contributions[j];
    if (s == 0) {
      if (scalar_sign(after_erasures) != expected) {
        found = NoisePattern{erasures, {}};
        return false;
      }
      return true;
    }
    complement.clear();
    std::size_t next = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (next < erasures.size() && erasures[next] == j) {
        ++next;
      } else {
        complement.push_back(j);
      }
    }
    bool keep_going = for_each_combination(
        complement.size(), s, [&](const std::vector<std::size_t>& picks) {
          Scalar value = after_erasures;
          for (std::size_t p : picks) value -= 2 * view.contributions[complement[p]];
          if (scalar_sign(value) != expected) {
            std::vector<std::size_t> errors;
            errors.reserve(picks.size());
            for (std::size_t p : picks) errors.push_back(complement[p]);
            found = NoisePattern{erasures, std::move(errors)};
            return false;
          }
          return true;
        });
    return keep_going;
  });
  return found;
}

// Integer view of a solution when v and mu are integers of safe magnitude;
// the common case for parity-style constructions, and much faster to scan.
struct IntegerSolutionView {
  std::vector<long long> weights;
  long long bias;
};

std::optional<IntegerSolutionView> integer_view(const Solution& solution) {
  if (!is_integral(solution.coded_bias)) return std::nullopt;
  Integer reach = abs(solution.coded_bias.get_num());
  for (const Rational& v : solution.coded_weights) {
    if (!is_integral(v)) return std::nullopt;
    reach += abs(v.get_num());
  }
  // 2*reach bounds every partial signed sum
  if (mpz_sizeinbase(reach.get_mpz_t(), 2) > 55) return std::nullopt;
  IntegerSolutionView view;
  view.weights.reserve(solution.coded_weights.size());
  for (const Rational& v : solution.coded_weights) {
    view.weights.push_back(to_long(v));
  }
  view.bias = to_long(solution.coded_bias);
  return view;
}

std::uint64_t pattern_count(std::size_t m, unsigned t, unsigned s,
                            std::uint64_t limit) {
  std::uint64_t erase_ways = binomial_capped(m, t, limit);
  if (erase_ways == 0) return 0;
  std::uint64_t error_ways = binomial_capped(m - t, s, limit);
  if (error_ways == 0) return 0;
  unsigned __int128 total =
      static_cast<unsigned __int128>(erase_ways) * error_ways;
  if (total > limit) return limit + 1;
  return static_cast<std::uint64_t>(total);
}

std::optional<Witness> find_ts_violation_counted(const Solution& solution,
                                                 const Neuron& neuron,
                                                 unsigned t, unsigned s,
                                                 std::uint64_t budget,
                                                 std::uint64_t& consumed) {
  if (solution.input_dimension() != neuron.dimension()) {
    throw dimension_error("solution and neuron dimensions differ");
  }
  std::size_t m = solution.coded_length();
  std::size_t n = solution.input_dimension();
  if (t + s > m) return std::nullopt;  // no pattern exists; vacuously robust

  if (n > 63) {
    throw resource_error("input dimension too large to enumerate");
  }
  std::uint64_t per_point = pattern_count(m, t, s, budget);
  unsigned __int128 total = static_cast<unsigned __int128>(per_point) << n;
  if (consumed + total > budget) {
    throw resource_error(
        "pattern enumeration exceeds the configured budget; raise it or use "
        "the distance criterion");
  }
  consumed += static_cast<std::uint64_t>(total);

  std::optional<IntegerSolutionView> fast = integer_view(solution);
  std::uint64_t points = 1ull << n;
  for (std::uint64_t index = 0; index < points; ++index) {
    SignVector x = point_from_index(n, index);
    int expected = neuron.evaluate(x);
    SignVector coded = solution.encoder.encode(x);
    std::optional<NoisePattern> pattern;
    if (fast) {
      auto view = make_point_view<long long>(coded, fast->weights, fast->bias);
      pattern = find_point_violation(view, expected, t, s);
    } else {
      auto view = make_point_view<Rational>(coded, solution.coded_weights,
                                            solution.coded_bias);
      pattern = find_point_violation(view, expected, t, s);
    }
    if (pattern) return Witness{std::move(x), std::move(*pattern)};
  }
  return std::nullopt;
}

std::optional<Rational> min_optional(std::optional<Rational> current,
                                     std::optional<Rational> candidate) {
  if (!candidate) return current;
  if (!current || *candidate < *current) return candidate;
  return current;
}

struct RadiusScan {
  unsigned radius = 0;
  bool capped = false;
  std::vector<Witness> witnesses;  // per failing (t,s) at radius + 1
  std::uint64_t checked = 0;
};

RadiusScan scan_radius(const Solution& solution, const Neuron& neuron,
                       std::uint64_t budget) {
  std::uint64_t consumed = 0;
  if (find_ts_violation_counted(solution, neuron, 0, 0, budget, consumed)) {
    throw domain_error(
        "coded neuron disagrees with the target; robustness radius undefined");
  }
  std::size_t m = solution.coded_length();
  RadiusScan scan;
  for (unsigned r = 1; r <= m; ++r) {
    // pairs with t + 2s == r are exactly the ones not yet checked
    std::vector<Witness> failures;
    for (unsigned s = 0; 2 * s <= r; ++s) {
      unsigned t = r - 2 * s;
      auto witness =
          find_ts_violation_counted(solution, neuron, t, s, budget, consumed);
      if (witness) failures.push_back(std::move(*witness));
    }
    if (!failures.empty()) {
      scan.radius = r - 1;
      scan.witnesses = std::move(failures);
      scan.checked = consumed;
      return scan;
    }
  }
  scan.radius = static_cast<unsigned>(m);
  scan.capped = true;
  scan.checked = consumed;
  return scan;
}

}  // namespace

void NoisePattern::validate(std::size_t coded_length) const {
  auto check_set = [coded_length](const std::vector<std::size_t>& set,
                                  const char* label) {
    std::vector<std::size_t> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] >= coded_length) {
        throw dimension_error(std::string(label) + " index out of range");
      }
      if (i > 0 && sorted[i] == sorted[i - 1]) {
        throw domain_error(std::string(label) + " indices repeat");
      }
    }
  };
  check_set(erasures, "erasure");
  check_set(errors, "error");
  for (std::size_t e : erasures) {
    if (std::find(errors.begin(), errors.end(), e) != errors.end()) {
      throw domain_error("erasure and error sets must be disjoint");
    }
  }
}

std::string NoisePattern::to_string() const {
  std::ostringstream out;
  out << "erase{";
  for (std::size_t i = 0; i < erasures.size(); ++i) {
    if (i > 0) out << ',';
    out << erasures[i];
  }
  out << "} flip{";
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i > 0) out << ',';
    out << errors[i];
  }
  out << '}';
  return out.str();
}

NoisySignVector apply_pattern(const SignVector& coded,
                              const NoisePattern& pattern) {
  pattern.validate(coded.size());
  NoisySignVector noisy(coded);
  for (std::size_t j : pattern.errors) noisy.negate_at(j);
  for (std::size_t j : pattern.erasures) noisy.erase_at(j);
  return noisy;
}

Rational noisy_preactivation(const Solution& solution, const SignVector& x,
                             const NoisePattern& pattern) {
  SignVector coded = solution.encoder.encode(x);
  NoisySignVector noisy = apply_pattern(coded, pattern);
  Rational sum = -solution.coded_bias;
  for (std::size_t j = 0; j < solution.coded_weights.size(); ++j) {
    int entry = noisy[j];
    if (entry == 1) {
      sum += solution.coded_weights[j];
    } else if (entry == -1) {
      sum -= solution.coded_weights[j];
    }
  }
  return sum;
}

int noisy_evaluate(const Solution& solution, const SignVector& x,
                   const NoisePattern& pattern) {
  return sign_of(noisy_preactivation(solution, x, pattern));
}

std::string Witness::to_string() const {
  return "input " + input.to_string() + " with " + pattern.to_string();
}

std::optional<Witness> find_ts_violation(const Solution& solution,
                                         const Neuron& neuron, unsigned t,
                                         unsigned s, std::uint64_t budget) {
  std::uint64_t consumed = 0;
  return find_ts_violation_counted(solution, neuron, t, s, budget, consumed);
}

bool is_ts_robust(const Solution& solution, const Neuron& neuron, unsigned t,
                  unsigned s, std::uint64_t budget) {
  return !find_ts_violation(solution, neuron, t, s, budget).has_value();
}

unsigned robustness_radius(const Solution& solution, const Neuron& neuron,
                           std::uint64_t budget) {
  return scan_radius(solution, neuron, budget).radius;
}

Rational l1_distance_to_hyperplane(std::span<const Rational> z,
                                   std::span<const Rational> v,
                                   const Rational& mu) {
  if (z.size() != v.size()) {
    throw dimension_error("point and normal lengths differ");
  }
  Rational scale = 0;
  Rational gap = -mu;
  for (std::size_t j = 0; j < v.size(); ++j) {
    gap += z[j] * v[j];
    Rational magnitude = abs(v[j]);
    if (magnitude > scale) scale = magnitude;
  }
  if (scale == 0) throw degenerate_error("hyperplane normal is zero");
  return abs(gap) / scale;
}

std::optional<Rational> l1_distance_to_clipped(std::span<const Rational> z,
                                               std::span<const Rational> v,
                                               const Rational& mu) {
  if (z.size() != v.size()) {
    throw dimension_error("point and normal lengths differ");
  }
  bool nonzero = false;
  Rational gap = -mu;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (abs(z[j]) > 1) {
      throw domain_error("point must lie inside the closed cube [-1,1]^m");
    }
    if (v[j] != 0) nonzero = true;
    gap += z[j] * v[j];
  }
  if (!nonzero) throw degenerate_error("hyperplane normal is zero");
  if (gap == 0) return Rational(0);

  // spend movement on the coordinate with the largest |v| first; ties by
  // lowest index (order-independent among ties)
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    Rational ma = abs(v[a]);
    Rational mb = abs(v[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });

  bool reduce = gap > 0;  // need the dot product moved down
  Rational remaining = abs(gap);
  Rational moved = 0;
  for (std::size_t j : order) {
    if (v[j] == 0) break;
    Rational magnitude = abs(v[j]);
    // movement available toward the cube face that shrinks the gap
    bool toward_minus_one = (v[j] > 0) == reduce;
    Rational capacity =
        toward_minus_one ? Rational(z[j] + 1) : Rational(1 - z[j]);
    Rational reduction = magnitude * capacity;
    if (reduction >= remaining) {
      moved += remaining / magnitude;
      return moved;
    }
    moved += capacity;
    remaining -= reduction;
  }
  return std::nullopt;  // total capacity short of the gap: unreachable
}

Rational min_distance(const Solution& solution, std::size_t cap) {
  std::size_t n = solution.input_dimension();
  std::uint64_t points = hypercube_size(n, cap);

  Rational scale = 0;
  for (const Rational& v : solution.coded_weights) {
    Rational magnitude = abs(v);
    if (magnitude > scale) scale = magnitude;
  }
  if (scale == 0) throw degenerate_error("coded weights are all zero");

  std::optional<IntegerSolutionView> fast = integer_view(solution);
  if (fast) {
    long long best = 0;
    bool first = true;
    for (std::uint64_t index = 0; index < points; ++index) {
      SignVector coded =
          solution.encoder.encode(point_from_index(n, index));
      long long sum = -fast->bias;
      for (std::size_t j = 0; j < fast->weights.size(); ++j) {
        sum += coded.is_negative(j) ? -fast->weights[j] : fast->weights[j];
      }
      long long margin = sum < 0 ? -sum : sum;
      if (first || margin < best) {
        best = margin;
        first = false;
        if (best == 0) break;
      }
    }
    return Rational(static_cast<long>(best)) / scale;
  }

  Rational best = 0;
  bool first = true;
  for (std::uint64_t index = 0; index < points; ++index) {
    Rational margin =
        abs(solution.coded_preactivation(point_from_index(n, index)));
    if (first || margin < best) {
      best = margin;
      first = false;
      if (best == 0) break;
    }
  }
  return best / scale;
}

Rational relative_distance(const Solution& solution, std::size_t cap) {
  return min_distance(solution, cap) /
         Rational(static_cast<unsigned long>(solution.coded_length()));
}

Rational joint_min_distance(
    const Encoder& encoder,
    std::span<const std::pair<std::vector<Rational>, Rational>> pairs,
    std::size_t cap) {
  if (pairs.empty()) {
    throw domain_error("joint distance needs at least one coded neuron");
  }
  std::optional<Rational> best;
  for (const auto& [weights, bias] : pairs) {
    Solution solution = make_solution(encoder, weights, bias);
    Rational d = min_distance(solution, cap);
    if (!best || d < *best) best = d;
  }
  return *best;
}

ClassDistances clipped_class_distances(const Solution& solution,
                                       const Neuron& neuron,
                                       std::size_t cap) {
  if (solution.input_dimension() != neuron.dimension()) {
    throw dimension_error("solution and neuron dimensions differ");
  }
  ClassDistances result;
  result.agreement = true;
  std::size_t n = neuron.dimension();
  std::vector<Rational> z(solution.coded_length());
  for (const SignVector& x : enumerate_hypercube(n, cap)) {
    SignVector coded = solution.encoder.encode(x);
    for (std::size_t j = 0; j < z.size(); ++j) {
      z[j] = coded.is_negative(j) ? -1 : 1;
    }
    std::optional<Rational> d =
        l1_distance_to_clipped(z, solution.coded_weights, solution.coded_bias);
    int label = neuron.evaluate(x);
    if (label != solution.coded_evaluate(x)) result.agreement = false;
    if (label == 1) {
      result.positive = min_optional(std::move(result.positive), std::move(d));
    } else {
      result.negative = min_optional(std::move(result.negative), std::move(d));
    }
  }
  return result;
}

bool distance_criterion_robust(const Solution& solution, const Neuron& neuron,
                               unsigned r, std::size_t cap) {
  ClassDistances distances = clipped_class_distances(solution, neuron, cap);
  if (!distances.agreement) return false;
  if (r == 0) return true;
  Rational radius(static_cast<unsigned long>(r));
  if (distances.positive && radius > *distances.positive) return false;
  if (distances.negative && radius >= *distances.negative) return false;
  return true;
}

RobustnessReport analyze_robustness(const Solution& solution,
                                    const Neuron& neuron,
                                    std::uint64_t budget, std::size_t cap) {
  auto start = std::chrono::steady_clock::now();
  RobustnessReport report;
  report.coded_length = solution.coded_length();
  report.min_dist = min_distance(solution, cap);
  report.relative = report.min_dist /
                    Rational(static_cast<unsigned long>(report.coded_length));
  RadiusScan scan = scan_radius(solution, neuron, budget);
  report.radius = scan.radius;
  report.radius_capped = scan.capped;
  report.witnesses = std::move(scan.witnesses);
  report.checked_patterns = scan.checked;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace neuroncode
