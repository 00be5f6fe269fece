#include "neuroncode/rational.hpp"

#include <cctype>
#include <limits>

#include "neuroncode/errors.hpp"

namespace neuroncode {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// [+-]?digits, returned as (sign, digit string)
std::pair<int, std::string> split_signed_integer(std::string_view s,
                                                 std::string_view original) {
  int sign = 1;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    if (s.front() == '-') sign = -1;
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw parse_error("malformed rational literal: '" + std::string(original) +
                      "'");
  }
  return {sign, std::string(s)};
}

Integer pow10(std::size_t exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

}  // namespace

Rational make_rational(long long numerator, long long denominator) {
  if (denominator == 0) throw domain_error("zero denominator");
  Integer num(static_cast<long>(numerator));
  Integer den(static_cast<long>(denominator));
  Rational value{num, den};
  value.canonicalize();
  return value;
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  if (s.empty()) throw parse_error("empty rational literal");
  if (s.find_first_of("eE") != std::string_view::npos) {
    throw parse_error("scientific notation is not accepted: '" +
                      std::string(text) + "'");
  }

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto [nsign, ndigits] = split_signed_integer(s.substr(0, slash), text);
    auto [dsign, ddigits] = split_signed_integer(s.substr(slash + 1), text);
    Integer num(ndigits, 10);
    Integer den(ddigits, 10);
    if (den == 0) {
      throw parse_error("zero denominator: '" + std::string(text) + "'");
    }
    Rational value(nsign * dsign < 0 ? Integer(-num) : num, den);
    value.canonicalize();
    return value;
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view head = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    int sign = 1;
    if (!head.empty() && (head.front() == '+' || head.front() == '-')) {
      if (head.front() == '-') sign = -1;
      head.remove_prefix(1);
    }
    if ((head.empty() && frac.empty()) || (!head.empty() && !all_digits(head)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw parse_error("malformed rational literal: '" + std::string(text) +
                        "'");
    }
    std::string digits = std::string(head) + std::string(frac);
    if (digits.empty()) {
      throw parse_error("malformed rational literal: '" + std::string(text) +
                        "'");
    }
    Integer num(digits, 10);
    if (sign < 0) num = -num;
    Rational value(num, pow10(frac.size()));
    value.canonicalize();
    return value;
  }

  auto [sign, digits] = split_signed_integer(s, text);
  Integer num(digits, 10);
  if (sign < 0) num = -num;
  return Rational(num);
}

std::string to_fraction_string(const Rational& value) {
  return value.get_str();
}

bool is_integral(const Rational& value) {
  return value.get_den() == 1;
}

long long to_long(const Rational& value) {
  if (!is_integral(value)) throw domain_error("value is not an integer");
  const Integer& num = value.get_num();
  if (!num.fits_slong_p()) throw domain_error("integer out of range");
  return num.get_si();
}

double to_double(const Rational& value) {
  return value.get_d();
}

}  // namespace neuroncode
