#include "pdsched/core/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "pdsched/core/errors.hpp"

namespace pdsched {

std::string_view to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::kExact ? "exact" : "float";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Rational parse_integer(std::string_view text, std::string_view whole) {
  std::string_view body = text;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  if (!all_digits(body)) {
    throw Error(ErrorCode::kInvalidInput,
                "not a number: '" + std::string(whole) + "'");
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  return Rational(mpz_class(s, 10));
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  Rational r(p);
  if (e < 0) r = 1 / r;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::kInvalidInput, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(text.substr(0, slash), whole);
    Rational den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorCode::kInvalidInput, "zero denominator");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    Rational ex = parse_integer(exp_text, whole);
    if (!ex.get_den().fits_ulong_p() || abs(ex) > 4000) {
      throw Error(ErrorCode::kInvalidInput, "exponent out of range");
    }
    exponent = ex.get_num().get_si();
    text = text.substr(0, e);
  }

  Rational value;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    std::string_view int_digits = int_part;
    if (!int_digits.empty() && (int_digits[0] == '-' || int_digits[0] == '+')) {
      int_digits.remove_prefix(1);
    }
    if ((!int_digits.empty() && !all_digits(int_digits)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_digits.empty() && frac_part.empty())) {
      throw Error(ErrorCode::kInvalidInput,
                  "not a number: '" + std::string(whole) + "'");
    }
    std::string digits = std::string(int_digits) + std::string(frac_part);
    value = Rational(mpz_class(digits.empty() ? "0" : digits, 10)) *
            pow10(-static_cast<long>(frac_part.size()));
    if (negative) value = -value;
  } else {
    value = parse_integer(text, whole);
  }
  if (exponent != 0) value *= pow10(exponent);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidInput, "non-finite value in exact mode");
  }
  return Rational(value);
}

bool close_relative(double a, double b, double rel) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel * scale;
}

}  // namespace pdsched
