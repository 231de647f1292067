#ifndef PDSCHED_CORE_NUMERIC_HPP_
#define PDSCHED_CORE_NUMERIC_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>

namespace pdsched {

using Rational = mpq_class;

enum class ArithmeticMode { kExact, kFloat };

std::string_view to_string(ArithmeticMode mode);

// Absolute tolerance applied to every comparison in float mode.
inline constexpr double kTolerance = 1e-9;

// Accepts "3", "-2", "0.25", "1e-3", "7/4".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);
std::string format_double(double value);

Rational rational_from_double(double value);

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

template <class Num>
constexpr bool kIsExact = std::is_same_v<Num, Rational>;

template <class Num>
constexpr ArithmeticMode mode_of() {
  return kIsExact<Num> ? ArithmeticMode::kExact : ArithmeticMode::kFloat;
}

template <class Num>
Num from_rational(const Rational& value) {
  if constexpr (kIsExact<Num>) {
    return value;
  } else {
    return value.get_d();
  }
}

template <class Num>
Num from_double(double value) {
  if constexpr (kIsExact<Num>) {
    return rational_from_double(value);
  } else {
    return value;
  }
}

inline std::string format_num(const Rational& value) {
  return format_rational(value);
}
inline std::string format_num(double value) { return format_double(value); }

// Comparisons: exact for rationals, tolerance-based for doubles.
inline bool num_eq(const Rational& a, const Rational& b) { return a == b; }
inline bool num_eq(double a, double b) {
  double d = a - b;
  return d <= kTolerance && d >= -kTolerance;
}
inline bool num_le(const Rational& a, const Rational& b) { return a <= b; }
inline bool num_le(double a, double b) { return a <= b + kTolerance; }
inline bool num_lt(const Rational& a, const Rational& b) { return a < b; }
inline bool num_lt(double a, double b) { return a < b - kTolerance; }

inline const Rational& num_max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}
inline double num_max(double a, double b) { return a < b ? b : a; }
inline const Rational& num_min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline double num_min(double a, double b) { return b < a ? b : a; }

// Relative-or-absolute closeness used for float identities.
bool close_relative(double a, double b, double rel);

}  // namespace pdsched

#endif  // PDSCHED_CORE_NUMERIC_HPP_
