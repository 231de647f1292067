#ifndef PDSCHED_CORE_COST_FUNCTION_HPP_
#define PDSCHED_CORE_COST_FUNCTION_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdsched/core/numeric.hpp"

namespace pdsched {

enum class Shape { kLinear, kPower, kLog, kPiecewiseLinear };
enum class CostClass { kLinear, kConvex, kConcave, kGeneral };

std::string_view to_string(Shape shape);
std::string_view to_string(CostClass cls);

// Parameters of a cost function g with g(0) = 0, non-decreasing on [0, inf).
// Shapes: a*t, t^c, ln(1+t), and continuous piecewise-linear through the
// given points (extended past the last point with the last slope).
struct CostSpec {
  Shape shape = Shape::kLinear;
  Rational slope = 1;
  Rational exponent = 1;
  std::vector<std::pair<Rational, Rational>> points;

  static CostSpec linear(const Rational& a);
  static CostSpec power(const Rational& c);
  static CostSpec log1p();
  static CostSpec piecewise_linear(
      std::vector<std::pair<Rational, Rational>> points);

  CostClass cost_class() const;
  bool is_convex() const;
  bool is_concave() const;
  // True when value, antiderivative and the difference queries all have
  // rational closed forms.
  bool exact_capable() const;
  std::string describe() const;

  bool operator==(const CostSpec& other) const;
};

template <class Num>
class CostFunction {
 public:
  explicit CostFunction(CostSpec spec);

  const CostSpec& spec() const { return spec_; }

  // g(x); 0 for x <= 0.
  Num value(const Num& x) const;
  // Right derivative g'(x). Throws DerivativeSingularity at x <= 0 when the
  // derivative is unbounded there.
  Num derivative(const Num& x) const;
  // Integral of g over [0, x]; 0 for x <= 0.
  Num antiderivative(const Num& x) const;
  // Integral of (alpha + beta*u) g'(u) over [u0, u1], 0 <= u0 <= u1.
  Num moment(const Num& alpha, const Num& beta, const Num& u0,
             const Num& u1) const;

  // inf over t >= from of g(t - r1) - g(t - r2), for r1 <= r2.
  Num min_shift_difference(const Num& r1, const Num& r2,
                           const Num& from) const;

  // Points x > 0 where g is not smooth (piecewise-linear knots).
  const std::vector<Num>& knots() const { return knots_; }

  // A point t > max(h1, h2) where d/dt [s1 g(t-h1) - s2 g(t-h2)] = 0, if
  // one exists. The difference is monotone on either side of it (between
  // knots). May be approximate for irrational roots.
  std::optional<Num> stationary_point(const Num& s1, const Num& h1,
                                      const Num& s2, const Num& h2) const;

  // True when s1 g(t-h1) - s2 g(t-h2) is affine between consecutive knots
  // for t >= max(h1, h2).
  bool affine_difference(const Num& s1, const Num& s2) const;

 private:
  Num pl_value(const Num& x) const;
  Num pl_slope_at(const Num& x) const;

  CostSpec spec_;
  Num slope_{};
  Num exponent_{};
  bool integer_exponent_ = false;
  unsigned long int_exponent_ = 0;
  std::vector<Num> xs_;
  std::vector<Num> ys_;
  std::vector<Num> slopes_;
  std::vector<Num> knots_;
};

// Integer power of a rational.
Rational rational_pow(const Rational& base, unsigned long exponent);

extern template class CostFunction<Rational>;
extern template class CostFunction<double>;

}  // namespace pdsched

#endif  // PDSCHED_CORE_COST_FUNCTION_HPP_
