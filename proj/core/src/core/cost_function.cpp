#include "pdsched/core/cost_function.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pdsched/core/errors.hpp"

namespace pdsched {

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::kLinear: return "linear";
    case Shape::kPower: return "power";
    case Shape::kLog: return "log";
    case Shape::kPiecewiseLinear: return "piecewise_linear";
  }
  return "unknown";
}

std::string_view to_string(CostClass cls) {
  switch (cls) {
    case CostClass::kLinear: return "linear";
    case CostClass::kConvex: return "convex";
    case CostClass::kConcave: return "concave";
    case CostClass::kGeneral: return "general";
  }
  return "unknown";
}

Rational rational_pow(const Rational& base, unsigned long exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

CostSpec CostSpec::linear(const Rational& a) {
  if (a <= 0) throw Error(ErrorCode::kInvalidInput, "linear slope must be > 0");
  CostSpec s;
  s.shape = Shape::kLinear;
  s.slope = a;
  return s;
}

CostSpec CostSpec::power(const Rational& c) {
  if (c <= 0) throw Error(ErrorCode::kInvalidInput, "exponent must be > 0");
  CostSpec s;
  s.shape = Shape::kPower;
  s.exponent = c;
  return s;
}

CostSpec CostSpec::log1p() {
  CostSpec s;
  s.shape = Shape::kLog;
  return s;
}

CostSpec CostSpec::piecewise_linear(
    std::vector<std::pair<Rational, Rational>> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kInvalidInput,
                "piecewise-linear cost needs at least two points");
  }
  if (points[0].first != 0 || points[0].second != 0) {
    throw Error(ErrorCode::kInvalidInput,
                "piecewise-linear cost must start at (0,0)");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].first <= points[i - 1].first) {
      throw Error(ErrorCode::kInvalidInput,
                  "piecewise-linear x coordinates must increase strictly");
    }
    if (points[i].second < points[i - 1].second) {
      throw Error(ErrorCode::kInvalidInput,
                  "piecewise-linear cost must be non-decreasing");
    }
  }
  CostSpec s;
  s.shape = Shape::kPiecewiseLinear;
  s.points = std::move(points);
  return s;
}

CostClass CostSpec::cost_class() const {
  switch (shape) {
    case Shape::kLinear:
      return CostClass::kLinear;
    case Shape::kPower:
      if (exponent == 1) return CostClass::kLinear;
      return exponent > 1 ? CostClass::kConvex : CostClass::kConcave;
    case Shape::kLog:
      return CostClass::kConcave;
    case Shape::kPiecewiseLinear: {
      bool up = true, down = true;
      Rational prev;
      for (std::size_t i = 1; i < points.size(); ++i) {
        Rational s = (points[i].second - points[i - 1].second) /
                     (points[i].first - points[i - 1].first);
        if (i > 1) {
          if (s < prev) up = false;
          if (s > prev) down = false;
        }
        prev = s;
      }
      if (up && down) return CostClass::kLinear;
      if (up) return CostClass::kConvex;
      if (down) return CostClass::kConcave;
      return CostClass::kGeneral;
    }
  }
  return CostClass::kGeneral;
}

bool CostSpec::is_convex() const {
  CostClass c = cost_class();
  return c == CostClass::kLinear || c == CostClass::kConvex;
}

bool CostSpec::is_concave() const {
  CostClass c = cost_class();
  return c == CostClass::kLinear || c == CostClass::kConcave;
}

bool CostSpec::exact_capable() const {
  switch (shape) {
    case Shape::kLinear:
    case Shape::kPiecewiseLinear:
      return true;
    case Shape::kPower:
      return exponent.get_den() == 1;
    case Shape::kLog:
      return false;
  }
  return false;
}

std::string CostSpec::describe() const {
  std::ostringstream os;
  switch (shape) {
    case Shape::kLinear:
      os << format_rational(slope) << "*t";
      break;
    case Shape::kPower:
      os << "t^" << format_rational(exponent);
      break;
    case Shape::kLog:
      os << "ln(1+t)";
      break;
    case Shape::kPiecewiseLinear:
      os << "pl[";
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) os << ' ';
        os << '(' << format_rational(points[i].first) << ','
           << format_rational(points[i].second) << ')';
      }
      os << ']';
      break;
  }
  return os.str();
}

bool CostSpec::operator==(const CostSpec& other) const {
  if (shape != other.shape) return false;
  switch (shape) {
    case Shape::kLinear: return slope == other.slope;
    case Shape::kPower: return exponent == other.exponent;
    case Shape::kLog: return true;
    case Shape::kPiecewiseLinear: return points == other.points;
  }
  return false;
}

namespace {

template <class Num>
Num num_pow(const Num& base, const Num& exponent, bool integer_exponent,
            unsigned long int_exponent) {
  if constexpr (kIsExact<Num>) {
    (void)exponent;
    (void)integer_exponent;
    return rational_pow(base, int_exponent);
  } else {
    if (integer_exponent && int_exponent <= 4) {
      double r = 1;
      for (unsigned long i = 0; i < int_exponent; ++i) r *= base;
      return r;
    }
    return std::pow(base, exponent);
  }
}

}  // namespace

template <class Num>
CostFunction<Num>::CostFunction(CostSpec spec) : spec_(std::move(spec)) {
  if constexpr (kIsExact<Num>) {
    if (!spec_.exact_capable()) {
      throw Error(ErrorCode::kUnsupportedInExactMode,
                  "cost " + spec_.describe() + " has no rational closed form");
    }
  }
  slope_ = from_rational<Num>(spec_.slope);
  exponent_ = from_rational<Num>(spec_.exponent);
  integer_exponent_ = spec_.exponent.get_den() == 1;
  if (integer_exponent_ && spec_.exponent.get_num().fits_ulong_p()) {
    int_exponent_ = spec_.exponent.get_num().get_ui();
  } else {
    integer_exponent_ = false;
  }
  if (spec_.shape == Shape::kPiecewiseLinear) {
    for (const auto& [x, y] : spec_.points) {
      xs_.push_back(from_rational<Num>(x));
      ys_.push_back(from_rational<Num>(y));
    }
    for (std::size_t i = 1; i < spec_.points.size(); ++i) {
      Rational s = (spec_.points[i].second - spec_.points[i - 1].second) /
                   (spec_.points[i].first - spec_.points[i - 1].first);
      slopes_.push_back(from_rational<Num>(s));
    }
    for (std::size_t i = 1; i + 1 < xs_.size(); ++i) knots_.push_back(xs_[i]);
  }
}

template <class Num>
Num CostFunction<Num>::pl_slope_at(const Num& x) const {
  // Slope of the piece containing [x, x+).
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    if (x < xs_[i + 1]) return slopes_[i];
  }
  return slopes_.back();
}

template <class Num>
Num CostFunction<Num>::pl_value(const Num& x) const {
  std::size_t i = 0;
  while (i + 2 < xs_.size() && x >= xs_[i + 1]) ++i;
  Num dx = x - xs_[i];
  Num v = ys_[i] + slopes_[i] * dx;
  return v;
}

template <class Num>
Num CostFunction<Num>::value(const Num& x) const {
  if (x <= 0) return Num(0);
  switch (spec_.shape) {
    case Shape::kLinear: {
      Num v = slope_ * x;
      return v;
    }
    case Shape::kPower:
      return num_pow<Num>(x, exponent_, integer_exponent_, int_exponent_);
    case Shape::kLog:
      if constexpr (!kIsExact<Num>) return std::log1p(x);
      break;
    case Shape::kPiecewiseLinear:
      return pl_value(x);
  }
  throw Error(ErrorCode::kUnsupportedInExactMode, "log in exact mode");
}

template <class Num>
Num CostFunction<Num>::derivative(const Num& x) const {
  Num y = x < 0 ? Num(0) : x;
  switch (spec_.shape) {
    case Shape::kLinear:
      return slope_;
    case Shape::kPower: {
      if (y == 0) {
        if (spec_.exponent < 1) {
          throw Error(ErrorCode::kDerivativeSingularity,
                      "derivative of " + spec_.describe() + " at 0");
        }
        if (spec_.exponent == 1) return Num(1);
        return Num(0);
      }
      if constexpr (kIsExact<Num>) {
        Num v = exponent_ * rational_pow(y, int_exponent_ - 1);
        return v;
      } else {
        return exponent_ * std::pow(y, exponent_ - 1);
      }
    }
    case Shape::kLog:
      if constexpr (!kIsExact<Num>) return 1.0 / (1.0 + y);
      break;
    case Shape::kPiecewiseLinear:
      return pl_slope_at(y);
  }
  throw Error(ErrorCode::kUnsupportedInExactMode, "log in exact mode");
}

template <class Num>
Num CostFunction<Num>::antiderivative(const Num& x) const {
  if (x <= 0) return Num(0);
  switch (spec_.shape) {
    case Shape::kLinear: {
      Num v = slope_ * x * x / 2;
      return v;
    }
    case Shape::kPower: {
      Num c1 = exponent_ + 1;
      if constexpr (kIsExact<Num>) {
        Num v = rational_pow(x, int_exponent_ + 1) / c1;
        return v;
      } else {
        return std::pow(x, c1) / c1;
      }
    }
    case Shape::kLog:
      if constexpr (!kIsExact<Num>) return (1.0 + x) * std::log1p(x) - x;
      break;
    case Shape::kPiecewiseLinear: {
      Num total = 0;
      for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        bool last = i + 2 == xs_.size();
        Num hi = (last || x < xs_[i + 1]) ? x : xs_[i + 1];
        Num w = hi - xs_[i];
        Num y_hi = ys_[i] + slopes_[i] * w;
        Num area = (ys_[i] + y_hi) * w / 2;
        total += area;
        if (hi == x) break;
      }
      return total;
    }
  }
  throw Error(ErrorCode::kUnsupportedInExactMode, "log in exact mode");
}

template <class Num>
Num CostFunction<Num>::moment(const Num& alpha, const Num& beta,
                              const Num& u0, const Num& u1) const {
  if (!(u0 < u1)) return Num(0);
  switch (spec_.shape) {
    case Shape::kLinear: {
      Num v = slope_ * (alpha * (u1 - u0) + beta * (u1 * u1 - u0 * u0) / 2);
      return v;
    }
    case Shape::kPower: {
      Num a = value(u1) - value(u0);
      Num c1 = exponent_ + 1;
      Num b;
      if constexpr (kIsExact<Num>) {
        b = (rational_pow(u1, int_exponent_ + 1) -
             rational_pow(u0, int_exponent_ + 1)) *
            exponent_ / c1;
      } else {
        b = (std::pow(u1, c1) - std::pow(u0, c1)) * exponent_ / c1;
      }
      Num v = alpha * a + beta * b;
      return v;
    }
    case Shape::kLog:
      if constexpr (!kIsExact<Num>) {
        return beta * (u1 - u0) +
               (alpha - beta) * (std::log1p(u1) - std::log1p(u0));
      }
      break;
    case Shape::kPiecewiseLinear: {
      Num total = 0;
      for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        bool last = i + 2 == xs_.size();
        Num lo = num_max(u0, xs_[i]);
        Num hi = last ? u1 : num_min(u1, xs_[i + 1]);
        if (lo < hi) {
          Num part =
              slopes_[i] * (alpha * (hi - lo) + beta * (hi * hi - lo * lo) / 2);
          total += part;
        }
      }
      return total;
    }
  }
  throw Error(ErrorCode::kUnsupportedInExactMode, "log in exact mode");
}

template <class Num>
Num CostFunction<Num>::min_shift_difference(const Num& r1, const Num& r2,
                                            const Num& from) const {
  auto diff = [&](const Num& t) {
    Num v = value(t - r1) - value(t - r2);
    return v;
  };
  Num best = diff(from);
  switch (spec_.shape) {
    case Shape::kLinear:
    case Shape::kPower:
    case Shape::kLog: {
      CostClass cls = spec_.cost_class();
      if (cls == CostClass::kConvex) return best;
      // Concave or linear: non-increasing past r2, so the limit matters.
      Num limit;
      if (cls == CostClass::kLinear) {
        Num a = spec_.shape == Shape::kLinear ? slope_ : Num(1);
        limit = a * (r2 - r1);
      } else {
        limit = 0;
      }
      return num_min(best, limit);
    }
    case Shape::kPiecewiseLinear: {
      // Piecewise linear in t with breaks at shifted knots; constant past
      // the last one.
      for (const Num& x : xs_) {
        for (const Num* r : {&r1, &r2}) {
          Num t = *r + x;
          if (t > from) {
            Num d = diff(t);
            if (d < best) best = d;
          }
        }
      }
      return best;
    }
  }
  return best;
}

template <class Num>
std::optional<Num> CostFunction<Num>::stationary_point(const Num& s1,
                                                       const Num& h1,
                                                       const Num& s2,
                                                       const Num& h2) const {
  Num lo = num_max(h1, h2);
  switch (spec_.shape) {
    case Shape::kLinear:
    case Shape::kPiecewiseLinear:
      return std::nullopt;
    case Shape::kPower: {
      if (spec_.exponent == 1) return std::nullopt;
      if (h1 == h2) return std::nullopt;
      Num t;
      if (spec_.exponent == 2) {
        // 2 s1 (t-h1) = 2 s2 (t-h2)
        if (s1 == s2) return std::nullopt;
        t = (s1 * h1 - s2 * h2) / (s1 - s2);
      } else {
        double rho = std::pow(to_double(s2) / to_double(s1),
                              1.0 / (to_double(exponent_) - 1.0));
        if (rho == 1.0 || !std::isfinite(rho)) return std::nullopt;
        double td = (to_double(h1) - rho * to_double(h2)) / (1.0 - rho);
        if (!std::isfinite(td)) return std::nullopt;
        t = from_double<Num>(td);
      }
      if (t > lo) return t;
      return std::nullopt;
    }
    case Shape::kLog: {
      if (s1 == s2) return std::nullopt;
      Num t = (s2 * (1 - h1) - s1 * (1 - h2)) / (s1 - s2);
      if (t > lo) return t;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

template <class Num>
bool CostFunction<Num>::affine_difference(const Num& s1, const Num& s2) const {
  switch (spec_.shape) {
    case Shape::kLinear:
    case Shape::kPiecewiseLinear:
      return true;
    case Shape::kPower:
      if (spec_.exponent == 1) return true;
      return spec_.exponent == 2 && s1 == s2;
    case Shape::kLog:
      return false;
  }
  return false;
}

template class CostFunction<Rational>;
template class CostFunction<double>;

}  // namespace pdsched
