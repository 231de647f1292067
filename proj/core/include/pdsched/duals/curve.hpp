#ifndef PDSCHED_DUALS_CURVE_HPP_
#define PDSCHED_DUALS_CURVE_HPP_

#include <utility>
#include <vector>

#include "pdsched/core/cost_function.hpp"
#include "pdsched/core/instance.hpp"

namespace pdsched {

// gamma(t) = lambda - scale * g(t - shift), defined for t >= start.
template <class Num>
struct CurveForm {
  Num scale{};
  Num shift{};
  Num start{};
  const CostFunction<Num>* g = nullptr;
};

template <class Num>
struct DualCurve {
  std::size_t job = 0;
  Num lambda{};
  CurveForm<Num> form;

  Num operator()(const Num& t) const {
    Num v = lambda - form.scale * form.g->value(t - form.shift);
    return v;
  }
};

// GFP: scale delta_j, shift r_j. GCP: shift 0. PSP: the single-machine
// surrogate with scale delta_j / b_j.
template <class Num>
CurveForm<Num> curve_form(const Instance<Num>& instance, std::size_t j);

// lambda making gamma(at) = target.
template <class Num>
Num lambda_through(const CurveForm<Num>& form, const Num& at,
                   const Num& target);

// Minimum of a(t) - b(t) over [lo, hi] and a point attaining it. Both
// curves must share the same cost function.
template <class Num>
std::pair<Num, Num> min_difference(const DualCurve<Num>& a,
                                   const DualCurve<Num>& b, const Num& lo,
                                   const Num& hi);

// Points in (lo, hi) where a - b may change monotonicity.
template <class Num>
std::vector<Num> difference_critical_points(const DualCurve<Num>& a,
                                            const DualCurve<Num>& b,
                                            const Num& lo, const Num& hi);

}  // namespace pdsched

#endif  // PDSCHED_DUALS_CURVE_HPP_
