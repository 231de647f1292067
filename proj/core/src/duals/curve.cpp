#include "pdsched/duals/curve.hpp"

namespace pdsched {

template <class Num>
CurveForm<Num> curve_form(const Instance<Num>& instance, std::size_t j) {
  CurveForm<Num> f;
  const Job<Num>& job = instance.job(j);
  f.g = &instance.cost(j);
  f.start = job.r;
  f.shift = instance.cost_shift(j);
  f.scale = job.density();
  if (instance.problem() == Problem::kPsp) {
    f.scale = f.scale / instance.min_demand(j);
  }
  return f;
}

template <class Num>
Num lambda_through(const CurveForm<Num>& form, const Num& at,
                   const Num& target) {
  Num v = target + form.scale * form.g->value(at - form.shift);
  return v;
}

template <class Num>
std::vector<Num> difference_critical_points(const DualCurve<Num>& a,
                                            const DualCurve<Num>& b,
                                            const Num& lo, const Num& hi) {
  std::vector<Num> pts;
  auto add = [&](const Num& t) {
    if (lo < t && t < hi) pts.push_back(t);
  };
  for (const auto* c : {&a, &b}) {
    add(c->form.shift);
    for (const Num& k : c->form.g->knots()) {
      Num t = c->form.shift + k;
      add(t);
    }
  }
  if (a.form.g == b.form.g) {
    auto s = a.form.g->stationary_point(a.form.scale, a.form.shift,
                                        b.form.scale, b.form.shift);
    if (s) add(*s);
  }
  return pts;
}

template <class Num>
std::pair<Num, Num> min_difference(const DualCurve<Num>& a,
                                   const DualCurve<Num>& b, const Num& lo,
                                   const Num& hi) {
  Num best_t = lo;
  Num best = a(lo) - b(lo);
  auto consider = [&](const Num& t) {
    Num d = a(t) - b(t);
    if (d < best) {
      best = d;
      best_t = t;
    }
  };
  consider(hi);
  for (const Num& t : difference_critical_points(a, b, lo, hi)) consider(t);
  return {best, best_t};
}

#define PDSCHED_INSTANTIATE(Num)                                              \
  template CurveForm<Num> curve_form<Num>(const Instance<Num>&, std::size_t); \
  template Num lambda_through<Num>(const CurveForm<Num>&, const Num&,         \
                                   const Num&);                               \
  template std::pair<Num, Num> min_difference<Num>(                           \
      const DualCurve<Num>&, const DualCurve<Num>&, const Num&, const Num&);  \
  template std::vector<Num> difference_critical_points<Num>(                  \
      const DualCurve<Num>&, const DualCurve<Num>&, const Num&, const Num&);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
