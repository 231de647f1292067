#include "pdsched/core/objective.hpp"

#include "pdsched/core/errors.hpp"

namespace pdsched {

namespace {

template <class Num>
void require_complete(const Instance<Num>& instance,
                      const Schedule<Num>& schedule) {
  std::vector<Num> work = processed_work(schedule, instance.size());
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (num_lt(work[j], instance.job(j).p) || j >= schedule.completion.size() ||
        !schedule.completion[j]) {
      throw Error(ErrorCode::kIncompleteSchedule,
                  "job " + std::to_string(instance.job(j).id) +
                      " is not fully processed");
    }
  }
}

}  // namespace

template <class Num>
Num integral_cost(const Instance<Num>& instance,
                  const Schedule<Num>& schedule) {
  require_complete(instance, schedule);
  Num total = 0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    Num flow = *schedule.completion[j] - instance.cost_shift(j);
    Num c = instance.job(j).w * instance.cost(j).value(flow);
    total += c;
  }
  return total;
}

template <class Num>
std::vector<Num> fractional_cost_by_job(const Instance<Num>& instance,
                                        const Schedule<Num>& schedule) {
  require_complete(instance, schedule);
  std::vector<Num> out(instance.size(), Num(0));
  for (const auto& seg : schedule.segments) {
    for (const auto& a : seg.allocations) {
      const auto& g = instance.cost(a.job);
      Num shift = instance.cost_shift(a.job);
      Num area = g.antiderivative(seg.end - shift) -
                 g.antiderivative(seg.start - shift);
      Num c = instance.job(a.job).density() * a.rate * area;
      out[a.job] += c;
    }
  }
  return out;
}

template <class Num>
Num fractional_cost(const Instance<Num>& instance,
                    const Schedule<Num>& schedule) {
  Num total = 0;
  for (const Num& v : fractional_cost_by_job(instance, schedule)) total += v;
  return total;
}

template <class Num>
Num fractional_cost_remaining_weight_form(const Instance<Num>& instance,
                                          const Schedule<Num>& schedule) {
  require_complete(instance, schedule);
  const std::size_t n = instance.size();
  Num total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& job = instance.job(j);
    const auto& g = instance.cost(j);
    Num shift = instance.cost_shift(j);
    Num delta = job.density();
    Num q = job.p;
    Num acc = 0;
    // Walk the time axis from r_j; q is affine on each segment.
    Num t = job.r;
    for (const auto& seg : schedule.segments) {
      if (!(t < *schedule.completion[j])) break;
      if (!(t < seg.end)) continue;
      Num lo = num_max(t, seg.start);
      Num hi = num_min(seg.end, *schedule.completion[j]);
      if (!(lo < hi)) continue;
      Num rate = 0;
      for (const auto& a : seg.allocations) {
        if (a.job == j) rate = a.rate;
      }
      // q(t') = q - rate (t' - lo); in u = t' - shift:
      // q = (q + rate (lo - shift)) - rate u.
      Num alpha = q + rate * (lo - shift);
      Num beta = -rate;
      Num part = g.moment(alpha, beta, lo - shift, hi - shift);
      acc += part;
      Num used = rate * (hi - lo);
      q -= used;
      t = hi;
    }
    Num contribution = delta * acc;
    total += contribution;
    if (instance.problem() == Problem::kGcp) {
      Num base = job.w * g.value(job.r);
      total += base;
    }
  }
  return total;
}

#define PDSCHED_INSTANTIATE(Num)                                             \
  template Num integral_cost<Num>(const Instance<Num>&, const Schedule<Num>&); \
  template Num fractional_cost<Num>(const Instance<Num>&,                    \
                                    const Schedule<Num>&);                   \
  template std::vector<Num> fractional_cost_by_job<Num>(                     \
      const Instance<Num>&, const Schedule<Num>&);                           \
  template Num fractional_cost_remaining_weight_form<Num>(                   \
      const Instance<Num>&, const Schedule<Num>&);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
