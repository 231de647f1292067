#include "pdsched/schedulers/class_a.hpp"

#include <algorithm>
#include <vector>

#include "pdsched/core/errors.hpp"

namespace pdsched {

namespace {

template <class Num>
Schedule<Num> run_engine(const Instance<Num>& instance, PolicyKind kind,
                         const Num& speed, std::size_t released) {
  if (!(speed > 0)) throw Error(ErrorCode::kInvalidInput, "speed must be > 0");
  const std::size_t n = std::min(released, instance.size());
  Schedule<Num> schedule;
  schedule.speed = speed;
  schedule.completion.assign(instance.size(), std::nullopt);

  auto rate_of = [&](std::size_t j) -> Num {
    if (kind == PolicyKind::kPspHdf) {
      Num r = speed / instance.max_demand(j);
      return r;
    }
    return speed;
  };

  std::vector<Num> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = instance.job(j).p;
  std::vector<std::size_t> pending;
  std::size_t next = 0;
  Num t = 0;

  auto admit = [&]() {
    while (next < n && instance.job(next).r <= t) pending.push_back(next++);
  };
  admit();
  while (next < n || !pending.empty()) {
    if (pending.empty()) {
      Num r = instance.job(next).r;
      append_segment(schedule, t, r, {});
      t = r;
      admit();
      continue;
    }
    auto top_it = std::min_element(
        pending.begin(), pending.end(), [&](std::size_t a, std::size_t b) {
          return runs_before(instance, kind, a, b);
        });
    std::size_t top = *top_it;
    Num rate = rate_of(top);
    Num finish = t + remaining[top] / rate;
    bool release_first = next < n && instance.job(next).r < finish;
    Num stop = release_first ? instance.job(next).r : finish;
    append_segment(schedule, t, stop, {Allocation<Num>{top, rate}});
    if (release_first) {
      Num done = rate * (stop - t);
      remaining[top] -= done;
    } else {
      remaining[top] = 0;
      schedule.completion[top] = stop;
      pending.erase(top_it);
    }
    t = stop;
    admit();
  }
  return schedule;
}

}  // namespace

template <class Num>
Schedule<Num> simulate_class_A(const Instance<Num>& instance, PolicyKind kind,
                               const Num& speed, std::size_t released) {
  if (kind != PolicyKind::kHdf && kind != PolicyKind::kFifo &&
      kind != PolicyKind::kLifo) {
    throw Error(ErrorCode::kInvalidInput,
                "class-A simulation needs HDF, FIFO or LIFO");
  }
  return run_engine(instance, kind, speed, released);
}

template <class Num>
Schedule<Num> simulate_psp(const Instance<Num>& instance, const Num& speed,
                           std::size_t released) {
  if (instance.problem() != Problem::kPsp) {
    throw Error(ErrorCode::kInvalidInput, "simulate_psp needs a PSP instance");
  }
  return run_engine(instance, PolicyKind::kPspHdf, speed, released);
}

template <class Num>
Schedule<Num> simulate_single_job_policy(const Instance<Num>& instance,
                                         PolicyKind kind, const Num& speed,
                                         std::size_t released) {
  if (kind == PolicyKind::kPspHdf) {
    return simulate_psp(instance, speed, released);
  }
  return simulate_class_A(instance, kind, speed, released);
}

#define PDSCHED_INSTANTIATE(Num)                                              \
  template Schedule<Num> simulate_class_A<Num>(const Instance<Num>&,          \
                                               PolicyKind, const Num&,        \
                                               std::size_t);                  \
  template Schedule<Num> simulate_psp<Num>(const Instance<Num>&, const Num&,  \
                                           std::size_t);                      \
  template Schedule<Num> simulate_single_job_policy<Num>(                     \
      const Instance<Num>&, PolicyKind, const Num&, std::size_t);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
