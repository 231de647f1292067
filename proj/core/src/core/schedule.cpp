#include "pdsched/core/schedule.hpp"

#include <sstream>

namespace pdsched {

template <class Num>
void append_segment(Schedule<Num>& schedule, const Num& start, const Num& end,
                    std::vector<Allocation<Num>> allocations) {
  if (!(start < end)) return;
  if (!schedule.segments.empty()) {
    Segment<Num>& last = schedule.segments.back();
    if (last.end == start && last.allocations == allocations) {
      last.end = end;
      return;
    }
  }
  schedule.segments.push_back(Segment<Num>{start, end, std::move(allocations)});
}

template <class Num>
Schedule<Num> restrict_before(const Schedule<Num>& schedule, const Num& tau) {
  Schedule<Num> out;
  out.speed = schedule.speed;
  out.completion.assign(schedule.completion.size(), std::nullopt);
  for (const auto& seg : schedule.segments) {
    if (!(seg.start < tau)) break;
    Num end = seg.end < tau ? seg.end : tau;
    append_segment(out, seg.start, end, seg.allocations);
  }
  for (std::size_t j = 0; j < schedule.completion.size(); ++j) {
    if (schedule.completion[j] && *schedule.completion[j] <= tau) {
      out.completion[j] = schedule.completion[j];
    }
  }
  return out;
}

template <class Num>
std::vector<Num> processed_work(const Schedule<Num>& schedule,
                                std::size_t jobs) {
  std::vector<Num> work(jobs, Num(0));
  for (const auto& seg : schedule.segments) {
    Num len = seg.end - seg.start;
    for (const auto& a : seg.allocations) {
      Num w = a.rate * len;
      work[a.job] += w;
    }
  }
  return work;
}

template <class Num>
std::string audit_schedule(const Instance<Num>& instance,
                           const Schedule<Num>& schedule) {
  std::ostringstream err;
  const std::size_t n = instance.size();
  if (schedule.completion.size() != n) return "completion vector size mismatch";
  Num prev_end = 0;
  std::vector<std::optional<Num>> last_active(n);
  for (const auto& seg : schedule.segments) {
    if (!(seg.start < seg.end)) return "empty or reversed segment";
    if (seg.start != prev_end) {
      if (!num_eq(seg.start, prev_end)) {
        err << "gap or overlap at t=" << format_num(seg.start);
        return err.str();
      }
    }
    prev_end = seg.end;
    Num total = 0;
    for (const auto& a : seg.allocations) {
      if (a.job >= n) return "allocation for unknown job";
      if (num_lt(a.rate, Num(0))) return "negative rate";
      if (num_lt(seg.start, instance.job(a.job).r)) {
        err << "job " << instance.job(a.job).id << " runs before release";
        return err.str();
      }
      total += a.rate;
      last_active[a.job] = seg.end;
    }
    if (instance.problem() == Problem::kPsp) {
      for (std::size_t i = 0; i < instance.rows(); ++i) {
        Num load = 0;
        for (const auto& a : seg.allocations) {
          Num l = instance.demand(i, a.job) * a.rate;
          load += l;
        }
        if (num_lt(schedule.speed, load)) {
          err << "row " << i << " overloaded at t=" << format_num(seg.start);
          return err.str();
        }
      }
    } else if (num_lt(schedule.speed, total)) {
      err << "speed exceeded at t=" << format_num(seg.start);
      return err.str();
    }
  }
  std::vector<Num> work = processed_work(schedule, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& job = instance.job(j);
    if (!num_eq(work[j], job.p)) {
      err << "job " << job.id << " received " << format_num(work[j])
          << " of " << format_num(job.p);
      return err.str();
    }
    if (!schedule.completion[j] || !last_active[j] ||
        !num_eq(*schedule.completion[j], *last_active[j])) {
      err << "job " << job.id << " completion does not match its support";
      return err.str();
    }
  }
  return {};
}

#define PDSCHED_INSTANTIATE(Num)                                          \
  template void append_segment<Num>(Schedule<Num>&, const Num&, const Num&, \
                                    std::vector<Allocation<Num>>);        \
  template Schedule<Num> restrict_before<Num>(const Schedule<Num>&,       \
                                              const Num&);                \
  template std::vector<Num> processed_work<Num>(const Schedule<Num>&,     \
                                                std::size_t);             \
  template std::string audit_schedule<Num>(const Instance<Num>&,          \
                                           const Schedule<Num>&);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
