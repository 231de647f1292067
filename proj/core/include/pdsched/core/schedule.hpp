#ifndef PDSCHED_CORE_SCHEDULE_HPP_
#define PDSCHED_CORE_SCHEDULE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/numeric.hpp"

namespace pdsched {

template <class Num>
struct Allocation {
  std::size_t job = 0;  // index into Instance::jobs()
  Num rate{};

  bool operator==(const Allocation& o) const {
    return job == o.job && rate == o.rate;
  }
};

// [start, end) with constant rates; no allocations means idle.
template <class Num>
struct Segment {
  Num start{};
  Num end{};
  std::vector<Allocation<Num>> allocations;

  bool idle() const { return allocations.empty(); }
  bool operator==(const Segment& o) const {
    return start == o.start && end == o.end && allocations == o.allocations;
  }
};

template <class Num>
struct Schedule {
  Num speed = 1;
  std::vector<Segment<Num>> segments;
  // Completion time per job index; empty when the job never finished.
  std::vector<std::optional<Num>> completion;

  Num end() const { return segments.empty() ? Num(0) : segments.back().end; }
  bool operator==(const Schedule& o) const {
    return speed == o.speed && segments == o.segments &&
           completion == o.completion;
  }
};

// Appends [start, end) with the given allocations, merging with the last
// segment when it is contiguous and identical. Empty intervals are dropped.
template <class Num>
void append_segment(Schedule<Num>& schedule, const Num& start, const Num& end,
                    std::vector<Allocation<Num>> allocations);

// The part of the schedule before tau.
template <class Num>
Schedule<Num> restrict_before(const Schedule<Num>& schedule, const Num& tau);

// Work received by each job.
template <class Num>
std::vector<Num> processed_work(const Schedule<Num>& schedule,
                                std::size_t jobs);

// Structural audit; returns an empty string when every invariant holds,
// otherwise a description of the first violation. PSP capacity is checked
// per demand row.
template <class Num>
std::string audit_schedule(const Instance<Num>& instance,
                           const Schedule<Num>& schedule);

}  // namespace pdsched

#endif  // PDSCHED_CORE_SCHEDULE_HPP_
