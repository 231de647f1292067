#ifndef PDSCHED_SCHEDULERS_PENDING_STATE_HPP_
#define PDSCHED_SCHEDULERS_PENDING_STATE_HPP_

#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/schedule.hpp"

namespace pdsched {

template <class Num>
struct PendingJob {
  std::size_t job = 0;
  Num remaining{};
};

// Snapshot at time tau of a run restricted to the released jobs.
template <class Num>
struct PendingState {
  Num tau{};
  std::vector<PendingJob<Num>> pending;  // P_tau, in index order
  std::vector<std::size_t> released;     // R_tau
  std::vector<std::size_t> completed;    // jobs done by tau
  Num horizon{};                         // C_max of the projected schedule
};

// Derives the state from the projected schedule of the first `released`
// jobs. A job finishing exactly at tau counts as completed.
template <class Num>
PendingState<Num> pending_state(const Instance<Num>& instance,
                                const Schedule<Num>& projected, const Num& tau,
                                std::size_t released);

}  // namespace pdsched

#endif  // PDSCHED_SCHEDULERS_PENDING_STATE_HPP_
