#ifndef PDSCHED_SCHEDULERS_CLASS_A_HPP_
#define PDSCHED_SCHEDULERS_CLASS_A_HPP_

#include <cstddef>
#include <limits>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/schedule.hpp"
#include "pdsched/schedulers/policy.hpp"

namespace pdsched {

inline constexpr std::size_t kAllJobs = std::numeric_limits<std::size_t>::max();

// Event-driven single-machine simulation: the highest-priority pending job
// runs at full speed until the next release or completion. Only the first
// `released` jobs (in (r, id) order) exist, which yields the projected
// schedule used by the dual procedures.
template <class Num>
Schedule<Num> simulate_class_A(const Instance<Num>& instance, PolicyKind kind,
                               const Num& speed,
                               std::size_t released = kAllJobs);

// The PSP rule: the pending job maximizing delta_j / b_j runs at rate
// speed / B_j.
template <class Num>
Schedule<Num> simulate_psp(const Instance<Num>& instance, const Num& speed,
                           std::size_t released = kAllJobs);

// Dispatches on the policy (HDF/FIFO/LIFO/PSP).
template <class Num>
Schedule<Num> simulate_single_job_policy(const Instance<Num>& instance,
                                         PolicyKind kind, const Num& speed,
                                         std::size_t released = kAllJobs);

}  // namespace pdsched

#endif  // PDSCHED_SCHEDULERS_CLASS_A_HPP_
