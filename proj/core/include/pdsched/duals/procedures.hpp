#ifndef PDSCHED_DUALS_PROCEDURES_HPP_
#define PDSCHED_DUALS_PROCEDURES_HPP_

#include <optional>
#include <vector>

#include "pdsched/core/schedule.hpp"
#include "pdsched/duals/curve.hpp"

namespace pdsched {

// The procedures below take jobs in increasing order of completion time:
// forms[i] and completions[i] describe the i-th job to finish. They return
// lambda in the same order.

// lambda_k puts gamma_k(C_k) = 0, then gamma_j(C_j) = gamma_{j+1}(C_j)
// backwards. Throws NegativeDual if some lambda comes out negative.
template <class Num>
std::vector<Num> procedure1_assign(const std::vector<CurveForm<Num>>& forms,
                                   const std::vector<Num>& completions);

// GCP: gamma_j(C_j) = gamma_{j'}(C_j) where j' = successor[j] is the
// position of the job scheduled right at C_j. Without a successor (idle
// machine or last job) gamma_j(C_j) = 0. A successor released exactly at C_j
// is skipped; gamma_j(C_j) then matches the largest curve among the jobs
// that were already waiting.
template <class Num>
std::vector<Num> procedure3_gcp(
    const std::vector<CurveForm<Num>>& forms,
    const std::vector<Num>& completions,
    const std::vector<std::optional<std::size_t>>& successor);

// Equal densities: lambda_j is the largest value keeping gamma_j below
// gamma_{j+1} after C_j, raised so that gamma_j(C_j) >= 0. `busy_end[j]`
// marks a job followed by idle time, which restarts the recurrence with
// gamma_j(C_j) = 0.
template <class Num>
std::vector<Num> procedure4_equal_density(
    const std::vector<CurveForm<Num>>& forms,
    const std::vector<Num>& completions, const std::vector<bool>& busy_end);

struct Procedure5Stats {
  int events = 0;
};

// Concave g under HDF: start from gamma_a(C_k) = 0 for all a, then for each
// j lower the jobs whose curve at C_{j-1} exceeds lambda_j, dragging along
// earlier jobs whose curve catches up. tau plays the role of C_0.
template <class Num>
std::vector<Num> procedure5_concave(const std::vector<CurveForm<Num>>& forms,
                                    const std::vector<Num>& completions,
                                    const Num& tau,
                                    Procedure5Stats* stats = nullptr);

// Past-job update. Everything here is indexed by job index.
template <class Num>
struct Procedure2Input {
  std::vector<CurveForm<Num>> forms;
  std::vector<Num> before;      // lambda before the event (0 for fresh jobs)
  std::vector<Num> completion;  // completion time in the projected schedule
  std::vector<bool> fresh;      // released at tau
  std::vector<std::size_t> pending;    // representatives, by completion
  std::vector<std::size_t> completed;  // jobs finished by tau
  // Job running right after C_a, empty when the machine idles then.
  std::vector<std::optional<std::size_t>> next_scheduled;
  // When no curve meets gamma_a at C_a, raise lambda_a just enough to stay
  // above every job that waited while a ran, instead of failing. Needs the
  // projected schedule.
  bool fallback = false;
  const Schedule<Num>* schedule = nullptr;
};

struct Procedure2Result {
  // sets[i] starts with pending[i], then the completed jobs attached to it.
  std::vector<std::vector<std::size_t>> sets;
  // Completed jobs whose busy period is over; their lambda is unchanged.
  std::vector<std::size_t> frozen;
};

// On entry `lambda` holds the new values for the representatives and the
// old values for completed jobs; completed jobs are shifted by their
// representative's increase. Fallback jobs start sets of their own. Throws NoSuccessor when a completed job has
// no matching curve and fallback is off.
template <class Num>
Procedure2Result procedure2_update_past(const Procedure2Input<Num>& input,
                                        std::vector<Num>& lambda);

}  // namespace pdsched

#endif  // PDSCHED_DUALS_PROCEDURES_HPP_
