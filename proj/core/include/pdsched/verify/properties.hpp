#ifndef PDSCHED_VERIFY_PROPERTIES_HPP_
#define PDSCHED_VERIFY_PROPERTIES_HPP_

#include <string>
#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/schedule.hpp"
#include "pdsched/duals/dual_run.hpp"
#include "pdsched/duals/envelope.hpp"
#include "pdsched/duals/psp_duals.hpp"

namespace pdsched {

// Outcome of one check; the witness names a time, the jobs involved and
// the curve values when it fails.
struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

// Strict dominance: on every piece running j, gamma_j >= 0 and gamma_j is
// at least every other released curve, i.e. gamma_j equals the envelope.
template <class Num>
CheckResult check_dominance(const Instance<Num>& instance,
                            const std::vector<DualCurve<Num>>& curves,
                            const Schedule<Num>& schedule);

// Relaxed dominance: on every piece running j, gamma_j >= 0 and
// lambda_j >= gamma_i(t) for all other released i.
template <class Num>
CheckResult check_relaxed_dominance(const Instance<Num>& instance,
                                    const std::vector<DualCurve<Num>>& curves,
                                    const Schedule<Num>& schedule);

// The part of the projected schedule before tau is the final schedule's.
template <class Num>
CheckResult check_prefix_fixed(const Schedule<Num>& projected,
                               const Schedule<Num>& final_schedule,
                               const Num& tau);

// Both clauses at one release event, strict or relaxed.
template <class Num>
CheckResult check_P1_P2(const Instance<Num>& instance, const DualRun<Num>& run,
                        const ReleaseSnapshot<Num>& snap);
template <class Num>
CheckResult check_Q1_Q2(const Instance<Num>& instance, const DualRun<Num>& run,
                        const ReleaseSnapshot<Num>& snap);

// Every released curve is non-positive from C_max on, and so is the
// envelope.
template <class Num>
CheckResult check_P3(const std::vector<DualCurve<Num>>& curves,
                     const Envelope<Num>& envelope, const Num& horizon);

// lambda_j - gamma(t) <= scale_j g(t - shift_j) for t >= r_j, evaluated from
// the raw curves against the given envelope, and lambda >= 0.
template <class Num>
CheckResult check_dual_feasible(const std::vector<DualCurve<Num>>& curves,
                                const Envelope<Num>& envelope);

// lambda_j - sum_i b_ij gamma_i(t) <= delta_j a (t - r_j) for every job.
template <class Num>
CheckResult check_psp_feasible(const Instance<Num>& instance,
                               const PspDuals<Num>& duals);

// At every event, among old pending jobs, an earlier completion never gets
// a smaller increase.
template <class Num>
CheckResult check_increase_order(const DualRun<Num>& run);

}  // namespace pdsched

#endif  // PDSCHED_VERIFY_PROPERTIES_HPP_
