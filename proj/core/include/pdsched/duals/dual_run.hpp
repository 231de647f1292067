#ifndef PDSCHED_DUALS_DUAL_RUN_HPP_
#define PDSCHED_DUALS_DUAL_RUN_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/schedule.hpp"
#include "pdsched/duals/curve.hpp"
#include "pdsched/duals/envelope.hpp"
#include "pdsched/duals/procedures.hpp"
#include "pdsched/schedulers/policy.hpp"

namespace pdsched {

enum class DualMethod {
  kPrimalDual,      // procedures 1 + 2
  kCompletionTime,  // procedure 3
  kEqualDensityFit, // procedure 4
  kConcaveFit,      // procedures 5 + 2
  kPsp,             // procedures 1 + 2 on the single-machine surrogate
};

std::string_view to_string(DualMethod method);

struct MethodChoice {
  DualMethod method = DualMethod::kPrimalDual;
  // True when primal and dual objectives coincide (fractional optimality);
  // otherwise only the integral bound is claimed.
  bool fractional_optimal = false;
};

// The supported (problem, policy, cost class) combinations. Throws
// OutOfTheoremScope for anything else.
MethodChoice select_method(const InstanceSpec& spec, PolicyKind policy);

// State around one release time.
template <class Num>
struct ReleaseSnapshot {
  Num tau{};
  std::vector<std::size_t> released_now;
  std::size_t released = 0;  // jobs 0..released-1 exist at tau
  std::vector<Num> before;   // lambda per job index before the event
  std::vector<Num> after;
  std::vector<std::optional<Num>> deltas;  // representatives only
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::size_t> frozen;
  std::vector<std::size_t> pending_order;  // by projected completion
  Schedule<Num> projected;
  int procedure5_events = 0;
};

template <class Num>
struct DualRun {
  DualMethod method = DualMethod::kPrimalDual;
  PolicyKind policy = PolicyKind::kHdf;
  Schedule<Num> schedule;
  std::vector<Num> lambda;  // per job index; surrogate values for PSP
  std::vector<CurveForm<Num>> forms;
  std::vector<ReleaseSnapshot<Num>> snapshots;

  std::vector<DualCurve<Num>> curves() const;
  // Curves of the first `released` jobs with the given lambda values.
  std::vector<DualCurve<Num>> curves(const std::vector<Num>& values,
                                     std::size_t released) const;
};

// Job running from time t on, if any.
template <class Num>
std::optional<std::size_t> job_starting_at(const Schedule<Num>& schedule,
                                           const Num& t);

// Replays the release sequence, maintaining lambda with the given method.
// The machine runs at unit speed; speed augmentation is accounted for in
// the dual objective.
template <class Num>
DualRun<Num> run_duals(const Instance<Num>& instance, PolicyKind policy,
                       DualMethod method);

// Envelope of the final lambda over the whole schedule.
template <class Num>
Envelope<Num> final_envelope(const DualRun<Num>& run);

// Envelope right after a release event, over its projected schedule.
template <class Num>
Envelope<Num> snapshot_envelope(const DualRun<Num>& run,
                                const ReleaseSnapshot<Num>& snap);

}  // namespace pdsched

#endif  // PDSCHED_DUALS_DUAL_RUN_HPP_
