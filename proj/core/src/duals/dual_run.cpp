#include "pdsched/duals/dual_run.hpp"

#include <algorithm>

#include "pdsched/core/errors.hpp"
#include "pdsched/schedulers/class_a.hpp"
#include "pdsched/schedulers/pending_state.hpp"

namespace pdsched {

std::string_view to_string(DualMethod method) {
  switch (method) {
    case DualMethod::kPrimalDual:
      return "primal-dual";
    case DualMethod::kCompletionTime:
      return "completion-time";
    case DualMethod::kEqualDensityFit:
      return "equal-density-fit";
    case DualMethod::kConcaveFit:
      return "concave-fit";
    case DualMethod::kPsp:
      return "psp";
  }
  return "?";
}

namespace {

constexpr const char* kScopeTable =
    "supported: gfp+hdf (linear g, or concave g for the integral bound); "
    "gcp+hdf (any g); gfp+fifo with equal densities (convex g, or any g for "
    "the integral bound); gfp+lifo with equal densities and concave g; "
    "psp+psp; jdgfp+jdgfp (separate certificate)";

[[noreturn]] void out_of_scope(const std::string& what) {
  throw Error(ErrorCode::kOutOfTheoremScope, what + "; " + kScopeTable);
}

}  // namespace

MethodChoice select_method(const InstanceSpec& spec, PolicyKind policy) {
  const std::string pair = std::string(to_string(spec.problem)) + " with " +
                           std::string(to_string(policy));
  switch (spec.problem) {
    case Problem::kGcp:
      if (policy != PolicyKind::kHdf) out_of_scope(pair);
      return {DualMethod::kCompletionTime, true};
    case Problem::kPsp:
      if (policy != PolicyKind::kPspHdf) out_of_scope(pair);
      return {DualMethod::kPsp, false};
    case Problem::kJdgfp:
      out_of_scope(pair + " (jdgfp has its own dual construction)");
    case Problem::kGfp:
      break;
  }
  const CostClass cls = spec.g->cost_class();
  const bool linear = cls == CostClass::kLinear;
  const bool convex = linear || cls == CostClass::kConvex;
  const bool concave = linear || cls == CostClass::kConcave;
  switch (policy) {
    case PolicyKind::kHdf:
      if (linear) return {DualMethod::kPrimalDual, true};
      if (concave) return {DualMethod::kConcaveFit, false};
      out_of_scope(pair + " and " + std::string(to_string(cls)) + " g");
    case PolicyKind::kFifo:
      if (!spec.equal_density()) out_of_scope(pair + " and unequal densities");
      if (convex) return {DualMethod::kPrimalDual, true};
      return {DualMethod::kEqualDensityFit, false};
    case PolicyKind::kLifo:
      if (!spec.equal_density()) out_of_scope(pair + " and unequal densities");
      if (concave) return {DualMethod::kPrimalDual, true};
      out_of_scope(pair + " and " + std::string(to_string(cls)) + " g");
    default:
      out_of_scope(pair);
  }
}

template <class Num>
std::vector<DualCurve<Num>> DualRun<Num>::curves() const {
  return curves(lambda, lambda.size());
}

template <class Num>
std::vector<DualCurve<Num>> DualRun<Num>::curves(const std::vector<Num>& values,
                                                 std::size_t released) const {
  std::vector<DualCurve<Num>> out;
  for (std::size_t j = 0; j < released && j < values.size(); ++j) {
    out.push_back(DualCurve<Num>{j, values[j], forms[j]});
  }
  return out;
}

template <class Num>
std::optional<std::size_t> job_starting_at(const Schedule<Num>& schedule,
                                           const Num& t) {
  for (const auto& seg : schedule.segments) {
    if (seg.start == t) {
      if (seg.idle()) return std::nullopt;
      return seg.allocations.front().job;
    }
    if (t < seg.start) break;
  }
  return std::nullopt;
}

template <class Num>
DualRun<Num> run_duals(const Instance<Num>& instance, PolicyKind policy,
                       DualMethod method) {
  if (policy == PolicyKind::kJdgfpRate) {
    out_of_scope("the jdgfp rate rule has its own dual construction");
  }
  const std::size_t n = instance.size();
  DualRun<Num> run;
  run.method = method;
  run.policy = policy;
  run.schedule = simulate_single_job_policy(instance, policy, Num(1));
  run.lambda.assign(n, Num(0));
  for (std::size_t j = 0; j < n; ++j) {
    run.forms.push_back(curve_form(instance, j));
  }

  std::size_t first = 0;
  while (first < n) {
    const Num tau = instance.job(first).r;
    ReleaseSnapshot<Num> snap;
    snap.tau = tau;
    std::size_t released = instance.released_count(tau);
    for (std::size_t j = first; j < released; ++j) {
      snap.released_now.push_back(j);
    }
    snap.released = released;
    snap.projected =
        simulate_single_job_policy(instance, policy, Num(1), released);
    PendingState<Num> state =
        pending_state(instance, snap.projected, tau, released);
    snap.before = run.lambda;
    snap.deltas.assign(n, std::nullopt);

    std::vector<Num> completion(n, Num(0));
    for (std::size_t j = 0; j < released; ++j) {
      completion[j] = *snap.projected.completion[j];
    }
    auto by_completion = [&](std::vector<std::size_t> jobs) {
      std::sort(jobs.begin(), jobs.end(), [&](std::size_t x, std::size_t y) {
        if (completion[x] != completion[y]) {
          return completion[x] < completion[y];
        }
        return x < y;
      });
      return jobs;
    };

    std::vector<Num>& lambda = run.lambda;
    if (method == DualMethod::kCompletionTime ||
        method == DualMethod::kEqualDensityFit) {
      std::vector<std::size_t> order = by_completion(state.released);
      std::vector<std::size_t> position(n, 0);
      for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
      std::vector<CurveForm<Num>> forms;
      std::vector<Num> comps;
      std::vector<std::optional<std::size_t>> successor;
      std::vector<bool> busy_end;
      for (std::size_t j : order) {
        forms.push_back(run.forms[j]);
        comps.push_back(completion[j]);
        auto next = job_starting_at(snap.projected, completion[j]);
        successor.push_back(next ? std::optional<std::size_t>(position[*next])
                                 : std::nullopt);
        busy_end.push_back(!next);
      }
      std::vector<Num> values =
          method == DualMethod::kCompletionTime
              ? procedure3_gcp(forms, comps, successor)
              : procedure4_equal_density(forms, comps, busy_end);
      for (std::size_t i = 0; i < order.size(); ++i) {
        lambda[order[i]] = values[i];
      }
      snap.pending_order = order;
    } else {
      std::vector<std::size_t> pending;
      for (const auto& p : state.pending) pending.push_back(p.job);
      std::vector<std::size_t> order = by_completion(pending);
      std::vector<CurveForm<Num>> forms;
      std::vector<Num> comps;
      for (std::size_t j : order) {
        forms.push_back(run.forms[j]);
        comps.push_back(completion[j]);
      }
      std::vector<Num> values;
      if (method == DualMethod::kConcaveFit) {
        Procedure5Stats stats;
        values = procedure5_concave(forms, comps, tau, &stats);
        snap.procedure5_events = stats.events;
      } else {
        values = procedure1_assign(forms, comps);
      }
      for (std::size_t i = 0; i < order.size(); ++i) {
        lambda[order[i]] = values[i];
      }

      Procedure2Input<Num> input;
      input.forms = run.forms;
      input.before = snap.before;
      input.completion = completion;
      input.fresh.assign(n, false);
      for (std::size_t j : snap.released_now) input.fresh[j] = true;
      input.pending = order;
      input.completed = state.completed;
      input.next_scheduled.assign(n, std::nullopt);
      for (std::size_t a : state.completed) {
        input.next_scheduled[a] = job_starting_at(snap.projected, completion[a]);
      }
      input.fallback = method == DualMethod::kConcaveFit;
      input.schedule = &snap.projected;
      Procedure2Result res = procedure2_update_past(input, lambda);
      snap.sets = std::move(res.sets);
      snap.frozen = std::move(res.frozen);
      snap.pending_order = order;
      for (std::size_t j : order) {
        Num d = lambda[j] - snap.before[j];
        snap.deltas[j] = d;
      }
    }
    snap.after = lambda;
    run.snapshots.push_back(std::move(snap));
    first = released;
  }
  return run;
}

namespace {

template <class Num>
std::vector<Num> schedule_points(const Schedule<Num>& schedule) {
  std::vector<Num> pts;
  for (const auto& seg : schedule.segments) pts.push_back(seg.start);
  pts.push_back(schedule.end());
  return pts;
}

}  // namespace

template <class Num>
Envelope<Num> final_envelope(const DualRun<Num>& run) {
  return build_envelope(run.curves(), run.schedule.end(),
                        schedule_points(run.schedule));
}

template <class Num>
Envelope<Num> snapshot_envelope(const DualRun<Num>& run,
                                const ReleaseSnapshot<Num>& snap) {
  return build_envelope(run.curves(snap.after, snap.released),
                        snap.projected.end(), schedule_points(snap.projected));
}

#define PDSCHED_INSTANTIATE(Num)                                             \
  template struct DualRun<Num>;                                              \
  template std::optional<std::size_t> job_starting_at<Num>(                  \
      const Schedule<Num>&, const Num&);                                     \
  template DualRun<Num> run_duals<Num>(const Instance<Num>&, PolicyKind,     \
                                       DualMethod);                          \
  template Envelope<Num> final_envelope<Num>(const DualRun<Num>&);           \
  template Envelope<Num> snapshot_envelope<Num>(const DualRun<Num>&,         \
                                                const ReleaseSnapshot<Num>&);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
