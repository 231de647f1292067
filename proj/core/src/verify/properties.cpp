#include "pdsched/verify/properties.hpp"

#include <algorithm>

#include "pdsched/core/errors.hpp"

namespace pdsched {

namespace {

template <class Num>
std::string job_name(const Instance<Num>& instance, std::size_t j) {
  return "job " + std::to_string(instance.job(j).id);
}

template <class Num>
const DualCurve<Num>* curve_of(const std::vector<DualCurve<Num>>& curves,
                               std::size_t job) {
  for (const auto& c : curves) {
    if (c.job == job) return &c;
  }
  return nullptr;
}

template <class Num>
CheckResult fail(CheckResult r, const std::string& witness) {
  r.pass = false;
  r.witness = witness;
  return r;
}

template <class Num>
CheckResult dominance_impl(const Instance<Num>& instance,
                           const std::vector<DualCurve<Num>>& curves,
                           const Schedule<Num>& schedule, bool relaxed) {
  CheckResult r;
  r.name = relaxed ? "relaxed-dominance" : "dominance";
  for (const auto& seg : schedule.segments) {
    if (seg.idle()) continue;
    const std::size_t j = seg.allocations.front().job;
    const DualCurve<Num>* cj = curve_of(curves, j);
    if (!cj) continue;
    Num at_end = (*cj)(seg.end);
    if (num_lt(at_end, Num(0))) {
      return fail<Num>(r, "t=" + format_num(seg.end) + ": " +
                              job_name(instance, j) + " runs with gamma=" +
                              format_num(at_end) + " < 0");
    }
    for (const auto& ci : curves) {
      if (ci.job == j || !(ci.form.start < seg.end)) continue;
      Num lo = num_max(seg.start, ci.form.start);
      if (relaxed) {
        // Only jobs still pending count; a finished job's curve is free.
        const auto& ci_done = schedule.completion[ci.job];
        if (ci_done && !(seg.start < *ci_done)) continue;
        // gamma_i is non-increasing, so its largest value is at lo.
        Num gi = ci(lo);
        if (num_lt(cj->lambda, gi)) {
          return fail<Num>(r, "t=" + format_num(lo) + ": " +
                                  job_name(instance, j) + " runs with lambda=" +
                                  format_num(cj->lambda) + " < gamma of " +
                                  job_name(instance, ci.job) + "=" +
                                  format_num(gi));
        }
      } else {
        auto [gap, at] = min_difference(*cj, ci, lo, seg.end);
        if (num_lt(gap, Num(0))) {
          return fail<Num>(r, "t=" + format_num(at) + ": " +
                                  job_name(instance, j) + " runs with gamma=" +
                                  format_num((*cj)(at)) + " below " +
                                  job_name(instance, ci.job) + " at " +
                                  format_num(ci(at)));
        }
      }
    }
  }
  return r;
}

template <class Num>
CheckResult event_check(const Instance<Num>& instance, const DualRun<Num>& run,
                        const ReleaseSnapshot<Num>& snap, bool relaxed) {
  auto curves = run.curves(snap.after, snap.released);
  CheckResult d = dominance_impl(instance, curves, snap.projected, relaxed);
  CheckResult p = check_prefix_fixed(snap.projected, run.schedule, snap.tau);
  CheckResult r;
  r.name = relaxed ? "Q1-Q2" : "P1-P2";
  std::string at = "tau=" + format_num(snap.tau) + ": ";
  if (!d.pass) return fail<Num>(r, at + d.witness);
  if (!p.pass) return fail<Num>(r, at + p.witness);
  return r;
}

}  // namespace

template <class Num>
CheckResult check_dominance(const Instance<Num>& instance,
                            const std::vector<DualCurve<Num>>& curves,
                            const Schedule<Num>& schedule) {
  return dominance_impl(instance, curves, schedule, false);
}

template <class Num>
CheckResult check_relaxed_dominance(const Instance<Num>& instance,
                                    const std::vector<DualCurve<Num>>& curves,
                                    const Schedule<Num>& schedule) {
  return dominance_impl(instance, curves, schedule, true);
}

template <class Num>
CheckResult check_prefix_fixed(const Schedule<Num>& projected,
                               const Schedule<Num>& final_schedule,
                               const Num& tau) {
  CheckResult r;
  r.name = "prefix-fixed";
  Schedule<Num> a = restrict_before(projected, tau);
  Schedule<Num> b = restrict_before(final_schedule, tau);
  if (a.segments != b.segments) {
    return fail<Num>(r, "schedule before t=" + format_num(tau) +
                            " changed after the release");
  }
  return r;
}

template <class Num>
CheckResult check_P1_P2(const Instance<Num>& instance, const DualRun<Num>& run,
                        const ReleaseSnapshot<Num>& snap) {
  return event_check(instance, run, snap, false);
}

template <class Num>
CheckResult check_Q1_Q2(const Instance<Num>& instance, const DualRun<Num>& run,
                        const ReleaseSnapshot<Num>& snap) {
  return event_check(instance, run, snap, true);
}

template <class Num>
CheckResult check_P3(const std::vector<DualCurve<Num>>& curves,
                     const Envelope<Num>& envelope, const Num& horizon) {
  CheckResult r;
  r.name = "P3";
  for (const auto& c : curves) {
    Num at = num_max(horizon, c.form.start);
    Num v = c(at);
    if (num_lt(Num(0), v)) {
      return fail<Num>(r, "t=" + format_num(at) + ": curve of job index " +
                              std::to_string(c.job) + " is " + format_num(v) +
                              " > 0 past C_max");
    }
  }
  if (num_lt(horizon, envelope.last_positive())) {
    return fail<Num>(r, "envelope positive until " +
                            format_num(envelope.last_positive()) +
                            " > C_max=" + format_num(horizon));
  }
  return r;
}

template <class Num>
CheckResult check_dual_feasible(const std::vector<DualCurve<Num>>& curves,
                                const Envelope<Num>& envelope) {
  CheckResult r;
  r.name = "dual-feasible";
  for (const auto& c : curves) {
    if (num_lt(c.lambda, Num(0))) {
      return fail<Num>(r, "lambda of job index " + std::to_string(c.job) +
                              " is negative");
    }
  }
  for (const auto& piece : envelope.pieces) {
    for (const auto& c : curves) {
      if (!(c.form.start < piece.end)) continue;
      Num lo = num_max(piece.start, c.form.start);
      if (piece.dominant) {
        const DualCurve<Num>& d = envelope.curves[*piece.dominant];
        auto [gap, at] = min_difference(d, c, lo, piece.end);
        if (num_lt(gap, Num(0))) {
          return fail<Num>(r, "t=" + format_num(at) + ": job index " +
                                  std::to_string(c.job) + " has lambda-gamma" +
                                  " above its cost by " + format_num(-gap));
        }
        if (num_lt(d(piece.end), Num(0))) {
          return fail<Num>(r, "t=" + format_num(piece.end) +
                                  ": envelope piece is negative");
        }
      } else {
        Num v = c(lo);
        if (num_lt(Num(0), v)) {
          return fail<Num>(r, "t=" + format_num(lo) + ": job index " +
                                  std::to_string(c.job) + " exceeds gamma=0 by " +
                                  format_num(v));
        }
      }
    }
  }
  // Past the last piece gamma is 0.
  Num end = envelope.horizon();
  for (const auto& c : curves) {
    Num at = num_max(end, c.form.start);
    Num v = c(at);
    if (num_lt(Num(0), v)) {
      return fail<Num>(r, "t=" + format_num(at) + ": job index " +
                              std::to_string(c.job) +
                              " positive past the envelope");
    }
  }
  return r;
}

template <class Num>
CheckResult check_psp_feasible(const Instance<Num>& instance,
                               const PspDuals<Num>& duals) {
  CheckResult r;
  r.name = "psp-dual-feasible";
  const auto& env = duals.mu;
  std::vector<Num> pts = env.breakpoints();
  for (const auto& seg : duals.surrogate.schedule.segments) {
    pts.push_back(seg.start);
    pts.push_back(seg.end);
  }
  for (const auto& j : instance.jobs()) pts.push_back(j.r);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job<Num>& job = instance.job(j);
    const auto& g = instance.cost(j);
    if (num_lt(duals.lambda[j], Num(0))) {
      return fail<Num>(r, job_name(instance, j) + " has negative lambda");
    }
    auto slack_at = [&](std::size_t row, const DualCurve<Num>* dom,
                        const Num& t) {
      Num mu = dom ? (*dom)(t) : Num(0);
      Num v = job.density() * g.value(t - job.r) - duals.lambda[j] +
              instance.demand(row, j) * mu;
      return v;
    };
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Num& a = pts[k];
      if (k + 1 == pts.size()) {
        // gamma = 0 from here on and the cost term only grows.
        if (a >= job.r) {
          Num v = slack_at(0, nullptr, a);
          if (num_lt(v, Num(0))) {
            return fail<Num>(r, "t=" + format_num(a) + ": " +
                                    job_name(instance, j) + " violates by " +
                                    format_num(-v));
          }
        }
        break;
      }
      const Num& b = pts[k + 1];
      if (!(job.r < b)) continue;
      Num lo = num_max(a, job.r);
      std::size_t row = duals.active_row(a);
      const DualCurve<Num>* dom = nullptr;
      for (const auto& piece : env.pieces) {
        if (piece.start <= a && a < piece.end && piece.dominant) {
          dom = &env.curves[*piece.dominant];
        }
      }
      // Affine in t on [lo, b] for linear g.
      for (const Num& t : {lo, b}) {
        Num v = slack_at(row, dom, t);
        if (num_lt(v, Num(0))) {
          return fail<Num>(r, "t=" + format_num(t) + ": " +
                                  job_name(instance, j) + " row " +
                                  std::to_string(row) + " violates by " +
                                  format_num(-v));
        }
      }
    }
  }
  return r;
}

template <class Num>
CheckResult check_increase_order(const DualRun<Num>& run) {
  CheckResult r;
  r.name = "increase-order";
  for (const auto& snap : run.snapshots) {
    std::vector<std::size_t> old;
    for (std::size_t j : snap.pending_order) {
      bool fresh = std::find(snap.released_now.begin(), snap.released_now.end(),
                             j) != snap.released_now.end();
      if (!fresh && snap.deltas[j]) old.push_back(j);
    }
    // pending_order is sorted by completion time.
    for (std::size_t x = 0; x + 1 < old.size(); ++x) {
      const Num& d1 = *snap.deltas[old[x]];
      const Num& d2 = *snap.deltas[old[x + 1]];
      const auto& c1 = snap.projected.completion[old[x]];
      const auto& c2 = snap.projected.completion[old[x + 1]];
      if (*c1 < *c2 && num_lt(d1, d2)) {
        return fail<Num>(r, "tau=" + format_num(snap.tau) + ": job index " +
                                std::to_string(old[x]) + " got " +
                                format_num(d1) + " < " + format_num(d2) +
                                " of job index " + std::to_string(old[x + 1]));
      }
    }
  }
  return r;
}

#define PDSCHED_INSTANTIATE(Num)                                              \
  template CheckResult check_dominance<Num>(                                  \
      const Instance<Num>&, const std::vector<DualCurve<Num>>&,               \
      const Schedule<Num>&);                                                  \
  template CheckResult check_relaxed_dominance<Num>(                          \
      const Instance<Num>&, const std::vector<DualCurve<Num>>&,               \
      const Schedule<Num>&);                                                  \
  template CheckResult check_prefix_fixed<Num>(                               \
      const Schedule<Num>&, const Schedule<Num>&, const Num&);                \
  template CheckResult check_P1_P2<Num>(                                      \
      const Instance<Num>&, const DualRun<Num>&, const ReleaseSnapshot<Num>&); \
  template CheckResult check_Q1_Q2<Num>(                                      \
      const Instance<Num>&, const DualRun<Num>&, const ReleaseSnapshot<Num>&); \
  template CheckResult check_P3<Num>(const std::vector<DualCurve<Num>>&,      \
                                     const Envelope<Num>&, const Num&);       \
  template CheckResult check_dual_feasible<Num>(                              \
      const std::vector<DualCurve<Num>>&, const Envelope<Num>&);              \
  template CheckResult check_psp_feasible<Num>(const Instance<Num>&,          \
                                               const PspDuals<Num>&);         \
  template CheckResult check_increase_order<Num>(const DualRun<Num>&);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
