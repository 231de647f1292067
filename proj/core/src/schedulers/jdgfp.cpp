#include "pdsched/schedulers/jdgfp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdsched/core/errors.hpp"
#include "pdsched/schedulers/policy.hpp"

namespace pdsched {

namespace {

double ipow(double x, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

std::vector<double> jdgfp_rates(const std::vector<double>& contributions,
                                int k) {
  std::vector<double> nu(contributions.size(), 0.0);
  if (contributions.empty()) return nu;
  double total = 0;
  for (double c : contributions) total += c;
  if (!(total > 0)) {
    nu.back() = 1.0;
    return nu;
  }
  double prefix = 0;
  double prev_share = 0;
  for (std::size_t j = 0; j < contributions.size(); ++j) {
    prefix += contributions[j];
    double share =
        j + 1 == contributions.size() ? 1.0 : ipow(prefix / total, k);
    nu[j] = std::max(0.0, share - prev_share);
    prev_share = share;
  }
  return nu;
}

double jdgfp_contribution(const Instance<double>& instance, std::size_t j,
                          double t, const JdgfpOptions& options) {
  const Job<double>& job = instance.job(j);
  double x = std::max(t - job.r, options.eta);
  return job.w * instance.cost(j).derivative(x);
}

std::vector<std::pair<double, double>> jdgfp_nodes(double origin, double t0,
                                                   double t1) {
  static const double kNode = 1.0 / std::sqrt(3.0);
  double u0 = std::sqrt(std::max(0.0, t0 - origin));
  double u1 = std::sqrt(std::max(0.0, t1 - origin));
  double mid = 0.5 * (u0 + u1);
  double half = 0.5 * (u1 - u0);
  std::vector<std::pair<double, double>> out;
  double total = 0;
  for (double s : {-kNode, kNode}) {
    double u = mid + s * half;
    out.emplace_back(origin + u * u, half * 2.0 * u);
    total += half * 2.0 * u;
  }
  // The weights integrate 1 exactly; renormalize against cancellation in
  // u1 - u0 on very short intervals.
  if (total > 0) {
    for (auto& node : out) node.second *= (t1 - t0) / total;
  }
  return out;
}

namespace {

// Integral of nu_j over [t0, t1] for every pending job.
std::vector<double> integrate_rates(const Instance<double>& instance,
                                    const std::vector<std::size_t>& pending,
                                    double origin, double t0, double t1, int k,
                                    const JdgfpOptions& options) {
  std::vector<double> out(pending.size(), 0.0);
  std::vector<double> c(pending.size());
  for (const auto& [t, weight] : jdgfp_nodes(origin, t0, t1)) {
    for (std::size_t i = 0; i < pending.size(); ++i) {
      c[i] = jdgfp_contribution(instance, pending[i], t, options);
    }
    std::vector<double> nu = jdgfp_rates(c, k);
    for (std::size_t i = 0; i < pending.size(); ++i) out[i] += weight * nu[i];
  }
  return out;
}

}  // namespace

JdgfpRun simulate_jdgfp(const Instance<double>& instance, const Rational& eps,
                        double speed, const JdgfpOptions& options) {
  if (!(speed > 0)) throw Error(ErrorCode::kInvalidInput, "speed must be > 0");
  JdgfpRun run;
  run.k = jdgfp_exponent(eps);
  run.options = options;
  const std::size_t n = instance.size();
  Schedule<double>& schedule = run.schedule;
  schedule.speed = speed;
  schedule.completion.assign(n, std::nullopt);
  if (n == 0) return run;

  double min_p = std::numeric_limits<double>::infinity();
  for (const auto& j : instance.jobs()) min_p = std::min(min_p, j.p);
  const double step = options.step_fraction * min_p;
  const double tol = options.completion_tolerance;

  std::vector<double> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = instance.job(j).p;
  std::vector<std::size_t> pending;  // kept in index order = (r, id) order
  std::size_t next = 0;
  double t = 0;
  double origin = 0;

  auto admit = [&]() {
    bool any = false;
    while (next < n && instance.job(next).r <= t) {
      pending.push_back(next++);
      any = true;
    }
    if (any) origin = t;
  };
  auto push = [&](double a, double b, std::vector<Allocation<double>> alloc) {
    if (!(a < b)) return;
    schedule.segments.push_back(Segment<double>{a, b, std::move(alloc)});
    run.origin.push_back(origin);
  };

  admit();
  while (next < n || !pending.empty()) {
    if (pending.empty()) {
      double r = instance.job(next).r;
      push(t, r, {});
      t = r;
      admit();
      continue;
    }
    double window_end = next < n ? instance.job(next).r
                                 : std::numeric_limits<double>::infinity();
    double t1 = std::min(t + step, window_end);
    if (window_end - t1 < 1e-6 * step) t1 = window_end;  // no slivers
    std::vector<double> integral =
        integrate_rates(instance, pending, origin, t, t1, run.k, options);

    // Earliest completion inside the step, if any.
    double stop = t1;
    std::size_t finisher = pending.size();
    for (std::size_t i = 0; i < pending.size(); ++i) {
      double left = remaining[pending[i]] - speed * integral[i];
      if (left > tol) continue;
      double lo = t, hi = t1;
      double found = t1;
      if (left < -tol) {
        int iter = 0;
        for (;; ++iter) {
          if (iter >= options.max_bisection) {
            throw Error(ErrorCode::kStepUnderflow,
                        "completion bisection did not converge");
          }
          double mid = 0.5 * (lo + hi);
          std::vector<double> part =
              integrate_rates(instance, pending, origin, t, mid, run.k, options);
          double f = remaining[pending[i]] - speed * part[i];
          if (std::fabs(f) <= tol) {
            found = mid;
            break;
          }
          if (f > 0) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
      }
      if (found < stop || finisher == pending.size()) {
        if (found <= stop) {
          stop = found;
          finisher = i;
        }
      }
    }
    if (stop < t1) {
      integral = integrate_rates(instance, pending, origin, t, stop, run.k,
                                 options);
    }
    double len = stop - t;
    std::vector<Allocation<double>> alloc;
    std::vector<std::size_t> still;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      std::size_t j = pending[i];
      double work = speed * integral[i];
      bool done = i == finisher || remaining[j] - work <= tol;
      // Rates come from the integrated shares even for a finisher, so the
      // machine is never overloaded by the completion tolerance.
      if (work > 0) alloc.push_back(Allocation<double>{j, work / len});
      remaining[j] -= work;
      if (done) {
        remaining[j] = 0;
        schedule.completion[j] = stop;
      } else {
        still.push_back(j);
      }
    }
    push(t, stop, std::move(alloc));
    pending = std::move(still);
    t = stop;
    if (t >= window_end) {
      t = window_end;
      admit();
    }
  }
  return run;
}

}  // namespace pdsched
