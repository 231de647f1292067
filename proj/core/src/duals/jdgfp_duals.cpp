#include "pdsched/duals/jdgfp_duals.hpp"

#include "pdsched/core/objective.hpp"

namespace pdsched {

namespace {

// Jobs pending throughout [t0, t1), in (r, id) order.
std::vector<std::size_t> pending_during(const Instance<double>& instance,
                                        const JdgfpRun& run, double t0) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const auto& c = run.schedule.completion[j];
    if (instance.job(j).r <= t0 && c && *c > t0) out.push_back(j);
  }
  return out;
}

}  // namespace

JdgfpDuals jdgfp_duals(const Instance<double>& instance, const JdgfpRun& run) {
  JdgfpDuals out;
  out.k = run.k;
  const std::size_t n = instance.size();
  std::vector<double> lp(n, 0.0);
  for (std::size_t s = 0; s < run.schedule.segments.size(); ++s) {
    const auto& seg = run.schedule.segments[s];
    if (seg.idle()) continue;
    std::vector<std::size_t> pending = pending_during(instance, run, seg.start);
    std::vector<double> c(pending.size());
    for (const auto& [t, weight] :
         jdgfp_nodes(run.origin[s], seg.start, seg.end)) {
      double total = 0;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        c[i] = jdgfp_contribution(instance, pending[i], t, run.options);
        total += c[i];
      }
      out.total_contribution += weight * total;
      std::vector<double> nu = jdgfp_rates(c, run.k);
      double prefix = 0;
      double nu_before = 0;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        prefix += c[i];
        lp[pending[i]] += weight * (nu[i] * prefix + c[i] * nu_before);
        nu_before += nu[i];
      }
    }
  }
  out.lambda.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.lambda[j] = lp[j] / (run.k + 1) / instance.job(j).p;
  }
  if (n > 0) out.cost = integral_cost(instance, run.schedule);
  return out;
}

double jdgfp_total_rate(const Instance<double>& instance, const JdgfpRun& run,
                        double t) {
  double total = 0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const auto& c = run.schedule.completion[j];
    if (instance.job(j).r <= t && c && t < *c) {
      total += jdgfp_contribution(instance, j, t, run.options);
    }
  }
  return total;
}

}  // namespace pdsched
