#ifndef PDSCHED_SCHEDULERS_JDGFP_HPP_
#define PDSCHED_SCHEDULERS_JDGFP_HPP_

#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/schedule.hpp"

namespace pdsched {

struct JdgfpOptions {
  // g' is evaluated at max(t - r, eta) to keep t^c, c < 1, finite at release.
  double eta = 1e-9;
  // Step length as a fraction of the smallest processing time.
  double step_fraction = 1e-3;
  double completion_tolerance = 1e-10;
  int max_bisection = 200;
};

// Rate shares nu_j for pending jobs given in (r, id) order with contribution
// rates c_a = w_a g'_a(t - r_a): with P_j the prefix sum of c up to j and G
// the total, nu_j = (P_j / G)^k - (P_{j-1} / G)^k.
std::vector<double> jdgfp_rates(const std::vector<double>& contributions,
                                int k);

// Contribution rate of job j at time t.
double jdgfp_contribution(const Instance<double>& instance, std::size_t j,
                          double t, const JdgfpOptions& options);

struct JdgfpRun {
  int k = 1;
  JdgfpOptions options;
  Schedule<double> schedule;
  // Per segment: the last release time at or before its start. Quadrature
  // runs in u with t = origin + u^2, which removes the sqrt singularity of
  // freshly released t^c jobs.
  std::vector<double> origin;
};

// Two-point Gauss-Legendre nodes (t, weight) for the integral over [t0, t1]
// in the substituted variable; the weights include dt/du.
std::vector<std::pair<double, double>> jdgfp_nodes(double origin, double t0,
                                                   double t1);

JdgfpRun simulate_jdgfp(const Instance<double>& instance, const Rational& eps,
                        double speed, const JdgfpOptions& options = {});

}  // namespace pdsched

#endif  // PDSCHED_SCHEDULERS_JDGFP_HPP_
