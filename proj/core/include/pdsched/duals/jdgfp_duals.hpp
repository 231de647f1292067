#ifndef PDSCHED_DUALS_JDGFP_DUALS_HPP_
#define PDSCHED_DUALS_JDGFP_DUALS_HPP_

#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/schedulers/jdgfp.hpp"

namespace pdsched {

// Duals of the rate rule; gamma is identically 0.
struct JdgfpDuals {
  int k = 1;
  // lambda_j p_j = 1/(k+1) * integral over [r_j, C_j] of
  //   nu_j P_j + c_j * sum_{a before j} nu_a,
  // with c_a = w_a g'_a(t - r_a) and P_j the prefix sum of c.
  std::vector<double> lambda;
  double total_contribution = 0;  // integral of G(t)
  double cost = 0;                // sum of w_j g_j(C_j - r_j)
};

// Integrated with the same nodes the simulation used.
JdgfpDuals jdgfp_duals(const Instance<double>& instance, const JdgfpRun& run);

// G(t): total contribution rate of the jobs pending at t.
double jdgfp_total_rate(const Instance<double>& instance, const JdgfpRun& run,
                        double t);

}  // namespace pdsched

#endif  // PDSCHED_DUALS_JDGFP_DUALS_HPP_
