#ifndef PDSCHED_CORE_OBJECTIVE_HPP_
#define PDSCHED_CORE_OBJECTIVE_HPP_

#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/schedule.hpp"

namespace pdsched {

// sum_j w_j g_j(C_j - r_j), or sum_j w_j g(C_j) for GCP.
template <class Num>
Num integral_cost(const Instance<Num>& instance, const Schedule<Num>& schedule);

// sum_j delta_j * integral of g(t - r_j) x_j(t) dt (g(t) for GCP).
template <class Num>
Num fractional_cost(const Instance<Num>& instance,
                    const Schedule<Num>& schedule);

// Per-job terms of fractional_cost.
template <class Num>
std::vector<Num> fractional_cost_by_job(const Instance<Num>& instance,
                                        const Schedule<Num>& schedule);

// sum_j integral over [r_j, C_j] of (w_j q_j(t) / p_j) g'(t - r_j) dt, where
// q_j is the remaining work. For GCP the cost origin is 0, so the constant
// w_j g(r_j) is added to keep the identity with fractional_cost.
template <class Num>
Num fractional_cost_remaining_weight_form(const Instance<Num>& instance,
                                          const Schedule<Num>& schedule);

}  // namespace pdsched

#endif  // PDSCHED_CORE_OBJECTIVE_HPP_
