#ifndef PDSCHED_ORACLE_SLOT_LP_HPP_
#define PDSCHED_ORACLE_SLOT_LP_HPP_

#include <string>
#include <vector>

#include "pdsched/core/instance.hpp"
#include "pdsched/oracle/simplex.hpp"

namespace pdsched {

enum class SlotCost {
  kMidpoint,    // delta_j * a * (slot midpoint - r_j); exact for linear g
  kLowerBound,  // delta_j * g(slot start - r_j); a lower bound for any g
};

struct SlotLpLimits {
  std::size_t max_slots = 400;
  std::size_t max_variables = 2000;
};

// Time-indexed relaxation: y[j][t] units of job j in slot
// [t h, (t+1) h), at most speed * h per slot.
template <class Num>
struct SlotLp {
  Num width{};
  Num speed{};
  SlotCost cost = SlotCost::kLowerBound;
  std::size_t slots = 0;
  std::vector<std::size_t> first_slot;  // per job
  // Variable index of (j, t) is offset[j] + t - first_slot[j].
  std::vector<std::size_t> offset;
  LpProblem<Num> problem;
  std::vector<std::string> names;
};

template <class Num>
struct SlotLpResult {
  Num value{};
  // y[j][t] over all slots (zero before release).
  std::vector<std::vector<Num>> y;
  long pivots = 0;
};

// Midpoint costs are used automatically for linear g. Throws TooLarge past
// the limits, InvalidInput when release times are not multiples of h.
template <class Num>
SlotLp<Num> build_slot_lp(const Instance<Num>& instance, const Num& width,
                          const Num& speed, const SlotLpLimits& limits = {});

template <class Num>
SlotLpResult<Num> solve_slot_lp(const SlotLp<Num>& lp);

// Solves the same relaxation by filling slots in time order with the
// densest released work. Only valid with midpoint costs.
template <class Num>
SlotLpResult<Num> solve_slot_lp_greedy(const Instance<Num>& instance,
                                       const SlotLp<Num>& lp);

template <class Num>
SlotLpResult<Num> lp_lower_bound(const Instance<Num>& instance,
                                 const Num& width, const Num& speed,
                                 const SlotLpLimits& limits = {});

// CPLEX LP text format.
template <class Num>
std::string dump_lp(const SlotLp<Num>& lp);

}  // namespace pdsched

#endif  // PDSCHED_ORACLE_SLOT_LP_HPP_
