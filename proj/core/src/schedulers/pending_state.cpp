#include "pdsched/schedulers/pending_state.hpp"

namespace pdsched {

template <class Num>
PendingState<Num> pending_state(const Instance<Num>& instance,
                                const Schedule<Num>& projected, const Num& tau,
                                std::size_t released) {
  PendingState<Num> state;
  state.tau = tau;
  state.horizon = tau;
  Schedule<Num> before = restrict_before(projected, tau);
  std::vector<Num> done = processed_work(before, instance.size());
  for (std::size_t j = 0; j < released && j < instance.size(); ++j) {
    state.released.push_back(j);
    const auto& c = projected.completion[j];
    if (c && *c > state.horizon) state.horizon = *c;
    if (c && *c <= tau) {
      state.completed.push_back(j);
    } else {
      Num q = instance.job(j).p - done[j];
      state.pending.push_back(PendingJob<Num>{j, q});
    }
  }
  return state;
}

template PendingState<Rational> pending_state<Rational>(
    const Instance<Rational>&, const Schedule<Rational>&, const Rational&,
    std::size_t);
template PendingState<double> pending_state<double>(const Instance<double>&,
                                                    const Schedule<double>&,
                                                    const double&, std::size_t);

}  // namespace pdsched
