#ifndef PDSCHED_DUALS_PSP_DUALS_HPP_
#define PDSCHED_DUALS_PSP_DUALS_HPP_

#include <vector>

#include "pdsched/duals/dual_run.hpp"
#include "pdsched/duals/envelope.hpp"

namespace pdsched {

// Duals for the packing problem, built on the single-machine surrogate with
// densities delta_j / b_j. The envelope mu' of the surrogate curves is put
// on the tight row of whichever job runs at t (row 0 while idle).
template <class Num>
struct PspDuals {
  DualRun<Num> surrogate;
  std::vector<Num> lambda;  // b_j * lambda'_j
  Envelope<Num> mu;
  std::vector<std::size_t> tight_row;
  std::size_t rows = 0;

  // Row of the packing dual carrying mu' at time t.
  std::size_t active_row(const Num& t) const;
  Num row_gamma(std::size_t row, const Num& t) const;
  // Sum over rows of the integral of gamma_i, which equals that of mu'.
  Num gamma_integral() const { return mu.integral(); }
};

template <class Num>
PspDuals<Num> psp_duals(const Instance<Num>& instance);

}  // namespace pdsched

#endif  // PDSCHED_DUALS_PSP_DUALS_HPP_
