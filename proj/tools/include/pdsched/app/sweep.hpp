#ifndef PDSCHED_APP_SWEEP_HPP_
#define PDSCHED_APP_SWEEP_HPP_

#include <string>
#include <vector>

#include "pdsched/app/config.hpp"

namespace pdsched::app {

struct SweepRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string algorithm;
  std::string eps;
  std::string primal_int;
  std::string primal_frac;
  std::string dual;
  std::string ratio;
  std::string slack;
  bool all_pass = false;
  std::string mode;  // exact or float; empty when the run failed
  std::string failure;  // first failing check or error message
  int exit_code = 0;
};

struct SweepResult {
  std::string hash;
  std::vector<SweepRow> rows;

  bool all_pass() const;
  // Worst exit code over the rows.
  int exit_code() const;
  std::string csv() const;
};

// Worker count from PDSCHED_WORKERS, else the hardware concurrency.
unsigned sweep_workers();

// One row per (seed, eps). Rows come back in seed order whatever the
// worker count.
SweepResult sweep(const ExperimentConfig& config, unsigned workers = 0);

}  // namespace pdsched::app

#endif  // PDSCHED_APP_SWEEP_HPP_
