#ifndef PDSCHED_APP_RUNNER_HPP_
#define PDSCHED_APP_RUNNER_HPP_

#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "pdsched/core/instance.hpp"
#include "pdsched/verify/certificate.hpp"

namespace pdsched::app {

enum ExitCode { kExitPass = 0, kExitError = 1, kExitProperty = 2, kExitOracle = 3 };

struct RunOptions {
  std::string algorithm = "hdf";
  Rational eps = 1;
  // Any of p, q, feasible, oracle, jdgfp. p and q both select the property
  // family matching the dual method.
  std::set<std::string> checks{"p", "q", "feasible"};
  std::string mode = "auto";
  bool want_envelope = false;
  // Echoed into every output next to its hash.
  nlohmann::json config;
};

struct RunReport {
  Certificate certificate;
  ArithmeticMode mode = ArithmeticMode::kExact;
  std::string hash;
  nlohmann::json config;  // echo of everything that produced this run
  nlohmann::json schedule;
  nlohmann::json trace;
  std::string envelope_csv;  // when requested

  int exit_code() const;
  nlohmann::json certificate_json() const;
};

std::set<std::string> parse_checks(const std::string& list);
ArithmeticMode resolve_mode(const InstanceSpec& spec, const std::string& mode);

RunReport run_instance(const InstanceSpec& spec, const RunOptions& options);

// Writes schedule.json, dual_trace.json and certificate.json.
void write_outputs(const RunReport& report, const std::string& out_dir);

}  // namespace pdsched::app

#endif  // PDSCHED_APP_RUNNER_HPP_
