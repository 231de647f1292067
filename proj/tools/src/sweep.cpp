#include "pdsched/app/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "pdsched/app/runner.hpp"
#include "pdsched/core/errors.hpp"

namespace pdsched::app {

namespace {

const char* kHeader =
    "seed,n,algorithm,eps,primal_int,primal_frac,dual,ratio,slack,all_pass,"
    "mode,failure\n";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string value_of(const Certificate& cert, const char* key) {
  auto it = cert.values.find(key);
  return it == cert.values.end() ? std::string() : it->second.text;
}

SweepRow run_row(const ExperimentConfig& config, std::uint64_t seed,
                 const Rational& eps) {
  SweepRow row;
  row.seed = seed;
  row.algorithm = config.algorithm;
  row.eps = format_rational(eps);
  try {
    InstanceSpec spec = generate(config, seed);
    row.n = spec.jobs.size();
    RunOptions options;
    options.algorithm = config.algorithm;
    options.eps = eps;
    options.checks = std::set<std::string>(config.checks.begin(),
                                           config.checks.end());
    options.mode = config.mode;
    RunReport report = run_instance(spec, options);
    const Certificate& cert = report.certificate;
    row.primal_int = value_of(cert, "primal_integral");
    row.primal_frac = value_of(cert, "primal_fractional");
    row.dual = value_of(cert, "dual_objective");
    if (row.dual.empty()) row.dual = value_of(cert, "dual_objective_speed");
    row.ratio = value_of(cert, "ratio");
    row.slack = value_of(cert, "slack");
    row.all_pass = cert.pass();
    row.mode = std::string(to_string(report.mode));
    if (const CheckResult* f = cert.first_failure()) {
      row.failure = f->name + ": " + f->witness;
    }
    row.exit_code = report.exit_code();
  } catch (const Error& e) {
    row.all_pass = false;
    row.failure = e.what();
    row.exit_code = kExitError;
  }
  return row;
}

}  // namespace

bool SweepResult::all_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.all_pass; });
}

int SweepResult::exit_code() const {
  int code = kExitPass;
  for (const auto& r : rows) code = std::max(code, r.exit_code);
  return code;
}

std::string SweepResult::csv() const {
  std::string out = "# config_hash=" + hash + "\n";
  out += kHeader;
  for (const auto& r : rows) {
    out += std::to_string(r.seed) + ',' + std::to_string(r.n) + ',' +
           r.algorithm + ',' + r.eps + ',' + r.primal_int + ',' +
           r.primal_frac + ',' + r.dual + ',' + r.ratio + ',' + r.slack + ',' +
           (r.all_pass ? "true" : "false") + ',' + r.mode + ',' +
           csv_field(r.failure) + '\n';
  }
  return out;
}

unsigned sweep_workers() {
  if (const char* env = std::getenv("PDSCHED_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult sweep(const ExperimentConfig& config, unsigned workers) {
  config.validate();
  SweepResult result;
  result.hash = config_hash(config.to_json());
  const std::size_t per_seed = config.eps.size();
  const std::size_t total = static_cast<std::size_t>(config.seeds) * per_seed;
  result.rows.resize(total);
  if (workers == 0) workers = sweep_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < total; i = next++) {
      std::uint64_t seed = config.seed + i / per_seed;
      result.rows[i] = run_row(config, seed, config.eps[i % per_seed]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return result;
}

}  // namespace pdsched::app
