#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pdsched/app/config.hpp"
#include "pdsched/app/runner.hpp"
#include "pdsched/app/sweep.hpp"
#include "pdsched/core/errors.hpp"
#include "pdsched/core/json_io.hpp"

namespace {

using namespace pdsched;
using namespace pdsched::app;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  out << text;
}

std::string mode_flag(bool exact, bool flt) {
  if (exact) return "exact";
  if (flt) return "float";
  return "auto";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online scheduling with primal-dual certificates"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance from a config");
  std::string gen_config, gen_out;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("config", gen_config, "Experiment config JSON")->required();
  gen->add_option("--seed", gen_seed, "Override the config seed");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Schedule one instance and certify it");
  std::string run_instance_path, alg = "hdf", eps_text = "1",
                                 checks = "p,q,feasible", plot, out_dir;
  bool exact = false, flt = false;
  run->add_option("instance", run_instance_path, "Instance JSON")->required();
  run->add_option("--alg", alg, "hdf, fifo, lifo, psp or jdgfp");
  run->add_option("--eps", eps_text, "Speed augmentation epsilon");
  run->add_option("--checks,--check", checks,
                  "Comma list of p, q, feasible, oracle, jdgfp");
  run->add_option("--plot-envelope", plot, "Write the envelope as CSV");
  run->add_option("--out-dir", out_dir,
                  "Directory for schedule, dual trace and certificate JSON");
  auto* ex = run->add_flag("--exact", exact, "Rational arithmetic");
  run->add_flag("--float", flt, "Double arithmetic")->excludes(ex);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Run a seeded experiment sweep");
  std::string sweep_config, sweep_out, sweep_alg, sweep_eps, sweep_checks;
  bool sw_exact = false, sw_float = false;
  sw->add_option("config", sweep_config, "Experiment config JSON")->required();
  sw->add_option("-o,--out", sweep_out, "CSV report (default stdout)");
  sw->add_option("--alg", sweep_alg, "Override the config algorithm");
  sw->add_option("--eps", sweep_eps, "Override the config eps list (comma list)");
  sw->add_option("--checks,--check", sweep_checks, "Override the config checks");
  auto* swex = sw->add_flag("--exact", sw_exact, "Rational arithmetic");
  sw->add_flag("--float", sw_float, "Double arithmetic")->excludes(swex);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      ExperimentConfig config = ExperimentConfig::from_json(read_json(gen_config));
      std::uint64_t seed = gen_seed.value_or(config.seed);
      nlohmann::json out = instance_to_json(generate(config, seed));
      nlohmann::json echo = config.to_json();
      echo["seed"] = seed;
      out["config"] = echo;
      out["config_hash"] = config_hash(echo);
      if (gen_out.empty()) {
        std::cout << out.dump(2) << '\n';
      } else {
        save_json(gen_out, out);
      }
      return kExitPass;
    }
    if (*run) {
      InstanceSpec spec = instance_from_json(read_json(run_instance_path));
      spec.validate();
      RunOptions options;
      options.algorithm = alg;
      options.eps = parse_rational(eps_text);
      options.checks = parse_checks(checks);
      options.mode = mode_flag(exact, flt);
      options.want_envelope = !plot.empty();
      RunReport report = run_instance(spec, options);
      if (!out_dir.empty()) write_outputs(report, out_dir);
      if (!plot.empty()) write_text(plot, report.envelope_csv);
      std::cout << report.certificate_json().dump(2) << '\n';
      if (const CheckResult* f = report.certificate.first_failure()) {
        std::cerr << "FAIL " << f->name << ": " << f->witness << '\n';
      }
      return report.exit_code();
    }
    if (*sw) {
      ExperimentConfig config = ExperimentConfig::from_json(read_json(sweep_config));
      if (!sweep_alg.empty()) config.algorithm = sweep_alg;
      if (!sweep_eps.empty()) {
        config.eps.clear();
        std::stringstream in(sweep_eps);
        std::string item;
        while (std::getline(in, item, ',')) config.eps.push_back(parse_rational(item));
      }
      if (!sweep_checks.empty()) {
        std::set<std::string> c = parse_checks(sweep_checks);
        config.checks.assign(c.begin(), c.end());
      }
      if (sw_exact || sw_float) config.mode = mode_flag(sw_exact, sw_float);
      SweepResult result = sweep(config);
      if (sweep_out.empty()) {
        std::cout << result.csv();
      } else {
        write_text(sweep_out, result.csv());
      }
      return result.exit_code();
    }
  } catch (const Error& e) {
    std::cerr << "error " << e.what() << '\n';
    return kExitError;
  }
  return kExitPass;
}
