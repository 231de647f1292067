#include "pdsched/app/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdsched/app/config.hpp"
#include "pdsched/core/errors.hpp"
#include "pdsched/core/json_io.hpp"
#include "pdsched/schedulers/policy.hpp"

namespace pdsched::app {

int RunReport::exit_code() const {
  if (certificate.pass()) return kExitPass;
  return certificate.oracle_mismatch() ? kExitOracle : kExitProperty;
}

nlohmann::json RunReport::certificate_json() const {
  nlohmann::json out = certificate.to_json();
  out["config_hash"] = hash;
  out["config"] = config;
  return out;
}

std::set<std::string> parse_checks(const std::string& list) {
  static const std::set<std::string> kKnown{"p", "q", "feasible", "oracle",
                                            "jdgfp"};
  std::set<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (!kKnown.count(item)) {
      throw Error(ErrorCode::kInvalidInput, "unknown check '" + item + "'");
    }
    out.insert(item);
  }
  return out;
}

ArithmeticMode resolve_mode(const InstanceSpec& spec, const std::string& mode) {
  ArithmeticMode natural = spec.natural_mode();
  if (spec.problem == Problem::kJdgfp) natural = ArithmeticMode::kFloat;
  if (mode == "auto") return natural;
  if (mode == "float") return ArithmeticMode::kFloat;
  if (mode != "exact") {
    throw Error(ErrorCode::kInvalidInput, "unknown mode '" + mode + "'");
  }
  if (natural != ArithmeticMode::kExact) {
    throw Error(ErrorCode::kUnsupportedInExactMode,
                "this instance needs floating point (irrational cost shape or "
                "jdgfp quadrature)");
  }
  return ArithmeticMode::kExact;
}

namespace {

template <class Num>
nlohmann::json ids(const Instance<Num>& instance,
                   const std::vector<std::size_t>& idx) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t j : idx) out.push_back(instance.job(j).id);
  return out;
}

template <class Num>
nlohmann::json by_id(const Instance<Num>& instance, const std::vector<Num>& v,
                     std::size_t count) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t j = 0; j < count && j < v.size(); ++j) {
    out[std::to_string(instance.job(j).id)] = num_to_json(v[j]);
  }
  return out;
}

template <class Num>
nlohmann::json trace_json(const Instance<Num>& instance, const DualRun<Num>& run) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& s : run.snapshots) {
    nlohmann::json deltas = nlohmann::json::object();
    for (std::size_t j = 0; j < s.deltas.size(); ++j) {
      if (s.deltas[j]) {
        deltas[std::to_string(instance.job(j).id)] = num_to_json(*s.deltas[j]);
      }
    }
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& set : s.sets) sets.push_back(ids(instance, set));
    events.push_back({{"tau", num_to_json(s.tau)},
                      {"released", ids(instance, s.released_now)},
                      {"lambda_before", by_id(instance, s.before, s.released)},
                      {"lambda_after", by_id(instance, s.after, s.released)},
                      {"deltas", deltas},
                      {"sets", sets},
                      {"frozen", ids(instance, s.frozen)},
                      {"pending_order", ids(instance, s.pending_order)},
                      {"procedure5_events", s.procedure5_events}});
  }
  return {{"method", std::string(to_string(run.method))},
          {"lambda", by_id(instance, run.lambda, run.lambda.size())},
          {"events", events}};
}

// t,gamma,dominant_job with 200 samples per piece plus every breakpoint.
template <class Num>
std::string envelope_csv(const Instance<Num>& instance, const Envelope<Num>& env) {
  constexpr int kSamples = 200;
  std::string out = "t,gamma,dominant_job\n";
  auto row = [&](double t, double v, const std::optional<std::size_t>& dom) {
    out += format_double(t);
    out += ',';
    out += format_double(v);
    out += ',';
    if (dom) out += std::to_string(instance.job(env.curves[*dom].job).id);
    out += '\n';
  };
  for (const auto& piece : env.pieces) {
    double a = to_double(piece.start);
    double b = to_double(piece.end);
    for (int s = 0; s < kSamples; ++s) {
      double t = a + (b - a) * s / kSamples;
      double v = 0;
      if (piece.dominant) {
        if (s == 0) {
          v = to_double(env.curves[*piece.dominant](piece.start));
        } else {
          v = to_double(env.curves[*piece.dominant](from_double<Num>(t)));
        }
      }
      row(t, v, piece.dominant);
    }
  }
  if (!env.pieces.empty()) {
    const auto& last = env.pieces.back();
    double v = last.dominant
                   ? to_double(env.curves[*last.dominant](last.end))
                   : 0.0;
    row(to_double(last.end), v, last.dominant);
  }
  return out;
}

CertifyOptions certify_options(const RunOptions& o) {
  CertifyOptions c;
  c.eps = o.eps;
  c.properties = o.checks.count("p") || o.checks.count("q");
  c.feasible = o.checks.count("feasible") > 0;
  c.oracle = o.checks.count("oracle") > 0;
  return c;
}

template <class Num>
RunReport run_typed(const InstanceSpec& spec, const RunOptions& options) {
  Instance<Num> instance(spec);
  PolicyKind policy = parse_policy(options.algorithm);
  CertifyOptions copts = certify_options(options);
  RunReport report;
  report.mode = mode_of<Num>();
  if constexpr (!kIsExact<Num>) {
    if (spec.problem == Problem::kJdgfp) {
      if (policy != PolicyKind::kJdgfpRate) {
        throw Error(ErrorCode::kOutOfTheoremScope,
                    "jdgfp instances are run with --alg jdgfp");
      }
      if (options.want_envelope) {
        throw Error(ErrorCode::kInvalidInput,
                    "--plot-envelope is not available for jdgfp");
      }
      JdgfpArtifacts art;
      report.certificate = certify_jdgfp(instance, copts, &art);
      report.schedule = schedule_to_json(instance, art.run.schedule);
      report.trace = {{"method", "rate-rule"},
                      {"k", art.run.k},
                      {"lambda", by_id(instance, art.lambda, art.lambda.size())}};
      return report;
    }
  }
  if (policy == PolicyKind::kJdgfpRate) {
    throw Error(ErrorCode::kOutOfTheoremScope,
                "--alg jdgfp needs a jdgfp instance");
  }
  CertifyArtifacts<Num> art;
  report.certificate = certify(instance, policy, copts, &art);
  report.schedule = schedule_to_json(instance, art.schedule);
  if (art.psp) {
    report.trace = trace_json(instance, art.psp->surrogate);
    report.trace["lambda"] =
        by_id(instance, art.psp->lambda, art.psp->lambda.size());
  } else if (art.run) {
    report.trace = trace_json(instance, *art.run);
  }
  if (options.want_envelope && art.envelope) {
    report.envelope_csv = envelope_csv(instance, *art.envelope);
  }
  return report;
}

}  // namespace

RunReport run_instance(const InstanceSpec& spec, const RunOptions& options) {
  ArithmeticMode mode = resolve_mode(spec, options.mode);
  nlohmann::json echo = options.config;
  echo["instance"] = instance_to_json(spec);
  echo["algorithm"] = options.algorithm;
  echo["eps"] = rational_to_json(options.eps);
  echo["checks"] = std::vector<std::string>(options.checks.begin(),
                                            options.checks.end());
  echo["mode"] = std::string(to_string(mode));
  RunReport report = mode == ArithmeticMode::kExact
                         ? run_typed<Rational>(spec, options)
                         : run_typed<double>(spec, options);
  report.hash = config_hash(echo);
  report.config = echo;
  report.schedule["config_hash"] = report.hash;
  report.trace["config_hash"] = report.hash;
  report.trace["mode"] = std::string(to_string(mode));
  return report;
}

void write_outputs(const RunReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::filesystem::path dir(out_dir);
  save_json((dir / "schedule.json").string(), report.schedule);
  save_json((dir / "dual_trace.json").string(), report.trace);
  save_json((dir / "certificate.json").string(), report.certificate_json());
}

}  // namespace pdsched::app
