// Property-based acceptance run. One line per criterion; exit status 1 when
// any criterion fails for a reason not listed as known.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdsched/app/config.hpp"
#include "pdsched/app/runner.hpp"
#include "pdsched/app/sweep.hpp"
#include "pdsched/core/errors.hpp"

using namespace pdsched;
using app::ExperimentConfig;
using nlohmann::json;

namespace {

struct Tally {
  long total = 0;
  long failed = 0;
  std::string witness;

  void add(bool ok, const std::string& where, const std::string& why) {
    ++total;
    if (ok) return;
    if (failed++ == 0) witness = where + ": " + why;
  }
};

struct Criterion {
  int id = 0;
  std::string title;
  Tally tally;
  std::vector<std::string> notes;
  // Failures expected for a documented reason; reported red, not fatal.
  std::string known;
  bool extra_fail = false;

  bool pass() const { return tally.failed == 0 && !extra_fail; }
};

std::map<int, Criterion> criteria;

Criterion& crit(int id) { return criteria.at(id); }

const CheckResult* find_check(const Certificate& c, const std::string& name) {
  return c.find(name);
}

// Records the named check if the certificate carries it; `required` makes a
// missing check a failure.
void record(int id, const Certificate& c, const std::string& name,
            const std::string& where, bool required = true) {
  const CheckResult* r = find_check(c, name);
  if (!r) {
    if (required) crit(id).tally.add(false, where, "no " + name + " check");
    return;
  }
  crit(id).tally.add(r->pass, where, name + ": " + r->witness);
}

Rational exact_value(const Certificate& c, const std::string& name) {
  return parse_rational(c.values.at(name).text);
}

struct Protocol {
  std::string name;
  json config;
  std::vector<int> criteria;  // beyond 10 and 11, which apply everywhere
};

json base(const char* problem, const char* algorithm, json g) {
  return json{{"seed", 1},        {"seeds", 200},    {"n", 10},
              {"n_min", 1},       {"problem", problem}, {"g", g},
              {"r_max", 20},      {"p_max", 20},     {"w_max", 20},
              {"algorithm", algorithm},
              {"eps", {"1/10", "1/2", "1"}},
              {"checks", {"p", "q", "feasible"}}};
}

const json kLinear = {{"shape", "linear"}};
const json kSquare = {{"shape", "power"}, {"exponent", 2}};
const json kSqrt = {{"shape", "power"}, {"exponent", "1/2"}};
const json kLog = {{"shape", "log"}};
const json kConcavePl = {{"shape", "piecewise_linear"},
                         {"points", {{0, 0}, {2, 4}, {6, 8}, {16, 10}}}};

std::vector<Protocol> protocols() {
  std::vector<Protocol> out;
  out.push_back({"hdf-linear", base("gfp", "hdf", kLinear), {1, 4, 5, 6}});
  out.push_back({"gcp-linear", base("gcp", "hdf", kLinear), {2, 4, 5}});
  out.push_back({"gcp-square", base("gcp", "hdf", kSquare), {2, 4, 5}});

  json fifo = base("gfp", "fifo", kSquare);
  fifo["equal_density"] = 1;
  out.push_back({"fifo-square-equal", fifo, {3, 4, 5}});
  json lifo = base("gfp", "lifo", kConcavePl);
  lifo["equal_density"] = 1;
  out.push_back({"lifo-concave-equal", lifo, {3, 4, 5}});

  out.push_back({"hdf-concave-pl", base("gfp", "hdf", kConcavePl), {4, 5}});
  out.push_back({"hdf-sqrt", base("gfp", "hdf", kSqrt), {4, 5}});
  out.push_back({"hdf-log", base("gfp", "hdf", kLog), {4, 5}});

  json fifo_pl = base("gfp", "fifo", kConcavePl);
  fifo_pl["equal_density"] = 2;
  out.push_back({"fifo-general-pl-equal", fifo_pl, {4, 5}});
  json fifo_log = base("gfp", "fifo", kLog);
  fifo_log["equal_density"] = 1;
  out.push_back({"fifo-general-log-equal", fifo_log, {4, 5}});

  auto oracle = [](const char* alg, json g) {
    json c = base("gfp", alg, g);
    c["seeds"] = 100;
    c["n"] = 4;
    c["r_max"] = 6;
    c["p_max"] = 4;
    c["w_max"] = 10;
    c["eps"] = {"1"};
    c["checks"] = {"p", "q", "feasible", "oracle"};
    return c;
  };
  out.push_back({"oracle-linear", oracle("hdf", kLinear), {7}});
  json org = oracle("fifo", kSquare);
  org["equal_density"] = 1;
  org["seed"] = 1001;
  out.push_back({"oracle-fifo-square", org, {-7}});
  json orc = oracle("hdf", kConcavePl);
  orc["seed"] = 2001;
  out.push_back({"oracle-hdf-concave-pl", orc, {-7}});

  json psp = base("psp", "psp", kLinear);
  psp["seeds"] = 100;
  psp["n"] = 6;
  psp["r_max"] = 10;
  psp["p_max"] = 10;
  psp["w_max"] = 10;
  psp["rows"] = 3;
  psp["demand_max"] = 4;
  psp["eps"] = {"1"};
  out.push_back({"psp", psp, {8}});

  json jd = base("jdgfp", "jdgfp", kLinear);
  jd.erase("g");
  jd["g_family"] = {kLinear, kLog, kSqrt};
  jd["seeds"] = 50;
  jd["n"] = 5;
  jd["r_max"] = 10;
  jd["p_max"] = 10;
  jd["w_max"] = 10;
  jd["eps"] = {"1/2", "1"};
  jd["checks"] = {"jdgfp"};
  out.push_back({"jdgfp", jd, {9}});
  return out;
}

bool has(const std::vector<int>& v, int id) {
  for (int x : v) {
    if (x == id) return true;
  }
  return false;
}

void evaluate(const Protocol& p, const Certificate& c, const Rational& eps,
              const std::string& where) {
  const bool at_one = eps == 1;
  if (has(p.criteria, 1) && at_one) {
    crit(1).tally.add(c.mode == ArithmeticMode::kExact, where, "not exact");
    record(1, c, "primal-equals-dual", where);
  }
  if (has(p.criteria, 2) && at_one) record(2, c, "primal-equals-dual", where);
  if (has(p.criteria, 3) && at_one) {
    record(3, c, "primal-equals-dual", where);
    record(3, c, "P1-P2", where);
    record(3, c, "P3", where);
  }
  if (has(p.criteria, 4)) {
    record(4, c, "integral-ratio", where);
    record(4, c, "dual-feasible", where);
    record(4, c, "per-job-bound", where);
  }
  if (has(p.criteria, 5) && at_one) {
    bool strict = c.find("P1-P2") != nullptr;
    record(5, c, strict ? "P1-P2" : "Q1-Q2", where);
    record(5, c, strict ? "P3" : "Q3", where);
  }
  if (has(p.criteria, 6)) record(6, c, "increase-order", where);
  if (has(p.criteria, 7)) {
    record(7, c, "oracle-greedy-agrees", where);
    record(7, c, "oracle-sandwich", where);
    bool equal = c.mode == ArithmeticMode::kExact &&
                 exact_value(c, "lp_value") == exact_value(c, "primal_fractional") &&
                 exact_value(c, "lp_value") == exact_value(c, "dual_objective");
    crit(7).tally.add(equal, where, "dual, lp and fractional cost differ");
  }
  if (has(p.criteria, -7)) {
    // dual(1) <= lp(h) for each h, as literally stated.
    Rational dual = exact_value(c, "dual_objective");
    for (const auto& [name, q] : c.values) {
      if (name.rfind("lp_value_h=", 0) != 0) continue;
      Rational lp = parse_rational(q.text);
      crit(71).tally.add(dual <= lp, where,
                        "dual=" + format_rational(dual) + " > " + name + "=" +
                            format_rational(lp));
    }
    record(7, c, "oracle-monotone", where);
    record(72, c, "oracle-below-primal", where);
    // Only claimed where the dual is optimal.
    record(72, c, "oracle-below-dual", where, false);
  }
  if (has(p.criteria, 8)) {
    record(8, c, "psp-dual-feasible", where);
    record(8, c, "per-job-identity", where);
    record(8, c, "fractional-ratio", where);
    record(8, c, "P1-P2", where);
  }
  if (has(p.criteria, 9)) {
    record(9, c, "identity-lambda", where);
    record(9, c, "identity-G", where);
    record(9, c, "lambda-upper-bound", where);
    record(9, c, "integral-ratio", where);
    auto it = c.values.find("slack");
    crit(9).tally.add(it != c.values.end() && it->second.approx >= 0, where,
                      "negative slack");
  }
  record(10, c, "remaining-weight-identity", where);
  // Anything else the certificate checked must hold as well.
  for (const auto& r : c.checks) {
    if (!r.pass) {
      crit(0).tally.add(false, where, r.name + ": " + r.witness);
    }
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::string>> titles = {
      {0, "all certificate checks"},
      {1, "fractional optimality, HDF linear"},
      {2, "GCP optimality"},
      {3, "equal-density FIFO/LIFO optimality"},
      {4, "integral ratio"},
      {5, "property suites at every release"},
      {6, "increase order under HDF linear"},
      {7, "oracle sandwich, linear g, and monotone in h"},
      {71, "oracle sandwich, general g: dual(1) <= lp(h)"},
      {72, "oracle sandwich, general g: lp(h) <= min(fractional cost, optimal dual)"},
      {8, "PSP feasibility and per-job identity"},
      {9, "JDGFP identities and bound"},
      {10, "remaining-weight identity"},
      {11, "determinism"},
  };
  for (const auto& [id, title] : titles) criteria[id] = Criterion{id, title};
  crit(71).known =
      "false as stated: slot costs use the infimum of g over the slot, so "
      "lp(h) sits below the fractional optimum, which dual(1) matches or "
      "approaches";

  std::map<std::string, double> timing;
  for (const auto& p : protocols()) {
    ExperimentConfig config = ExperimentConfig::from_json(p.config);
    config.validate();
    auto t0 = std::chrono::steady_clock::now();
    for (int s = 0; s < config.seeds; ++s) {
      std::uint64_t seed = config.seed + static_cast<std::uint64_t>(s);
      InstanceSpec spec = app::generate(config, seed);
      for (const Rational& eps : config.eps) {
        std::string where = p.name + " seed=" + std::to_string(seed) +
                            " eps=" + format_rational(eps);
        app::RunOptions opt;
        opt.algorithm = config.algorithm;
        opt.eps = eps;
        opt.checks = {config.checks.begin(), config.checks.end()};
        opt.mode = config.mode;
        try {
          app::RunReport report = app::run_instance(spec, opt);
          evaluate(p, report.certificate, eps, where);
        } catch (const Error& e) {
          crit(0).tally.add(false, where, e.what());
          for (int id : p.criteria) crit(id).tally.add(false, where, e.what());
        }
      }
    }
    timing[p.name] = seconds_since(t0);

    // Rerun the same sweep twice with different worker counts.
    std::string a = app::sweep(config, 1).csv();
    std::string b = app::sweep(config, 2).csv();
    crit(11).tally.add(a == b, p.name, "sweep output differs between reruns");
  }

  crit(1).notes.push_back("runtime " + std::to_string(timing["hdf-linear"]) + " s");
  if (timing["hdf-linear"] >= 30) crit(1).extra_fail = true;
  crit(9).notes.push_back("runtime " + std::to_string(timing["jdgfp"]) + " s");
  if (timing["jdgfp"] >= 120) crit(9).extra_fail = true;

  bool unexpected = false;
  for (const auto& [id, title] : titles) {
    if (id == 0) continue;
    const Criterion& c = crit(id);
    std::string label = id == 71 ? "7a" : id == 72 ? "7b" : std::to_string(id);
    std::printf("[%s] %2s %s: %ld/%ld ok", c.pass() ? "PASS" : "FAIL", label.c_str(),
                c.title.c_str(), c.tally.total - c.tally.failed, c.tally.total);
    for (const auto& n : c.notes) std::printf(", %s", n.c_str());
    std::printf("\n");
    if (c.pass()) continue;
    std::printf("       first witness: %s\n", c.tally.witness.c_str());
    if (c.known.empty()) {
      unexpected = true;
    } else {
      std::printf("       known: %s\n", c.known.c_str());
    }
  }
  const Criterion& all = crit(0);
  if (all.tally.failed > 0) {
    unexpected = true;
    std::printf("[FAIL] other certificate checks: %ld failures, first: %s\n",
                all.tally.failed, all.tally.witness.c_str());
  }
  return unexpected ? 1 : 0;
}
