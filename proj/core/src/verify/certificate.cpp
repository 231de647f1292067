#include "pdsched/verify/certificate.hpp"

#include <cmath>

#include "pdsched/core/errors.hpp"
#include "pdsched/core/objective.hpp"
#include "pdsched/duals/jdgfp_duals.hpp"
#include "pdsched/oracle/slot_lp.hpp"
#include "pdsched/schedulers/policy.hpp"

namespace pdsched {

bool Certificate::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

bool Certificate::oracle_mismatch() const {
  for (const auto& c : checks) {
    if (!c.pass && c.name.rfind("oracle", 0) == 0) return true;
  }
  return false;
}

const CheckResult* Certificate::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

const CheckResult* Certificate::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json out;
  out["algorithm"] = algorithm;
  out["method"] = method;
  out["problem"] = problem;
  out["mode"] = std::string(to_string(mode));
  out["eps"] = eps;
  nlohmann::json vals = nlohmann::json::object();
  for (const auto& [name, q] : values) {
    vals[name] = {{"value", q.text}, {"mode", std::string(to_string(q.mode))}};
  }
  out["values"] = vals;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json item{{"name", c.name}, {"pass", c.pass}};
    if (!c.pass) item["witness"] = c.witness;
    list.push_back(item);
  }
  out["checks"] = list;
  out["pass"] = pass();
  return out;
}

namespace {

// Equality: exact for rationals, relative tolerance for floats.
bool agree(const Rational& a, const Rational& b, double = 0) { return a == b; }
bool agree(double a, double b, double rel = 1e-9) {
  return close_relative(a, b, rel);
}

// a <= b, with a relative allowance in float mode.
bool at_most(const Rational& a, const Rational& b) { return a <= b; }
bool at_most(double a, double b) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return a <= b + kTolerance * scale;
}

CheckResult make_check(std::string name, bool pass, std::string witness = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.pass = pass;
  if (!pass) r.witness = std::move(witness);
  return r;
}

template <class Num>
std::string pair_text(const char* a, const Num& x, const char* b,
                      const Num& y) {
  return std::string(a) + "=" + format_num(x) + ", " + b + "=" + format_num(y);
}

// Merges per-event results into one check named `name`.
struct EventCheck {
  CheckResult result;
  explicit EventCheck(std::string name) { result.name = std::move(name); }
  void take(const CheckResult& r) {
    if (result.pass && !r.pass) {
      result.pass = false;
      result.witness = r.witness;
    }
  }
};

template <class Num>
bool integer_data(const Instance<Num>& instance) {
  for (const auto& j : instance.jobs()) {
    if constexpr (kIsExact<Num>) {
      if (j.r.get_den() != 1 || j.p.get_den() != 1) return false;
    } else {
      if (j.r != std::round(j.r) || j.p != std::round(j.p)) return false;
    }
  }
  return true;
}

template <class Num>
void oracle_checks(const Instance<Num>& instance, const MethodChoice& choice,
                   const Num& frac, const Num& dual1,
                   const std::vector<Rational>& widths, Certificate& cert) {
  if (instance.problem() != Problem::kGfp &&
      instance.problem() != Problem::kGcp) {
    return;
  }
  if (instance.size() == 0) return;
  const bool linear =
      instance.cost(0).spec().cost_class() == CostClass::kLinear;
  if (linear) {
    SlotLp<Num> lp;
    try {
      lp = build_slot_lp(instance, Num(1), Num(1));
    } catch (const Error& e) {
      cert.add(make_check("oracle-available", false, e.what()));
      return;
    }
    SlotLpResult<Num> simplex = solve_slot_lp(lp);
    SlotLpResult<Num> greedy = solve_slot_lp_greedy(instance, lp);
    cert.values["lp_value"] = quantity(simplex.value);
    cert.add(make_check("oracle-greedy-agrees",
                        agree(simplex.value, greedy.value),
                        pair_text("simplex", simplex.value, "greedy",
                                  greedy.value)));
    if (choice.fractional_optimal && integer_data(instance)) {
      bool ok = agree(dual1, simplex.value) && agree(simplex.value, frac);
      cert.add(make_check("oracle-sandwich", ok,
                          "dual=" + format_num(dual1) + ", lp=" +
                              format_num(simplex.value) +
                              ", primal=" + format_num(frac)));
    } else {
      cert.add(make_check("oracle-sandwich", at_most(dual1, simplex.value),
                          pair_text("dual", dual1, "lp", simplex.value)));
    }
    return;
  }
  std::optional<Num> previous;
  CheckResult monotone = make_check("oracle-monotone", true);
  CheckResult below_primal = make_check("oracle-below-primal", true);
  // An optimal dual equals the fractional optimum, which the slot bound
  // cannot exceed. Dual-fitting duals have no fixed order against it.
  CheckResult lp_below_dual = make_check("oracle-below-dual", true);
  for (const Rational& hr : widths) {
    Num h = from_rational<Num>(hr);
    SlotLpResult<Num> res;
    try {
      res = lp_lower_bound(instance, h, Num(1));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidInput) continue;
      cert.add(make_check("oracle-available", false, e.what()));
      return;
    }
    cert.values["lp_value_h=" + format_rational(hr)] = quantity(res.value);
    if (previous && monotone.pass && !at_most(*previous, res.value)) {
      monotone = make_check("oracle-monotone", false,
                            "h=" + format_rational(hr) + ": " +
                                pair_text("coarser", *previous, "finer",
                                          res.value));
    }
    if (below_primal.pass && !at_most(res.value, frac)) {
      below_primal = make_check("oracle-below-primal", false,
                                "h=" + format_rational(hr) + ": " +
                                    pair_text("lp", res.value, "primal", frac));
    }
    if (choice.fractional_optimal && lp_below_dual.pass &&
        !at_most(res.value, dual1)) {
      lp_below_dual = make_check("oracle-below-dual", false,
                                 "h=" + format_rational(hr) + ": " +
                                     pair_text("lp", res.value, "dual", dual1));
    }
    previous = res.value;
  }
  cert.add(monotone);
  cert.add(below_primal);
  if (choice.fractional_optimal) cert.add(lp_below_dual);
}

template <class Num>
Certificate certify_class_a(const Instance<Num>& instance, PolicyKind policy,
                            const CertifyOptions& options,
                            CertifyArtifacts<Num>* artifacts,
                            bool require_optimal) {
  MethodChoice choice = select_method(instance.spec(), policy);
  if (require_optimal && !choice.fractional_optimal) {
    throw Error(ErrorCode::kOutOfTheoremScope,
                std::string(to_string(policy)) + " with " +
                    std::string(to_string(instance.spec().g->cost_class())) +
                    " g is only certified for the integral objective");
  }
  if (!(options.eps > 0)) {
    throw Error(ErrorCode::kInvalidInput, "eps must be positive");
  }
  Certificate cert;
  cert.algorithm = std::string(to_string(policy));
  cert.method = std::string(to_string(choice.method));
  cert.problem = std::string(to_string(instance.problem()));
  cert.mode = mode_of<Num>();
  cert.eps = format_rational(options.eps);

  DualRun<Num> run = run_duals(instance, policy, choice.method);
  const Schedule<Num>& schedule = run.schedule;
  std::string audit = audit_schedule(instance, schedule);
  cert.add(make_check("schedule-valid", audit.empty(), audit));

  Num integral = integral_cost(instance, schedule);
  Num frac = fractional_cost(instance, schedule);
  Num frac_rw = fractional_cost_remaining_weight_form(instance, schedule);
  cert.values["primal_integral"] = quantity(integral);
  cert.values["primal_fractional"] = quantity(frac);
  cert.add(make_check("remaining-weight-identity", agree(frac, frac_rw, 1e-8),
                      pair_text("direct", frac, "remaining-weight", frac_rw)));

  Envelope<Num> env = final_envelope(run);
  const bool strict = choice.method == DualMethod::kPrimalDual ||
                      choice.method == DualMethod::kCompletionTime;
  if (options.properties) {
    EventCheck dom(strict ? "P1-P2" : "Q1-Q2");
    EventCheck tail(strict ? "P3" : "Q3");
    for (const auto& snap : run.snapshots) {
      dom.take(strict ? check_P1_P2(instance, run, snap)
                      : check_Q1_Q2(instance, run, snap));
      Envelope<Num> at = snapshot_envelope(run, snap);
      CheckResult p3 = check_P3(run.curves(snap.after, snap.released), at,
                                snap.projected.end());
      if (!p3.pass) p3.witness = "tau=" + format_num(snap.tau) + ": " + p3.witness;
      tail.take(p3);
    }
    cert.add(dom.result);
    cert.add(tail.result);
  }
  if (options.feasible) cert.add(check_dual_feasible(run.curves(), env));

  Num lambda_p = 0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    lambda_p += run.lambda[j] * instance.job(j).p;
  }
  Num gamma_integral = env.integral();
  Num dual1 = dual_objective(instance, run.lambda, env, Num(1));
  cert.values["lambda_p_sum"] = quantity(lambda_p);
  cert.values["gamma_integral"] = quantity(gamma_integral);
  cert.values["dual_objective"] = quantity(dual1);
  if (env.approximate) {
    cert.values["envelope_approximate"] = quantity(Num(1));
  }
  if (choice.fractional_optimal) {
    cert.add(make_check("primal-equals-dual", agree(frac, dual1),
                        pair_text("primal", frac, "dual", dual1)));
  }

  const Num eps = from_rational<Num>(options.eps);
  const Num alpha = Num(1) + eps;
  Num dual_alpha = dual_objective(instance, run.lambda, env, alpha);
  Num factor = alpha / eps;
  Num bound = factor * dual_alpha;
  Num slack = bound - integral;
  cert.values["dual_objective_speed"] = quantity(dual_alpha);
  cert.values["ratio_bound"] = quantity(factor);
  cert.values["bound"] = quantity(bound);
  cert.values["slack"] = quantity(slack);
  if (dual_alpha > 0) {
    Num ratio = integral / dual_alpha;
    cert.values["ratio"] = quantity(ratio);
  }
  cert.add(make_check("integral-ratio", at_most(integral, bound),
                      pair_text("integral", integral, "bound", bound)));

  CheckResult per_job = make_check("per-job-bound", true);
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job<Num>& job = instance.job(j);
    Num c = *schedule.completion[j];
    Num cost = job.w * instance.cost(j).value(c - instance.cost_shift(j));
    Num share = run.lambda[j] * job.p;
    if (!at_most(cost, share)) {
      per_job = make_check("per-job-bound", false,
                           "job " + std::to_string(job.id) + ": " +
                               pair_text("cost", cost, "lambda*p", share));
      break;
    }
  }
  cert.add(per_job);

  if (choice.method == DualMethod::kPrimalDual && policy == PolicyKind::kHdf) {
    cert.add(check_increase_order(run));
  }
  if (options.oracle) {
    oracle_checks(instance, choice, frac, dual1, options.oracle_widths, cert);
  }
  if (artifacts) {
    artifacts->schedule = schedule;
    artifacts->envelope = std::move(env);
    artifacts->run = std::move(run);
  }
  return cert;
}

}  // namespace

template <class Num>
Num dual_objective(const Instance<Num>& instance,
                   const std::vector<Num>& lambda, const Envelope<Num>& envelope,
                   const Num& alpha) {
  Num total = 0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    total += lambda[j] * instance.job(j).p;
  }
  Num v = total - envelope.integral() / alpha;
  return v;
}

template <class Num>
Certificate certify_fractional_optimality(const Instance<Num>& instance,
                                          PolicyKind policy,
                                          const CertifyOptions& options,
                                          CertifyArtifacts<Num>* artifacts) {
  return certify_class_a(instance, policy, options, artifacts, true);
}

template <class Num>
Certificate certify_integral_competitiveness(
    const Instance<Num>& instance, PolicyKind policy,
    const CertifyOptions& options, CertifyArtifacts<Num>* artifacts) {
  return certify_class_a(instance, policy, options, artifacts, false);
}

template <class Num>
Certificate certify_psp(const Instance<Num>& instance,
                        const CertifyOptions& options,
                        CertifyArtifacts<Num>* artifacts) {
  Certificate cert;
  cert.algorithm = "psp";
  cert.method = std::string(to_string(DualMethod::kPsp));
  cert.problem = std::string(to_string(instance.problem()));
  cert.mode = mode_of<Num>();
  cert.eps = format_rational(options.eps);

  PspDuals<Num> duals = psp_duals(instance);
  const Schedule<Num>& schedule = duals.surrogate.schedule;
  std::string audit = audit_schedule(instance, schedule);
  cert.add(make_check("schedule-valid", audit.empty(), audit));

  Num integral = integral_cost(instance, schedule);
  std::vector<Num> frac_by_job = fractional_cost_by_job(instance, schedule);
  Num frac = fractional_cost(instance, schedule);
  Num frac_rw = fractional_cost_remaining_weight_form(instance, schedule);
  cert.values["primal_integral"] = quantity(integral);
  cert.values["primal_fractional"] = quantity(frac);
  cert.add(make_check("remaining-weight-identity", agree(frac, frac_rw, 1e-8),
                      pair_text("direct", frac, "remaining-weight", frac_rw)));

  if (options.properties) {
    EventCheck dom("P1-P2");
    EventCheck tail("P3");
    for (const auto& snap : duals.surrogate.snapshots) {
      dom.take(check_P1_P2(instance, duals.surrogate, snap));
      Envelope<Num> at = snapshot_envelope(duals.surrogate, snap);
      tail.take(check_P3(duals.surrogate.curves(snap.after, snap.released), at,
                         snap.projected.end()));
    }
    cert.add(dom.result);
    cert.add(tail.result);
  }
  if (options.feasible) cert.add(check_psp_feasible(instance, duals));

  // Per job: lambda_j p_j - (b_j / B_j) * integral of mu' over j's pieces
  // equals j's fractional cost.
  CheckResult identity = make_check("per-job-identity", true);
  Num lambda_p = 0;
  Num alpha = 1;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    const Job<Num>& job = instance.job(j);
    Num factor = instance.min_demand(j) / instance.max_demand(j);
    Num speed_up = instance.max_demand(j) / instance.min_demand(j);
    alpha = num_max(alpha, speed_up);
    Num area = 0;
    for (const auto& seg : schedule.segments) {
      if (!seg.idle() && seg.allocations.front().job == j) {
        area += duals.mu.integral(seg.start, seg.end);
      }
    }
    Num contribution = duals.lambda[j] * job.p - factor * area;
    lambda_p += duals.lambda[j] * job.p;
    if (identity.pass && !agree(contribution, frac_by_job[j], 1e-8)) {
      identity = make_check("per-job-identity", false,
                            "job " + std::to_string(job.id) + ": " +
                                pair_text("dual", contribution, "primal",
                                          frac_by_job[j]));
    }
  }
  cert.add(identity);

  Num gamma_integral = duals.gamma_integral();
  Num dual1 = lambda_p - gamma_integral;
  Num dual_alpha = lambda_p - gamma_integral / alpha;
  cert.values["lambda_p_sum"] = quantity(lambda_p);
  cert.values["gamma_integral"] = quantity(gamma_integral);
  cert.values["dual_objective"] = quantity(dual1);
  cert.values["speed"] = quantity(alpha);
  cert.values["dual_objective_speed"] = quantity(dual_alpha);
  Num slack = dual_alpha - frac;
  cert.values["slack"] = quantity(slack);
  cert.values["ratio_bound"] = quantity(Num(1));
  if (dual_alpha > 0) {
    Num ratio = frac / dual_alpha;
    cert.values["ratio"] = quantity(ratio);
  }
  cert.add(make_check("fractional-ratio", at_most(frac, dual_alpha),
                      pair_text("primal", frac, "dual", dual_alpha)));
  if (artifacts) {
    artifacts->schedule = schedule;
    artifacts->envelope = duals.mu;
    artifacts->psp = std::move(duals);
  }
  return cert;
}

Certificate certify_jdgfp(const Instance<double>& instance,
                          const CertifyOptions& options,
                          JdgfpArtifacts* artifacts) {
  if (instance.problem() != Problem::kJdgfp) {
    throw Error(ErrorCode::kOutOfTheoremScope,
                "the rate rule is certified for jdgfp instances");
  }
  Certificate cert;
  cert.algorithm = "jdgfp";
  cert.method = "rate-rule";
  cert.problem = std::string(to_string(instance.problem()));
  cert.mode = ArithmeticMode::kFloat;
  cert.eps = format_rational(options.eps);

  JdgfpRun run = simulate_jdgfp(instance, options.eps, 1.0, options.jdgfp);
  JdgfpDuals duals = jdgfp_duals(instance, run);
  std::string audit = audit_schedule(instance, run.schedule);
  cert.add(make_check("schedule-valid", audit.empty(), audit));

  const int k = run.k;
  const double eps = to_double(options.eps);
  double frac = 0, frac_rw = 0;
  if (instance.size() > 0) {
    frac = fractional_cost(instance, run.schedule);
    frac_rw = fractional_cost_remaining_weight_form(instance, run.schedule);
  }
  cert.add(make_check("remaining-weight-identity",
                      close_relative(frac, frac_rw, 1e-8),
                      pair_text("direct", frac, "remaining-weight", frac_rw)));

  double lambda_p = 0;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    lambda_p += duals.lambda[j] * instance.job(j).p;
  }
  const double f = duals.cost;
  cert.values["k"] = quantity(static_cast<double>(k));
  cert.values["eta"] = quantity(run.options.eta);
  cert.values["primal_integral"] = quantity(f);
  cert.values["primal_fractional"] = quantity(frac);
  cert.values["lambda_p_sum"] = quantity(lambda_p);
  cert.values["G_integral"] = quantity(duals.total_contribution);
  auto rel = [&](double x) {
    return f > 0 ? std::fabs(x - f) / f : std::fabs(x);
  };
  cert.add(make_check("identity-lambda", rel((k + 1) * lambda_p) <= 1e-6,
                      "(k+1)*sum lambda p=" + format_double((k + 1) * lambda_p) +
                          ", F=" + format_double(f)));
  cert.add(make_check("identity-G", rel(duals.total_contribution) <= 1e-6,
                      "integral G=" + format_double(duals.total_contribution) +
                          ", F=" + format_double(f)));

  CheckResult upper = make_check("lambda-upper-bound", true);
  const double horizon = run.schedule.end();
  for (std::size_t j = 0; j < instance.size() && upper.pass; ++j) {
    const auto& job = instance.job(j);
    const auto& g = instance.cost(j);
    for (int s = 1; s <= options.upper_bound_samples; ++s) {
      double tau = job.r + (horizon - job.r) * s / options.upper_bound_samples;
      double rhs = job.density() * g.value(tau - job.r) +
                   jdgfp_total_rate(instance, run, tau) / k;
      double lhs = duals.lambda[j];
      if (lhs > rhs + 1e-6 * std::max(1.0, std::fabs(rhs))) {
        upper = make_check("lambda-upper-bound", false,
                           "job " + std::to_string(job.id) + " tau=" +
                               format_double(tau) + ": lambda=" +
                               format_double(lhs) + " > " + format_double(rhs));
        break;
      }
    }
  }
  cert.add(upper);

  const double factor = 4 * (1 + eps) * (1 + eps) / (eps * eps);
  const double dual = lambda_p - duals.total_contribution / ((1 + eps) * k);
  const double bound = factor * dual;
  cert.values["dual_objective_speed"] = quantity(dual);
  cert.values["ratio_bound"] = quantity(factor);
  cert.values["bound"] = quantity(bound);
  cert.values["slack"] = quantity(bound - f);
  if (dual > 0) cert.values["ratio"] = quantity(f / dual);
  cert.add(make_check("integral-ratio", f <= bound + 1e-9 * std::max(1.0, f),
                      "F=" + format_double(f) + ", bound=" +
                          format_double(bound)));
  if (artifacts) {
    artifacts->run = std::move(run);
    artifacts->lambda = duals.lambda;
  }
  return cert;
}

template <class Num>
Certificate certify(const Instance<Num>& instance, PolicyKind policy,
                    const CertifyOptions& options,
                    CertifyArtifacts<Num>* artifacts) {
  switch (instance.problem()) {
    case Problem::kJdgfp:
      if constexpr (kIsExact<Num>) {
        throw Error(ErrorCode::kUnsupportedInExactMode,
                    "the rate rule is integrated in floating point");
      } else {
        if (policy != PolicyKind::kJdgfpRate) {
          throw Error(ErrorCode::kOutOfTheoremScope,
                      "jdgfp instances are run with the jdgfp rate rule");
        }
        return certify_jdgfp(instance, options);
      }
    case Problem::kPsp:
      if (policy != PolicyKind::kPspHdf) {
        throw Error(ErrorCode::kOutOfTheoremScope,
                    "psp instances are run with the psp rule");
      }
      return certify_psp(instance, options, artifacts);
    default:
      return certify_class_a(instance, policy, options, artifacts, false);
  }
}

#define PDSCHED_INSTANTIATE(Num)                                             \
  template Num dual_objective<Num>(const Instance<Num>&,                     \
                                   const std::vector<Num>&,                  \
                                   const Envelope<Num>&, const Num&);        \
  template Certificate certify_fractional_optimality<Num>(                   \
      const Instance<Num>&, PolicyKind, const CertifyOptions&,               \
      CertifyArtifacts<Num>*);                                               \
  template Certificate certify_integral_competitiveness<Num>(                \
      const Instance<Num>&, PolicyKind, const CertifyOptions&,               \
      CertifyArtifacts<Num>*);                                               \
  template Certificate certify_psp<Num>(const Instance<Num>&,                \
                                        const CertifyOptions&,               \
                                        CertifyArtifacts<Num>*);             \
  template Certificate certify<Num>(const Instance<Num>&, PolicyKind,        \
                                    const CertifyOptions&,                   \
                                    CertifyArtifacts<Num>*);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
