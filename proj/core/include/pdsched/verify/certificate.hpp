#ifndef PDSCHED_VERIFY_CERTIFICATE_HPP_
#define PDSCHED_VERIFY_CERTIFICATE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdsched/core/instance.hpp"
#include "pdsched/duals/dual_run.hpp"
#include "pdsched/duals/envelope.hpp"
#include "pdsched/duals/psp_duals.hpp"
#include "pdsched/schedulers/jdgfp.hpp"
#include "pdsched/verify/properties.hpp"

namespace pdsched {

struct Quantity {
  std::string text;  // exact rational text or shortest float text
  double approx = 0;
  ArithmeticMode mode = ArithmeticMode::kExact;
};

template <class Num>
Quantity quantity(const Num& v) {
  return Quantity{format_num(v), to_double(v), mode_of<Num>()};
}

struct Certificate {
  std::string algorithm;
  std::string method;
  std::string problem;
  ArithmeticMode mode = ArithmeticMode::kExact;
  std::string eps;
  std::map<std::string, Quantity> values;
  std::vector<CheckResult> checks;

  bool pass() const;
  // A failed oracle comparison (as opposed to a property failure).
  bool oracle_mismatch() const;
  const CheckResult* first_failure() const;
  const CheckResult* find(const std::string& name) const;
  void add(CheckResult check) { checks.push_back(std::move(check)); }
  nlohmann::json to_json() const;
};

struct CertifyOptions {
  Rational eps = 1;
  bool properties = true;  // (P) or (Q) family at every release
  bool feasible = true;
  bool oracle = false;
  std::vector<Rational> oracle_widths{Rational(1), Rational(1, 2),
                                      Rational(1, 4)};
  int upper_bound_samples = 100;
  JdgfpOptions jdgfp;
};

// What a run produced, for trace and plot output.
template <class Num>
struct CertifyArtifacts {
  Schedule<Num> schedule;
  std::optional<DualRun<Num>> run;
  std::optional<Envelope<Num>> envelope;
  std::optional<PspDuals<Num>> psp;
};

// sum_j lambda_j p_j - (1/alpha) * integral of gamma.
template <class Num>
Num dual_objective(const Instance<Num>& instance,
                   const std::vector<Num>& lambda, const Envelope<Num>& envelope,
                   const Num& alpha);

// Primal fractional cost equals the dual objective at unit speed and the
// strict properties hold at every release. Throws OutOfTheoremScope unless
// the combination is one where that holds.
template <class Num>
Certificate certify_fractional_optimality(
    const Instance<Num>& instance, PolicyKind policy,
    const CertifyOptions& options = {},
    CertifyArtifacts<Num>* artifacts = nullptr);

// integral cost <= ((1+eps)/eps) * dual objective at speed 1+eps, the
// per-job bound, and the property family of the dual method.
template <class Num>
Certificate certify_integral_competitiveness(
    const Instance<Num>& instance, PolicyKind policy,
    const CertifyOptions& options = {},
    CertifyArtifacts<Num>* artifacts = nullptr);

// Packing problem: feasibility of the row duals and the per-job identity
// between fractional cost and dual contribution at speed b_j / B_j.
template <class Num>
Certificate certify_psp(const Instance<Num>& instance,
                        const CertifyOptions& options = {},
                        CertifyArtifacts<Num>* artifacts = nullptr);

struct JdgfpArtifacts {
  JdgfpRun run;
  std::vector<double> lambda;
};

Certificate certify_jdgfp(const Instance<double>& instance,
                          const CertifyOptions& options = {},
                          JdgfpArtifacts* artifacts = nullptr);

// Dispatch on problem and policy. The fractional equality is included when
// the combination supports it.
template <class Num>
Certificate certify(const Instance<Num>& instance, PolicyKind policy,
                    const CertifyOptions& options = {},
                    CertifyArtifacts<Num>* artifacts = nullptr);

}  // namespace pdsched

#endif  // PDSCHED_VERIFY_CERTIFICATE_HPP_
