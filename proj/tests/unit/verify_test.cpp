#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "pdsched/core/errors.hpp"
#include "pdsched/duals/dual_run.hpp"
#include "pdsched/verify/certificate.hpp"
#include "pdsched/verify/properties.hpp"

namespace pdsched {
namespace {

using testing::make;
using testing::q;

Rational value_of(const Certificate& c, const std::string& name) {
  auto it = c.values.find(name);
  if (it == c.values.end()) ADD_FAILURE() << "missing value " << name;
  return it == c.values.end() ? Rational(0) : parse_rational(it->second.text);
}

double approx_of(const Certificate& c, const std::string& name) {
  auto it = c.values.find(name);
  if (it == c.values.end()) ADD_FAILURE() << "missing value " << name;
  return it == c.values.end() ? 0.0 : it->second.approx;
}

void expect_pass(const Certificate& c) {
  const CheckResult* f = c.first_failure();
  EXPECT_TRUE(c.pass()) << (f ? f->name + ": " + f->witness : "");
}

TEST(DualObjective, Goldens) {
  {
    auto inst = make(testing::kHdfGolden);
    auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
    EXPECT_EQ(dual_objective(inst, run.lambda, final_envelope(run), Rational(1)),
              q("15/2"));
  }
  {
    auto inst = make(testing::kFifoSquare);
    auto method = select_method(inst.spec(), PolicyKind::kFifo).method;
    auto run = run_duals(inst, PolicyKind::kFifo, method);
    EXPECT_EQ(dual_objective(inst, run.lambda, final_envelope(run), Rational(1)),
              q("17/12"));
  }
  {
    auto inst = make(R"({"problem":"gcp","g":{"shape":"linear"},
      "jobs":[{"id":1,"r":1,"p":2,"w":2}]})");
    auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kCompletionTime);
    EXPECT_EQ(dual_objective(inst, run.lambda, final_envelope(run), Rational(1)), 4);
  }
}

TEST(Certificate, HdfGolden) {
  auto inst = make(testing::kHdfGolden);
  CertifyOptions opt;
  opt.oracle = true;
  auto c = certify(inst, PolicyKind::kHdf, opt);
  expect_pass(c);
  EXPECT_EQ(value_of(c, "primal_fractional"), q("15/2"));
  EXPECT_EQ(value_of(c, "dual_objective"), q("15/2"));
  EXPECT_EQ(value_of(c, "lp_value"), q("15/2"));
  EXPECT_EQ(value_of(c, "primal_integral"), 15);
  EXPECT_EQ(value_of(c, "dual_objective_speed"), q("49/4"));
  EXPECT_EQ(value_of(c, "bound"), q("49/2"));
  EXPECT_EQ(value_of(c, "gamma_integral"), q("19/2"));
  EXPECT_EQ(value_of(c, "lambda_p_sum"), 17);
  EXPECT_NE(c.find("increase-order"), nullptr);
}

TEST(Certificate, FifoSquareGolden) {
  auto inst = make(testing::kFifoSquare);
  auto c = certify(inst, PolicyKind::kFifo);
  expect_pass(c);
  EXPECT_EQ(value_of(c, "primal_fractional"), q("17/12"));
  EXPECT_EQ(value_of(c, "dual_objective"), q("17/12"));
  ASSERT_NE(c.find("primal-equals-dual"), nullptr);
}

TEST(Certificate, FractionalOptimalityOutOfScope) {
  try {
    certify_fractional_optimality(make<double>(R"({"problem":"gfp","g":{"shape":"log"},
      "jobs":[{"id":1,"r":0,"p":2,"w":4}]})"),
                                  PolicyKind::kHdf);
    FAIL() << "expected OutOfTheoremScope";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfTheoremScope);
  }
  try {
    certify(make(testing::kHdfGolden), PolicyKind::kLifo);
    FAIL() << "expected OutOfTheoremScope";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfTheoremScope);
  }
}

TEST(Certificate, JdgfpNeedsFloat) {
  auto inst = make(R"({"problem":"jdgfp","g_per_job":[{"shape":"linear"}],
    "jobs":[{"id":1,"r":0,"p":1,"w":1}]})");
  try {
    certify(inst, PolicyKind::kJdgfpRate);
    FAIL() << "expected UnsupportedInExactMode";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedInExactMode);
  }
}

TEST(Certificate, PspSingleJob) {
  auto inst = make(R"({"problem":"psp","g":{"shape":"linear"},"B":[[3],[1]],
    "jobs":[{"id":1,"r":1,"p":2,"w":1}]})");
  auto c = certify(inst, PolicyKind::kPspHdf);
  expect_pass(c);
  EXPECT_EQ(value_of(c, "speed"), 3);
  EXPECT_EQ(value_of(c, "primal_integral"), 6);
  EXPECT_EQ(value_of(c, "primal_fractional"), 3);
  EXPECT_EQ(value_of(c, "ratio"), 1);
}

TEST(Certificate, JdgfpSingleJob) {
  auto inst = make<double>(R"({"problem":"jdgfp","g_per_job":[{"shape":"power","exponent":"1/2"}],
    "jobs":[{"id":1,"r":0,"p":2,"w":1}]})");
  auto c = certify_jdgfp(inst);
  expect_pass(c);
  EXPECT_NEAR(approx_of(c, "primal_integral"), std::sqrt(2.0), 1e-8);
}

TEST(Certificate, JdgfpTwoIdenticalJobs) {
  auto inst = make<double>(R"({"problem":"jdgfp","g_per_job":[{"shape":"linear"},{"shape":"linear"}],
    "jobs":[{"id":1,"r":0,"p":1,"w":1},{"id":2,"r":0,"p":1,"w":1}]})");
  auto c = certify_jdgfp(inst);
  expect_pass(c);
  EXPECT_EQ(approx_of(c, "ratio_bound"), 16.0);
  EXPECT_NEAR(approx_of(c, "primal_integral"), 10.0 / 3.0, 1e-8);
  EXPECT_LE(approx_of(c, "ratio"), 16.0);
}

TEST(Certificate, JdgfpBoundCoefficient) {
  // 4 (1+eps)^2 / eps^2
  auto inst = make<double>(R"({"problem":"jdgfp","g_per_job":[{"shape":"linear"}],
    "jobs":[{"id":1,"r":0,"p":1,"w":1}]})");
  for (const auto& [eps, expected] :
       std::vector<std::pair<const char*, double>>{{"1", 16}, {"1/2", 36}, {"2", 9}}) {
    CertifyOptions opt;
    opt.eps = q(eps);
    auto c = certify_jdgfp(inst, opt);
    EXPECT_DOUBLE_EQ(approx_of(c, "ratio_bound"), expected) << "eps=" << eps;
  }
}

TEST(Certificate, JsonShape) {
  auto c = certify(make(testing::kHdfGolden), PolicyKind::kHdf);
  auto j = c.to_json();
  EXPECT_EQ(j["algorithm"], "hdf");
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_EQ(j["values"]["primal_integral"]["value"], "15");
  EXPECT_TRUE(j["pass"].get<bool>());
}

// Perturbations of a correct run must be caught.

TEST(Perturbation, RaisedNewJobBreaksDominance) {
  auto inst = make(testing::kHdfGolden);
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  ASSERT_EQ(run.snapshots.size(), 2u);
  auto snap = run.snapshots[1];
  EXPECT_TRUE(check_P1_P2(inst, run, snap).pass);
  snap.after[inst.index_of(2)] += 1;
  auto r = check_P1_P2(inst, run, snap);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.witness.empty());
}

TEST(Perturbation, RaisedLastJobBreaksP3) {
  auto inst = make(testing::kHdfGolden);
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  auto env = final_envelope(run);
  EXPECT_TRUE(check_P3(run.curves(), env, run.schedule.end()).pass);
  auto lambda = run.lambda;
  lambda[inst.index_of(1)] += 1;
  auto curves = run.curves(lambda, inst.size());
  auto raised = build_envelope(curves, run.schedule.end());
  EXPECT_FALSE(check_P3(curves, raised, run.schedule.end()).pass);
}

TEST(Perturbation, LambdaAboveCostWithZeroGammaIsInfeasible) {
  auto inst = make(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":1,"r":0,"p":2,"w":4}]})");
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  // delta g(p) + 1
  std::vector<Rational> lambda{Rational(5)};
  auto curves = run.curves(lambda, 1);
  Envelope<Rational> zero;
  EXPECT_FALSE(check_dual_feasible(curves, zero).pass);
  EXPECT_TRUE(check_dual_feasible(run.curves(), final_envelope(run)).pass);
}

TEST(Perturbation, LoweredRunningJobBreaksRelaxedDominance) {
  auto inst = make(testing::kHdfGolden);
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  auto snap = run.snapshots[1];
  EXPECT_TRUE(check_Q1_Q2(inst, run, snap).pass);
  snap.after[inst.index_of(2)] = 0;
  EXPECT_FALSE(check_Q1_Q2(inst, run, snap).pass);
}

TEST(Perturbation, NegativeLambdaIsInfeasible) {
  auto inst = make(testing::kHdfGolden);
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  auto lambda = run.lambda;
  lambda[0] = -1;
  auto curves = run.curves(lambda, inst.size());
  EXPECT_FALSE(check_dual_feasible(curves, build_envelope(curves, run.schedule.end())).pass);
}

// Small random sweeps over the supported combinations.

nlohmann::json random_jobs(std::mt19937_64& rng, int n, bool equal_density) {
  std::uniform_int_distribution<int> r(0, 8), p(1, 5), w(1, 9);
  nlohmann::json jobs = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    int pi = p(rng);
    jobs.push_back({{"id", i + 1}, {"r", r(rng)}, {"p", pi},
                    {"w", equal_density ? 2 * pi : w(rng)}});
  }
  return jobs;
}

TEST(RandomSweep, HdfLinearExact) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    nlohmann::json spec = {{"problem", "gfp"}, {"g", {{"shape", "linear"}}},
                           {"jobs", random_jobs(rng, 5, false)}};
    CertifyOptions opt;
    opt.eps = q("1/2");
    auto c = certify(make(spec.dump()), PolicyKind::kHdf, opt);
    expect_pass(c);
    EXPECT_EQ(value_of(c, "primal_fractional"), value_of(c, "dual_objective"))
        << spec.dump();
  }
}

TEST(RandomSweep, GcpSquare) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    nlohmann::json spec = {{"problem", "gcp"},
                           {"g", {{"shape", "power"}, {"exponent", 2}}},
                           {"jobs", random_jobs(rng, 4, false)}};
    expect_pass(certify(make(spec.dump()), PolicyKind::kHdf));
  }
}

TEST(RandomSweep, FifoEqualDensityConvex) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    nlohmann::json spec = {{"problem", "gfp"},
                           {"g", {{"shape", "power"}, {"exponent", 2}}},
                           {"jobs", random_jobs(rng, 4, true)}};
    auto c = certify(make(spec.dump()), PolicyKind::kFifo);
    expect_pass(c);
    EXPECT_EQ(value_of(c, "primal_fractional"), value_of(c, "dual_objective"));
  }
}

TEST(RandomSweep, HdfConcaveFloat) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 15; ++trial) {
    nlohmann::json spec = {{"problem", "gfp"},
                           {"g", {{"shape", "power"}, {"exponent", "1/2"}}},
                           {"jobs", random_jobs(rng, 4, false)}};
    expect_pass(certify(make<double>(spec.dump()), PolicyKind::kHdf));
  }
}

}  // namespace
}  // namespace pdsched
