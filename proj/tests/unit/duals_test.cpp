#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pdsched/core/errors.hpp"
#include "pdsched/duals/dual_run.hpp"
#include "pdsched/duals/envelope.hpp"
#include "pdsched/duals/jdgfp_duals.hpp"
#include "pdsched/duals/procedures.hpp"
#include "pdsched/duals/psp_duals.hpp"

namespace pdsched {
namespace {

using testing::make;
using testing::q;

struct LinearForms {
  CostFunction<Rational> g{CostSpec::linear(1)};
  CurveForm<Rational> form(const Rational& scale, const Rational& shift) {
    return CurveForm<Rational>{scale, shift, shift, &g};
  }
};

TEST(Procedure1, SingleJob) {
  LinearForms f;
  auto lambda = procedure1_assign<Rational>({f.form(2, 0)}, {Rational(2)});
  EXPECT_EQ(lambda[0], 4);
}

TEST(Procedure1, HdfGoldenAtSecondRelease) {
  LinearForms f;
  // Completion order: j2 (C=2), j1 (C=3).
  auto lambda = procedure1_assign<Rational>({f.form(3, 1), f.form(2, 0)},
                                            {Rational(2), Rational(3)});
  EXPECT_EQ(lambda[0], 5);
  EXPECT_EQ(lambda[1], 6);
}

TEST(Procedure1, FifoSquare) {
  CostFunction<Rational> g(CostSpec::power(2));
  std::vector<CurveForm<Rational>> forms{{1, 0, 0, &g}, {1, q("1/2"), q("1/2"), &g}};
  auto lambda = procedure1_assign<Rational>(forms, {Rational(1), Rational(2)});
  EXPECT_EQ(lambda[0], 3);
  EXPECT_EQ(lambda[1], q("9/4"));
}

TEST(Procedure1, RecurrenceMeetsAtCompletion) {
  LinearForms f;
  std::vector<CurveForm<Rational>> forms{f.form(5, 2), f.form(3, 0), f.form(1, 1)};
  std::vector<Rational> c{Rational(3), Rational(6), Rational(9)};
  auto lambda = procedure1_assign(forms, c);
  for (std::size_t j = 0; j + 1 < forms.size(); ++j) {
    DualCurve<Rational> a{j, lambda[j], forms[j]};
    DualCurve<Rational> b{j + 1, lambda[j + 1], forms[j + 1]};
    EXPECT_EQ(a(c[j]), b(c[j]));
  }
  EXPECT_EQ((DualCurve<Rational>{2, lambda[2], forms[2]})(c[2]), 0);
}

TEST(Procedure1, StaysAboveOwnCost) {
  // Even when a low-density job finishes first the recurrence keeps
  // lambda_j >= delta_j g(C_j - r_j).
  LinearForms f;
  std::vector<CurveForm<Rational>> forms{f.form(1, 0), f.form(10, 0)};
  auto lambda = procedure1_assign<Rational>(forms, {Rational(1), Rational(20)});
  EXPECT_EQ(lambda[1], 200);
  EXPECT_EQ(lambda[0], 191);
}

TEST(Procedure3, SingleJob) {
  LinearForms f;
  CurveForm<Rational> form{1, 0, 1, &f.g};
  auto lambda = procedure3_gcp<Rational>({form}, {Rational(3)}, {std::nullopt});
  EXPECT_EQ(lambda[0], 3);
}

TEST(Procedure3, BackToBack) {
  LinearForms f;
  std::vector<CurveForm<Rational>> forms{{2, 0, 0, &f.g}, {1, 0, 0, &f.g}};
  auto lambda = procedure3_gcp<Rational>(forms, {Rational(2), Rational(3)},
                                         {std::optional<std::size_t>(1), std::nullopt});
  EXPECT_EQ(lambda[1], 3);
  EXPECT_EQ(lambda[0], 5);
}

TEST(Procedure4, SameRelease) {
  LinearForms f;
  auto lambda = procedure4_equal_density<Rational>(
      {f.form(1, 0), f.form(1, 0)}, {Rational(1), Rational(2)}, {false, false});
  EXPECT_EQ(lambda[1], 2);
  EXPECT_EQ(lambda[0], 2);
}

TEST(Procedure4, StaggeredRelease) {
  LinearForms f;
  auto lambda = procedure4_equal_density<Rational>(
      {f.form(1, 0), f.form(1, 1)}, {Rational(1), Rational(2)}, {false, false});
  EXPECT_EQ(lambda[1], 1);
  EXPECT_EQ(lambda[0], 2);
}

TEST(Procedure4, RaisesToZeroAtCompletion) {
  CostFunction<Rational> g(CostSpec::piecewise_linear(
      {{0, 0}, {1, 1}, {2, 1}, {3, 5}}));
  std::vector<CurveForm<Rational>> forms{{1, 0, 0, &g}, {1, 1, 1, &g}};
  auto lambda = procedure4_equal_density<Rational>(
      forms, {Rational(1), Rational(2)}, {false, false});
  DualCurve<Rational> first{0, lambda[0], forms[0]};
  EXPECT_GE(first(Rational(1)), 0);
}

TEST(Procedure5, SqrtExampleUnchanged) {
  CostFunction<double> g(CostSpec::power(q("1/2")));
  std::vector<CurveForm<double>> forms{{2, 0, 0, &g}, {1, 0, 0, &g}};
  Procedure5Stats stats;
  auto lambda = procedure5_concave<double>(forms, {1.0, 2.0}, 0.0, &stats);
  EXPECT_NEAR(lambda[0], 2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(lambda[1], std::sqrt(2.0), 1e-12);
  EXPECT_EQ(stats.events, 0);
}

TEST(Procedure5, LowersEarlierJobToMeetLaterLambda) {
  // Three jobs where gamma_1(C_2) starts above lambda_3.
  CostFunction<double> g(CostSpec::power(q("1/2")));
  std::vector<CurveForm<double>> forms{
      {4, 0, 0, &g}, {3, 0, 0, &g}, {1, 2, 2, &g}};
  std::vector<double> c{1, 2, 3};
  std::vector<double> start(3);
  for (std::size_t a = 0; a < 3; ++a) {
    start[a] = forms[a].scale * g.value(c[2] - forms[a].shift);
  }
  ASSERT_GT(start[0] - 4 * g.value(c[1]), start[2]);
  Procedure5Stats stats;
  auto lambda = procedure5_concave(forms, c, 0.0, &stats);
  EXPECT_GT(stats.events, 0);
  EXPECT_NEAR(lambda[0] - 4 * g.value(c[1]), lambda[2], 1e-12);
  // Both ordering clauses on every execution interval.
  for (std::size_t a = 0; a < 3; ++a) {
    double lo = a == 0 ? 0.0 : c[a - 1];
    for (std::size_t b = 0; b < 3; ++b) {
      if (b == a) continue;
      for (double t : {lo, 0.5 * (lo + c[a]), c[a]}) {
        double gb = lambda[b] - forms[b].scale * g.value(t - forms[b].shift);
        if (t < forms[b].start) continue;
        EXPECT_GE(lambda[a] + 1e-12, gb) << a << " " << b << " " << t;
      }
    }
  }
}

TEST(Procedure2, NothingCompleted) {
  LinearForms f;
  Procedure2Input<Rational> in;
  in.forms = {f.form(2, 0)};
  in.before = {Rational(4)};
  in.completion = {Rational(2)};
  in.fresh = {false};
  in.pending = {0};
  in.next_scheduled = {std::nullopt};
  std::vector<Rational> lambda{Rational(5)};
  auto res = procedure2_update_past(in, lambda);
  EXPECT_EQ(lambda[0], 5);
  ASSERT_EQ(res.sets.size(), 1u);
  EXPECT_EQ(res.sets[0].size(), 1u);
}

TEST(DualRun, HdfGolden) {
  auto inst = make(testing::kHdfGolden);
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  EXPECT_EQ(run.lambda[0], 6);
  EXPECT_EQ(run.lambda[1], 5);
  ASSERT_EQ(run.snapshots.size(), 2u);
  const auto& snap = run.snapshots[1];
  ASSERT_TRUE(snap.deltas[0].has_value());
  EXPECT_EQ(*snap.deltas[0], 2);  // delta_{j1} * p_z
  auto env = final_envelope(run);
  EXPECT_EQ(env.integral(), q("19/2"));
  ASSERT_EQ(env.pieces.size(), 3u);
  EXPECT_EQ(env.value(Rational(0)), 6);
  EXPECT_EQ(env.value(Rational(1)), 5);
  EXPECT_EQ(env.value(q("5/2")), 1);
  EXPECT_EQ(env.last_positive(), 3);
  EXPECT_FALSE(env.approximate);
  EXPECT_EQ(*env.dominant_job(q("1/2")), 0u);
  EXPECT_EQ(*env.dominant_job(q("3/2")), 1u);
  EXPECT_EQ(*env.dominant_job(q("5/2")), 0u);
}

TEST(DualRun, PastJobsShareTheirRepresentativeIncrease) {
  // a finishes at 2, b runs after it, z arrives at 3 and preempts b.
  auto inst = make(R"({"problem":"gfp","g":{"shape":"linear"},"jobs":[
    {"id":0,"r":0,"p":2,"w":6},{"id":1,"r":0,"p":3,"w":3},
    {"id":2,"r":3,"p":1,"w":5}]})");
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  const auto& snap = run.snapshots.back();
  ASSERT_EQ(snap.sets.size(), 2u);
  // Set of b (pending, C=6) holds a.
  std::size_t b_set = snap.sets[0].front() == 1 ? 0 : 1;
  ASSERT_EQ(snap.sets[b_set].size(), 2u);
  EXPECT_EQ(snap.sets[b_set][1], 0u);
  Rational delta_b = snap.after[1] - snap.before[1];
  EXPECT_EQ(snap.after[0] - snap.before[0], delta_b);
  EXPECT_GT(delta_b, 0);
}

TEST(DualRun, GcpSingleJob) {
  auto inst = make(R"({"problem":"gcp","g":{"shape":"linear"},
    "jobs":[{"id":0,"r":1,"p":2,"w":2}]})");
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kCompletionTime);
  EXPECT_EQ(run.lambda[0], 3);
  auto env = final_envelope(run);
  EXPECT_EQ(env.integral(), 2);  // (3 - t) on [1, 3]
}

TEST(SelectMethod, ScopeTable) {
  auto hdf = testing::spec_from(testing::kHdfGolden);
  EXPECT_EQ(select_method(hdf, PolicyKind::kHdf).method, DualMethod::kPrimalDual);
  EXPECT_THROW(select_method(hdf, PolicyKind::kFifo), Error);
  auto fifo = testing::spec_from(testing::kFifoSquare);
  EXPECT_TRUE(select_method(fifo, PolicyKind::kFifo).fractional_optimal);
  EXPECT_THROW(select_method(fifo, PolicyKind::kLifo), Error);
}

TEST(PspDuals, SingleJobTightRow) {
  auto inst = make(R"({"problem":"psp","g":{"shape":"linear"},"B":[[2],[1]],
    "jobs":[{"id":0,"r":0,"p":1,"w":2}]})");
  auto d = psp_duals(inst);
  EXPECT_EQ(d.surrogate.schedule.completion[0], Rational(2));
  EXPECT_EQ(d.surrogate.lambda[0], 4);
  EXPECT_EQ(d.lambda[0], 4);
  EXPECT_EQ(d.row_gamma(0, Rational(1)), 2);  // 4 - 2t
  EXPECT_EQ(d.row_gamma(1, Rational(1)), 0);
}

TEST(PspDuals, TwoJobs) {
  auto inst = make(R"({"problem":"psp","g":{"shape":"linear"},
    "B":[[1,2],[2,1]],
    "jobs":[{"id":1,"r":0,"p":2,"w":4},{"id":2,"r":0,"p":1,"w":3}]})");
  auto d = psp_duals(inst);
  EXPECT_EQ(d.surrogate.schedule.completion[1], Rational(2));
  EXPECT_EQ(d.surrogate.schedule.completion[0], Rational(6));
  // Surrogate densities 2 and 3: lambda'_1 = 2*6, lambda'_2 from meeting at 2.
  EXPECT_EQ(d.surrogate.lambda[0], 12);
  EXPECT_EQ(d.surrogate.lambda[1], 12 - 2 * 2 + 3 * 2);
}

TEST(JdgfpDuals, SingleJob) {
  auto inst = make<double>(R"({"problem":"jdgfp",
    "g_per_job":[{"shape":"log"}],"jobs":[{"id":0,"r":1,"p":2,"w":3}]})");
  auto run = simulate_jdgfp(inst, Rational(1), 1.0);
  auto d = jdgfp_duals(inst, run);
  EXPECT_EQ(d.k, 2);
  double f = 3 * std::log1p(2.0);
  EXPECT_NEAR(d.cost, f, 1e-9);
  EXPECT_NEAR(d.lambda[0] * 2, f / 3, 1e-7);
  EXPECT_NEAR(d.total_contribution, f, 1e-7);
}

}  // namespace
}  // namespace pdsched
