#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pdsched/core/errors.hpp"
#include "pdsched/core/objective.hpp"
#include "pdsched/oracle/simplex.hpp"
#include "pdsched/oracle/slot_lp.hpp"
#include "pdsched/schedulers/class_a.hpp"

namespace pdsched {
namespace {

using testing::make;
using testing::q;

TEST(Simplex, SmallProgram) {
  // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6.
  LpProblem<Rational> lp;
  lp.c = {Rational(-1), Rational(-1)};
  lp.add_row({Rational(1), Rational(2)}, RowSense::kLessEqual, Rational(4));
  lp.add_row({Rational(3), Rational(1)}, RowSense::kLessEqual, Rational(6));
  auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, q("-14/5"));
  EXPECT_EQ(sol.x[0], q("8/5"));
  EXPECT_EQ(sol.x[1], q("6/5"));
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LpProblem<Rational> unbounded;
  unbounded.c = {Rational(-1)};
  unbounded.add_row({Rational(1)}, RowSense::kGreaterEqual, Rational(-1));
  EXPECT_EQ(solve_lp(unbounded).status, LpStatus::kUnbounded);
  LpProblem<Rational> infeasible;
  infeasible.c = {Rational(1)};
  infeasible.add_row({Rational(1)}, RowSense::kEqual, Rational(-1));
  EXPECT_EQ(solve_lp(infeasible).status, LpStatus::kInfeasible);
}

TEST(SlotLp, SingleJobAtUnitAndHalfSpeed) {
  auto inst = make(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":1,"r":0,"p":2,"w":4}]})");
  EXPECT_EQ(lp_lower_bound(inst, Rational(1), Rational(1)).value, 4);
  EXPECT_EQ(lp_lower_bound(inst, Rational(1), q("1/2")).value, 8);
}

TEST(SlotLp, HdfGoldenMatchesFractionalCost) {
  auto inst = make(testing::kHdfGolden);
  auto lp = build_slot_lp(inst, Rational(1), Rational(1));
  EXPECT_EQ(lp.cost, SlotCost::kMidpoint);
  auto simplex = solve_slot_lp(lp);
  auto greedy = solve_slot_lp_greedy(inst, lp);
  EXPECT_EQ(simplex.value, q("15/2"));
  EXPECT_EQ(greedy.value, q("15/2"));
  auto s = simulate_class_A(inst, PolicyKind::kHdf, Rational(1));
  EXPECT_EQ(fractional_cost(inst, s), simplex.value);
}

TEST(SlotLp, GreedyAgreesWithSimplexOnRandomIntegerData) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> r(0, 5), p(1, 3), w(1, 9);
  for (int trial = 0; trial < 30; ++trial) {
    nlohmann::json jobs = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
      jobs.push_back({{"id", i + 1}, {"r", r(rng)}, {"p", p(rng)}, {"w", w(rng)}});
    }
    nlohmann::json spec = {{"problem", "gfp"}, {"g", {{"shape", "linear"}}}, {"jobs", jobs}};
    auto inst = make(spec.dump());
    auto lp = build_slot_lp(inst, Rational(1), Rational(1));
    auto a = solve_slot_lp(lp);
    auto b = solve_slot_lp_greedy(inst, lp);
    EXPECT_EQ(a.value, b.value) << spec.dump();
    auto s = simulate_class_A(inst, PolicyKind::kHdf, Rational(1));
    EXPECT_EQ(a.value, fractional_cost(inst, s)) << spec.dump();
  }
}

TEST(SlotLp, LowerBoundGrowsAsSlotsShrink) {
  auto inst = make(testing::kFifoSquare);
  Rational prev = -1;
  for (const char* h : {"1/2", "1/4", "1/8"}) {
    auto v = lp_lower_bound(inst, q(h), Rational(1)).value;
    EXPECT_LE(prev, v) << "h=" << h;
    prev = v;
  }
  auto s = simulate_class_A(inst, PolicyKind::kFifo, Rational(1));
  EXPECT_LE(prev, fractional_cost(inst, s));
}

TEST(SlotLp, Limits) {
  auto inst = make(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":1,"r":0,"p":500,"w":1}]})");
  try {
    build_slot_lp(inst, Rational(1), Rational(1));
    FAIL() << "expected TooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(SlotLp, ReleasesMustAlignWithSlots) {
  auto inst = make(testing::kFifoSquare);
  try {
    build_slot_lp(inst, Rational(1), Rational(1));
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
}

TEST(SlotLp, DumpIsLpFormat) {
  auto inst = make(testing::kHdfGolden);
  auto text = dump_lp(build_slot_lp(inst, Rational(1), Rational(1)));
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace pdsched
