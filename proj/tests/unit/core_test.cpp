#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pdsched/core/errors.hpp"
#include "pdsched/core/objective.hpp"
#include "pdsched/core/schedule.hpp"
#include "pdsched/schedulers/class_a.hpp"

namespace pdsched {
namespace {

using testing::make;
using testing::q;

Schedule<Rational> single_run(const Rational& a, const Rational& b) {
  Schedule<Rational> s;
  s.speed = 1;
  append_segment<Rational>(s, a, b, {{0, Rational(1)}});
  s.completion = {b};
  return s;
}

TEST(Objective, SingleJob) {
  auto inst = make(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":0,"r":0,"p":2,"w":4}]})");
  auto s = single_run(0, 2);
  EXPECT_EQ(integral_cost(inst, s), 8);
  EXPECT_EQ(fractional_cost(inst, s), 4);
  EXPECT_EQ(fractional_cost_remaining_weight_form(inst, s), 4);
}

TEST(Objective, HdfGolden) {
  auto inst = make(testing::kHdfGolden);
  auto s = simulate_class_A(inst, PolicyKind::kHdf, Rational(1));
  EXPECT_EQ(integral_cost(inst, s), 15);
  EXPECT_EQ(fractional_cost(inst, s), q("15/2"));
  EXPECT_EQ(fractional_cost_remaining_weight_form(inst, s), q("15/2"));
}

TEST(Objective, FifoSquare) {
  auto inst = make(testing::kFifoSquare);
  auto s = simulate_class_A(inst, PolicyKind::kFifo, Rational(1));
  EXPECT_EQ(fractional_cost(inst, s), q("17/12"));
  EXPECT_EQ(fractional_cost_remaining_weight_form(inst, s), q("17/12"));
}

TEST(Objective, GcpUsesAbsoluteTime) {
  auto inst = make(R"({"problem":"gcp","g":{"shape":"linear"},
    "jobs":[{"id":0,"r":1,"p":2,"w":2}]})");
  auto s = simulate_class_A(inst, PolicyKind::kHdf, Rational(1));
  EXPECT_EQ(integral_cost(inst, s), 6);
}

TEST(Objective, EmptyInstance) {
  auto inst = make(R"({"problem":"gfp","g":{"shape":"linear"},"jobs":[]})");
  Schedule<Rational> s;
  EXPECT_EQ(integral_cost(inst, s), 0);
  EXPECT_EQ(fractional_cost(inst, s), 0);
  EXPECT_EQ(fractional_cost_remaining_weight_form(inst, s), 0);
}

TEST(Objective, IncompleteScheduleThrows) {
  auto inst = make(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":0,"r":0,"p":2,"w":4}]})");
  auto s = single_run(0, 1);
  try {
    integral_cost(inst, s);
    FAIL() << "expected IncompleteSchedule";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompleteSchedule);
  }
}

TEST(Objective, SplittingAPieceChangesNothing) {
  auto inst = make(R"({"problem":"gfp","g":{"shape":"power","exponent":3},
    "jobs":[{"id":0,"r":0,"p":2,"w":4}]})");
  auto whole = single_run(0, 2);
  Schedule<Rational> split;
  split.speed = 1;
  split.segments.push_back({Rational(0), q("3/4"), {{0, Rational(1)}}});
  split.segments.push_back({q("3/4"), Rational(2), {{0, Rational(1)}}});
  split.completion = {Rational(2)};
  EXPECT_EQ(integral_cost(inst, whole), integral_cost(inst, split));
  EXPECT_EQ(fractional_cost(inst, whole), fractional_cost(inst, split));
}

TEST(Objective, FractionalBelowIntegralOnRandomSchedules) {
  for (const char* g : {R"({"shape":"linear"})", R"({"shape":"power","exponent":2})",
                        R"({"shape":"log"})"}) {
    std::string text = std::string(R"({"problem":"gfp","g":)") + g +
                       R"(,"jobs":[{"id":1,"r":0,"p":3,"w":2},{"id":2,"r":1,"p":1,"w":5},
        {"id":3,"r":2,"p":2,"w":1}]})";
    auto inst = make<double>(text);
    for (auto kind : {PolicyKind::kHdf, PolicyKind::kFifo, PolicyKind::kLifo}) {
      auto s = simulate_class_A(inst, kind, 1.0);
      double f = fractional_cost(inst, s);
      EXPECT_LE(f, integral_cost(inst, s));
      EXPECT_TRUE(close_relative(f, fractional_cost_remaining_weight_form(inst, s), 1e-8));
    }
  }
}

TEST(Cost, PiecewiseLinearRejectsJumps) {
  EXPECT_THROW(testing::spec_from(R"({"problem":"gfp","g":{"shape":"piecewise_linear",
    "points":[[1,0],[2,1]]},"jobs":[]})"),
               Error);
  EXPECT_THROW(testing::spec_from(R"({"problem":"gfp","g":{"shape":"piecewise_linear",
    "points":[[0,0],[2,1],[1,2]]},"jobs":[]})"),
               Error);
}

TEST(Cost, ClassesAndModes) {
  EXPECT_EQ(CostSpec::linear(2).cost_class(), CostClass::kLinear);
  EXPECT_TRUE(CostSpec::power(2).is_convex());
  EXPECT_TRUE(CostSpec::power(q("1/2")).is_concave());
  EXPECT_FALSE(CostSpec::power(q("1/2")).exact_capable());
  EXPECT_FALSE(CostSpec::log1p().exact_capable());
  EXPECT_TRUE(CostSpec::power(3).exact_capable());
}

TEST(Cost, PowerValuesAndAntiderivative) {
  CostFunction<Rational> g(CostSpec::power(2));
  EXPECT_EQ(g.value(q("3/2")), q("9/4"));
  EXPECT_EQ(g.antiderivative(Rational(3)), 9);
  EXPECT_EQ(g.derivative(Rational(5)), 10);
}

TEST(Json, NumberFormats) {
  auto spec = testing::spec_from(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":1,"r":"1/3","p":"0.25","w":2}]})");
  EXPECT_EQ(spec.jobs[0].r, q("1/3"));
  EXPECT_EQ(spec.jobs[0].p, q("1/4"));
  EXPECT_EQ(spec.natural_mode(), ArithmeticMode::kExact);
}

TEST(Json, RejectsBadInstances) {
  EXPECT_THROW(testing::spec_from(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":1,"r":0,"p":0,"w":2}]})"),
               Error);
  EXPECT_THROW(testing::spec_from(R"({"problem":"gfp","g":{"shape":"linear"},
    "jobs":[{"id":1,"r":0,"p":1,"w":2},{"id":1,"r":0,"p":1,"w":2}]})"),
               Error);
  try {
    testing::spec_from(R"({"problem":"psp","g":{"shape":"linear"},"B":[[0]],
      "jobs":[{"id":1,"r":0,"p":1,"w":2}]})");
    FAIL() << "expected NonPositiveDemand";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveDemand);
  }
}

TEST(Numeric, FormatAndParse) {
  EXPECT_EQ(format_rational(q("6/4")), "3/2");
  EXPECT_EQ(format_rational(q("-2")), "-2");
  EXPECT_EQ(parse_rational("1.5"), q("3/2"));
  EXPECT_EQ(parse_rational("010"), 10);
  EXPECT_EQ(parse_rational("0.08"), q("2/25"));
  EXPECT_EQ(parse_rational("2.5e-1"), q("1/4"));
  EXPECT_THROW(parse_rational("x"), Error);
}

}  // namespace
}  // namespace pdsched
