#ifndef PDSCHED_ORACLE_SIMPLEX_HPP_
#define PDSCHED_ORACLE_SIMPLEX_HPP_

#include <vector>

#include "pdsched/core/numeric.hpp"

namespace pdsched {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

// min c.x subject to the rows, x >= 0.
template <class Num>
struct LpProblem {
  std::vector<std::vector<Num>> a;
  std::vector<Num> b;
  std::vector<RowSense> sense;
  std::vector<Num> c;

  std::size_t variables() const { return c.size(); }
  void add_row(std::vector<Num> coefficients, RowSense s, Num rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <class Num>
struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  Num objective{};
  std::vector<Num> x;
  long pivots = 0;
};

// Dense two-phase simplex with Bland's rule. Exact over rationals.
template <class Num>
LpSolution<Num> solve_lp(const LpProblem<Num>& problem);

}  // namespace pdsched

#endif  // PDSCHED_ORACLE_SIMPLEX_HPP_
