#include "pdsched/oracle/simplex.hpp"

#include "pdsched/core/errors.hpp"

namespace pdsched {

template <class Num>
void LpProblem<Num>::add_row(std::vector<Num> coefficients, RowSense s,
                             Num rhs) {
  coefficients.resize(c.size());
  a.push_back(std::move(coefficients));
  sense.push_back(s);
  b.push_back(std::move(rhs));
}

namespace {

// Sign tests; the double variant ignores round-off noise.
inline bool positive(const Rational& v) { return sgn(v) > 0; }
inline bool negative(const Rational& v) { return sgn(v) < 0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool positive(double v) { return v > 1e-12; }
inline bool negative(double v) { return v < -1e-12; }
inline bool is_zero(double v) { return !positive(v) && !negative(v); }

template <class Num>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_(rows, std::vector<Num>(cols + 1)),
        cost_(cols + 1), basis_(rows) {}

  Num& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Num& rhs(std::size_t i) { return t_[i][cols_]; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return rows_; }

  // Reduced costs for cost vector c given the current basis.
  void price(const std::vector<Num>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) {
      cost_[j] = j < cols_ ? c[j] : Num(0);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const Num cb = c[basis_[i]];
      if (is_zero(cb)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (!is_zero(t_[i][j])) cost_[j] -= cb * t_[i][j];
      }
    }
  }

  // Current objective value c_B . x_B.
  Num objective() const {
    Num v = -cost_[cols_];
    return v;
  }

  void pivot(std::size_t r, std::size_t s) {
    const Num inv = Num(1) / t_[r][s];
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (!is_zero(t_[r][j])) t_[r][j] *= inv;
    }
    t_[r][s] = 1;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || is_zero(t_[i][s])) continue;
      const Num f = t_[i][s];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (!is_zero(t_[r][j])) t_[i][j] -= f * t_[r][j];
      }
      t_[i][s] = 0;
    }
    if (!is_zero(cost_[s])) {
      const Num f = cost_[s];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (!is_zero(t_[r][j])) cost_[j] -= f * t_[r][j];
      }
      cost_[s] = 0;
    }
    basis_[r] = s;
  }

  // Bland's rule iterations over the allowed columns. Returns false when
  // unbounded.
  bool optimize(const std::vector<bool>& allowed, long& pivots) {
    while (true) {
      std::size_t s = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && negative(cost_[j])) {
          s = j;
          break;
        }
      }
      if (s == cols_) return true;
      std::size_t r = rows_;
      Num best{};
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!positive(t_[i][s])) continue;
        Num ratio = t_[i][cols_] / t_[i][s];
        if (r == rows_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == rows_) return false;
      pivot(r, s);
      ++pivots;
    }
  }

  void drop_row(std::size_t i) {
    t_.erase(t_.begin() + static_cast<long>(i));
    basis_.erase(basis_.begin() + static_cast<long>(i));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Num>> t_;
  std::vector<Num> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

template <class Num>
LpSolution<Num> solve_lp(const LpProblem<Num>& problem) {
  const std::size_t m = problem.a.size();
  const std::size_t n = problem.variables();
  // Normalize to b >= 0.
  std::vector<std::vector<Num>> a = problem.a;
  std::vector<Num> b = problem.b;
  std::vector<RowSense> sense = problem.sense;
  for (std::size_t i = 0; i < m; ++i) {
    if (negative(b[i])) {
      for (Num& v : a[i]) v = -v;
      b[i] = -b[i];
      if (sense[i] == RowSense::kLessEqual) {
        sense[i] = RowSense::kGreaterEqual;
      } else if (sense[i] == RowSense::kGreaterEqual) {
        sense[i] = RowSense::kLessEqual;
      }
    }
  }
  std::size_t slack_count = 0, art_count = 0;
  for (RowSense s : sense) {
    if (s != RowSense::kEqual) ++slack_count;
    if (s != RowSense::kLessEqual) ++art_count;
  }
  const std::size_t cols = n + slack_count + art_count;
  const std::size_t first_art = n + slack_count;
  Tableau<Num> tab(m, cols);
  std::size_t next_slack = n, next_art = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = a[i][j];
    tab.rhs(i) = b[i];
    switch (sense[i]) {
      case RowSense::kLessEqual:
        tab.at(i, next_slack) = 1;
        tab.basis()[i] = next_slack++;
        break;
      case RowSense::kGreaterEqual:
        tab.at(i, next_slack++) = -1;
        [[fallthrough]];
      case RowSense::kEqual:
        tab.at(i, next_art) = 1;
        tab.basis()[i] = next_art++;
        break;
    }
  }

  LpSolution<Num> out;
  std::vector<bool> allowed(cols, true);
  if (art_count > 0) {
    std::vector<Num> phase1(cols, Num(0));
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1;
    tab.price(phase1);
    tab.optimize(allowed, out.pivots);
    if (positive(tab.objective())) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive artificials out of the basis; rows where that is impossible
    // are redundant.
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (tab.basis()[i] < first_art) continue;
      std::size_t s = cols;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (!is_zero(tab.at(i, j))) {
          s = j;
          break;
        }
      }
      if (s == cols) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, s);
        ++out.pivots;
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  }
  std::vector<Num> cost(cols, Num(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.c[j];
  tab.price(cost);
  if (!tab.optimize(allowed, out.pivots)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.x.assign(n, Num(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.basis()[i] < n) out.x[tab.basis()[i]] = tab.rhs(i);
  }
  Num obj = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_zero(out.x[j])) obj += problem.c[j] * out.x[j];
  }
  out.objective = obj;
  return out;
}

template struct LpProblem<Rational>;
template struct LpProblem<double>;
template LpSolution<Rational> solve_lp<Rational>(const LpProblem<Rational>&);
template LpSolution<double> solve_lp<double>(const LpProblem<double>&);

}  // namespace pdsched
