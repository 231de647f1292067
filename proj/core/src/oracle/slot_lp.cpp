#include "pdsched/oracle/slot_lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdsched/core/errors.hpp"

namespace pdsched {

namespace {

// Smallest integer >= x.
std::size_t ceil_index(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_ui();
}
std::size_t ceil_index(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }
bool is_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9; }

std::size_t to_index(const Rational& x) { return x.get_num().get_ui(); }
std::size_t to_index(double x) { return static_cast<std::size_t>(std::round(x)); }

}  // namespace

template <class Num>
SlotLp<Num> build_slot_lp(const Instance<Num>& instance, const Num& width,
                          const Num& speed, const SlotLpLimits& limits) {
  if (!(width > 0) || !(speed > 0)) {
    throw Error(ErrorCode::kInvalidInput, "slot width and speed must be > 0");
  }
  if (instance.problem() != Problem::kGfp &&
      instance.problem() != Problem::kGcp) {
    throw Error(ErrorCode::kInvalidInput,
                "the slot relaxation covers gfp and gcp instances");
  }
  SlotLp<Num> lp;
  lp.width = width;
  lp.speed = speed;
  const std::size_t n = instance.size();
  const bool linear =
      n > 0 && instance.cost(0).spec().cost_class() == CostClass::kLinear;
  lp.cost = linear ? SlotCost::kMidpoint : SlotCost::kLowerBound;

  Num max_r = 0, total_p = 0;
  for (const auto& j : instance.jobs()) {
    max_r = num_max(max_r, j.r);
    total_p += j.p;
  }
  Num horizon = (max_r + total_p / speed) / width;
  lp.slots = ceil_index(horizon);
  if (lp.slots > limits.max_slots) {
    throw Error(ErrorCode::kTooLarge, "slot relaxation needs " +
                                          std::to_string(lp.slots) + " slots");
  }
  std::size_t vars = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Num s = instance.job(j).r / width;
    if (!is_integer(s)) {
      throw Error(ErrorCode::kInvalidInput,
                  "release times must be multiples of the slot width");
    }
    lp.first_slot.push_back(to_index(s));
    lp.offset.push_back(vars);
    vars += lp.slots - std::min(lp.slots, lp.first_slot.back());
  }
  if (vars > limits.max_variables) {
    throw Error(ErrorCode::kTooLarge, "slot relaxation needs " +
                                          std::to_string(vars) + " variables");
  }

  LpProblem<Num>& prob = lp.problem;
  prob.c.assign(vars, Num(0));
  lp.names.resize(vars);
  for (std::size_t j = 0; j < n; ++j) {
    const Job<Num>& job = instance.job(j);
    const Num delta = job.density();
    const Num shift = instance.cost_shift(j);
    const auto& g = instance.cost(j);
    for (std::size_t t = lp.first_slot[j]; t < lp.slots; ++t) {
      std::size_t v = lp.offset[j] + t - lp.first_slot[j];
      Num start = width * Num(static_cast<long>(t));
      Num c;
      if (lp.cost == SlotCost::kMidpoint) {
        Num mid = start + width / 2;
        c = delta * g.value(mid - shift);
      } else {
        c = delta * g.value(start - shift);
      }
      prob.c[v] = c;
      lp.names[v] = "y_" + std::to_string(job.id) + "_" + std::to_string(t);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Num> row(vars, Num(0));
    for (std::size_t t = lp.first_slot[j]; t < lp.slots; ++t) {
      row[lp.offset[j] + t - lp.first_slot[j]] = 1;
    }
    prob.add_row(std::move(row), RowSense::kEqual, instance.job(j).p);
  }
  for (std::size_t t = 0; t < lp.slots; ++t) {
    std::vector<Num> row(vars, Num(0));
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (t >= lp.first_slot[j]) {
        row[lp.offset[j] + t - lp.first_slot[j]] = 1;
        any = true;
      }
    }
    if (any) prob.add_row(std::move(row), RowSense::kLessEqual, speed * width);
  }
  return lp;
}

namespace {

template <class Num>
SlotLpResult<Num> unpack(const SlotLp<Num>& lp, const std::vector<Num>& x) {
  SlotLpResult<Num> out;
  const std::size_t n = lp.first_slot.size();
  out.y.assign(n, std::vector<Num>(lp.slots, Num(0)));
  Num value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t t = lp.first_slot[j]; t < lp.slots; ++t) {
      std::size_t v = lp.offset[j] + t - lp.first_slot[j];
      out.y[j][t] = x[v];
      value += lp.problem.c[v] * x[v];
    }
  }
  out.value = value;
  return out;
}

// LP files take decimals only.
template <class Num>
std::string lp_number(const Num& v) {
  return format_double(to_double(v));
}

}  // namespace

template <class Num>
SlotLpResult<Num> solve_slot_lp(const SlotLp<Num>& lp) {
  LpSolution<Num> sol = solve_lp(lp.problem);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kInfeasible, "slot relaxation has no optimum");
  }
  SlotLpResult<Num> out = unpack(lp, sol.x);
  out.pivots = sol.pivots;
  return out;
}

template <class Num>
SlotLpResult<Num> solve_slot_lp_greedy(const Instance<Num>& instance,
                                       const SlotLp<Num>& lp) {
  if (lp.cost != SlotCost::kMidpoint) {
    throw Error(ErrorCode::kUnsupportedShape,
                "the greedy solver needs midpoint (linear) costs");
  }
  const std::size_t n = instance.size();
  std::vector<Num> left(n);
  for (std::size_t j = 0; j < n; ++j) left[j] = instance.job(j).p;
  std::vector<Num> x(lp.problem.variables(), Num(0));
  for (std::size_t t = 0; t < lp.slots; ++t) {
    Num room = lp.speed * lp.width;
    std::vector<std::size_t> avail;
    for (std::size_t j = 0; j < n; ++j) {
      if (t >= lp.first_slot[j] && left[j] > 0) avail.push_back(j);
    }
    std::sort(avail.begin(), avail.end(), [&](std::size_t a, std::size_t b) {
      Num da = instance.job(a).density(), db = instance.job(b).density();
      if (da != db) return da > db;
      return a < b;
    });
    for (std::size_t j : avail) {
      if (!(room > 0)) break;
      Num take = num_min(room, left[j]);
      x[lp.offset[j] + t - lp.first_slot[j]] = take;
      left[j] -= take;
      room -= take;
    }
  }
  return unpack(lp, x);
}

template <class Num>
SlotLpResult<Num> lp_lower_bound(const Instance<Num>& instance,
                                 const Num& width, const Num& speed,
                                 const SlotLpLimits& limits) {
  return solve_slot_lp(build_slot_lp(instance, width, speed, limits));
}

template <class Num>
std::string dump_lp(const SlotLp<Num>& lp) {
  std::ostringstream out;
  const auto& p = lp.problem;
  out << "\\ slot relaxation, width " << lp_number(lp.width) << ", speed "
      << lp_number(lp.speed) << "\n";
  out << "Minimize\n obj:";
  for (std::size_t v = 0; v < p.variables(); ++v) {
    out << (v == 0 ? " " : " + ") << lp_number(p.c[v]) << " " << lp.names[v];
  }
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    out << " c" << i << ":";
    bool first = true;
    for (std::size_t v = 0; v < p.variables(); ++v) {
      if (p.a[i][v] == 0) continue;
      out << (first ? " " : " + ") << lp_number(p.a[i][v]) << " "
          << lp.names[v];
      first = false;
    }
    out << (p.sense[i] == RowSense::kEqual
                ? " = "
                : p.sense[i] == RowSense::kLessEqual ? " <= " : " >= ")
        << lp_number(p.b[i]) << "\n";
  }
  out << "End\n";
  return out.str();
}

#define PDSCHED_INSTANTIATE(Num)                                             \
  template SlotLp<Num> build_slot_lp<Num>(const Instance<Num>&, const Num&,  \
                                          const Num&, const SlotLpLimits&);  \
  template SlotLpResult<Num> solve_slot_lp<Num>(const SlotLp<Num>&);         \
  template SlotLpResult<Num> solve_slot_lp_greedy<Num>(const Instance<Num>&, \
                                                       const SlotLp<Num>&);  \
  template SlotLpResult<Num> lp_lower_bound<Num>(                            \
      const Instance<Num>&, const Num&, const Num&, const SlotLpLimits&);    \
  template std::string dump_lp<Num>(const SlotLp<Num>&);

PDSCHED_INSTANTIATE(Rational)
PDSCHED_INSTANTIATE(double)
#undef PDSCHED_INSTANTIATE

}  // namespace pdsched
