#include "pdsched/core/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pdsched/core/errors.hpp"

namespace pdsched {

std::string_view to_string(Problem problem) {
  switch (problem) {
    case Problem::kGfp: return "gfp";
    case Problem::kGcp: return "gcp";
    case Problem::kJdgfp: return "jdgfp";
    case Problem::kPsp: return "psp";
  }
  return "unknown";
}

Problem parse_problem(std::string_view text) {
  if (text == "gfp") return Problem::kGfp;
  if (text == "gcp") return Problem::kGcp;
  if (text == "jdgfp") return Problem::kJdgfp;
  if (text == "psp") return Problem::kPsp;
  throw Error(ErrorCode::kInvalidInput,
              "unknown problem '" + std::string(text) + "'");
}

void InstanceSpec::validate() const {
  std::set<int> ids;
  for (const auto& j : jobs) {
    if (!ids.insert(j.id).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate job id " + std::to_string(j.id));
    }
    if (j.r < 0) throw Error(ErrorCode::kInvalidInput, "release must be >= 0");
    if (j.p <= 0) throw Error(ErrorCode::kInvalidInput, "processing must be > 0");
    if (j.w <= 0) throw Error(ErrorCode::kInvalidInput, "weight must be > 0");
  }
  if (problem == Problem::kJdgfp) {
    if (!g && g_per_job.size() != jobs.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "jdgfp needs one cost function per job");
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (!cost_of(i).is_concave()) {
        throw Error(ErrorCode::kInvalidInput,
                    "jdgfp cost functions must be concave");
      }
      if (cost_of(i).shape == Shape::kPiecewiseLinear &&
          cost_of(i).cost_class() != CostClass::kLinear) {
        throw Error(ErrorCode::kUnsupportedShape,
                    "jdgfp cost functions must be differentiable");
      }
    }
  } else if (!g && problem != Problem::kPsp) {
    throw Error(ErrorCode::kInvalidInput, "missing cost function 'g'");
  }
  if (problem == Problem::kPsp) {
    if (g && g->cost_class() != CostClass::kLinear) {
      throw Error(ErrorCode::kUnsupportedShape, "psp requires linear cost");
    }
    if (demands.empty() && !jobs.empty()) {
      throw Error(ErrorCode::kInvalidInput, "psp requires a demand matrix B");
    }
    for (const auto& row : demands) {
      if (row.size() != jobs.size()) {
        throw Error(ErrorCode::kInvalidInput,
                    "every row of B needs one entry per job");
      }
      for (const auto& b : row) {
        if (b <= 0) {
          throw Error(ErrorCode::kNonPositiveDemand, "all b_ij must be > 0");
        }
      }
    }
  }
}

const CostSpec& InstanceSpec::cost_of(std::size_t input_index) const {
  static const CostSpec kUnit = CostSpec::linear(1);
  if (!g_per_job.empty()) return g_per_job.at(input_index);
  if (g) return *g;
  return kUnit;
}

ArithmeticMode InstanceSpec::natural_mode() const {
  if (problem == Problem::kJdgfp) return ArithmeticMode::kFloat;
  if (g && !g->exact_capable()) return ArithmeticMode::kFloat;
  for (const auto& c : g_per_job) {
    if (!c.exact_capable()) return ArithmeticMode::kFloat;
  }
  return ArithmeticMode::kExact;
}

bool InstanceSpec::equal_density() const {
  for (std::size_t i = 1; i < jobs.size(); ++i) {
    if (jobs[i].density() != jobs[0].density()) return false;
  }
  return true;
}

template <class Num>
Instance<Num>::Instance(const InstanceSpec& spec)
    : spec_(spec), problem_(spec.problem) {
  spec_.validate();
  std::vector<std::size_t> order(spec.jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ja = spec.jobs[a];
    const auto& jb = spec.jobs[b];
    if (ja.r != jb.r) return ja.r < jb.r;
    return ja.id < jb.id;
  });
  for (std::size_t i : order) {
    const auto& j = spec.jobs[i];
    jobs_.push_back(Job<Num>{j.id, from_rational<Num>(j.r),
                             from_rational<Num>(j.p), from_rational<Num>(j.w)});
  }
  shared_cost_ = spec.g_per_job.empty();
  if (shared_cost_) {
    costs_.emplace_back(spec.g ? *spec.g : CostSpec::linear(1));
  } else {
    for (std::size_t i : order) costs_.emplace_back(spec.g_per_job[i]);
  }
  equal_density_ = spec.equal_density();
  if (problem_ == Problem::kPsp) {
    for (const auto& row : spec.demands) {
      std::vector<Num> r;
      for (std::size_t i : order) r.push_back(from_rational<Num>(row[i]));
      demands_.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < jobs_.size(); ++j) {
      Num lo = demands_[0][j];
      Num hi = demands_[0][j];
      std::size_t tight = 0;
      for (std::size_t i = 1; i < demands_.size(); ++i) {
        if (demands_[i][j] < lo) lo = demands_[i][j];
        if (demands_[i][j] > hi) {
          hi = demands_[i][j];
          tight = i;
        }
      }
      min_demand_.push_back(lo);
      max_demand_.push_back(hi);
      tight_row_.push_back(tight);
    }
  }
}

template <class Num>
std::size_t Instance<Num>::index_of(int id) const {
  for (std::size_t i = 0; i < jobs_.size(); ++i) {
    if (jobs_[i].id == id) return i;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown job id " + std::to_string(id));
}

template <class Num>
std::size_t Instance<Num>::released_count(const Num& tau) const {
  std::size_t n = 0;
  while (n < jobs_.size() && jobs_[n].r <= tau) ++n;
  return n;
}

template class Instance<Rational>;
template class Instance<double>;

}  // namespace pdsched
