#ifndef PDSCHED_CORE_INSTANCE_HPP_
#define PDSCHED_CORE_INSTANCE_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "pdsched/core/cost_function.hpp"
#include "pdsched/core/numeric.hpp"

namespace pdsched {

enum class Problem { kGfp, kGcp, kJdgfp, kPsp };

std::string_view to_string(Problem problem);
Problem parse_problem(std::string_view text);

template <class Num>
struct Job {
  int id = 0;
  Num r{};
  Num p{};
  Num w{};

  Num density() const {
    Num d = w / p;
    return d;
  }
};

// Instance as read from disk: rational data, jobs in input order.
struct InstanceSpec {
  Problem problem = Problem::kGfp;
  std::vector<Job<Rational>> jobs;
  std::optional<CostSpec> g;
  std::vector<CostSpec> g_per_job;
  // demands[i][j] for row i and input job j (PSP only).
  std::vector<std::vector<Rational>> demands;

  // Throws InvalidInput / NonPositiveDemand on malformed data.
  void validate() const;
  // Exact when every cost function has rational closed forms.
  ArithmeticMode natural_mode() const;
  bool equal_density() const;
  const CostSpec& cost_of(std::size_t input_index) const;
};

// Numeric view of an instance. Jobs are sorted by (r, id); all per-job data
// is indexed by that sorted position.
template <class Num>
class Instance {
 public:
  explicit Instance(const InstanceSpec& spec);

  Problem problem() const { return problem_; }
  const InstanceSpec& spec() const { return spec_; }
  std::size_t size() const { return jobs_.size(); }
  const std::vector<Job<Num>>& jobs() const { return jobs_; }
  const Job<Num>& job(std::size_t i) const { return jobs_[i]; }
  const CostFunction<Num>& cost(std::size_t i) const {
    return costs_[shared_cost_ ? 0 : i];
  }
  bool shared_cost() const { return shared_cost_; }
  bool equal_density() const { return equal_density_; }

  // PSP demand data, indexed [row][job].
  std::size_t rows() const { return demands_.size(); }
  const Num& demand(std::size_t row, std::size_t j) const {
    return demands_[row][j];
  }
  const Num& min_demand(std::size_t j) const { return min_demand_[j]; }
  const Num& max_demand(std::size_t j) const { return max_demand_[j]; }
  // Smallest row achieving the column maximum.
  std::size_t tight_row(std::size_t j) const { return tight_row_[j]; }

  // Index of the job with this id, or throws.
  std::size_t index_of(int id) const;

  // Time origin of job j's cost: r_j for flow-time problems, 0 for GCP.
  Num cost_shift(std::size_t j) const {
    return problem_ == Problem::kGcp ? Num(0) : jobs_[j].r;
  }

  // Number of jobs with r <= tau; they form a prefix of jobs().
  std::size_t released_count(const Num& tau) const;

 private:
  InstanceSpec spec_;
  Problem problem_;
  std::vector<Job<Num>> jobs_;
  std::vector<CostFunction<Num>> costs_;
  bool shared_cost_ = true;
  bool equal_density_ = true;
  std::vector<std::vector<Num>> demands_;
  std::vector<Num> min_demand_;
  std::vector<Num> max_demand_;
  std::vector<std::size_t> tight_row_;
};

extern template class Instance<Rational>;
extern template class Instance<double>;

}  // namespace pdsched

#endif  // PDSCHED_CORE_INSTANCE_HPP_
