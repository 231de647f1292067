#include "pdsched/duals/psp_duals.hpp"

#include "pdsched/core/errors.hpp"

namespace pdsched {

template <class Num>
std::size_t PspDuals<Num>::active_row(const Num& t) const {
  for (const auto& seg : surrogate.schedule.segments) {
    if (seg.start <= t && t < seg.end) {
      if (seg.idle()) return 0;
      return tight_row[seg.allocations.front().job];
    }
  }
  return 0;
}

template <class Num>
Num PspDuals<Num>::row_gamma(std::size_t row, const Num& t) const {
  if (row != active_row(t)) return Num(0);
  return mu.value(t);
}

template <class Num>
PspDuals<Num> psp_duals(const Instance<Num>& instance) {
  if (instance.problem() != Problem::kPsp) {
    throw Error(ErrorCode::kInvalidInput, "psp duals need a psp instance");
  }
  PspDuals<Num> out;
  out.surrogate = run_duals(instance, PolicyKind::kPspHdf, DualMethod::kPsp);
  out.rows = instance.rows();
  for (std::size_t j = 0; j < instance.size(); ++j) {
    Num v = instance.min_demand(j) * out.surrogate.lambda[j];
    out.lambda.push_back(v);
    out.tight_row.push_back(instance.tight_row(j));
  }
  out.mu = final_envelope(out.surrogate);
  return out;
}

template struct PspDuals<Rational>;
template struct PspDuals<double>;
template PspDuals<Rational> psp_duals<Rational>(const Instance<Rational>&);
template PspDuals<double> psp_duals<double>(const Instance<double>&);

}  // namespace pdsched
