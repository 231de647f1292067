#ifndef PDSCHED_SCHEDULERS_POLICY_HPP_
#define PDSCHED_SCHEDULERS_POLICY_HPP_

#include <string_view>

#include "pdsched/core/instance.hpp"

namespace pdsched {

enum class PolicyKind { kHdf, kFifo, kLifo, kPspHdf, kJdgfpRate };

std::string_view to_string(PolicyKind kind);
// "hdf", "fifo", "lifo", "psp", "jdgfp".
PolicyKind parse_policy(std::string_view text);

// True when a runs before b. HDF: density descending; FIFO: release
// ascending; LIFO: release descending; PSP: density/b_j descending. Ties go
// to the smaller id.
template <class Num>
bool runs_before(const Instance<Num>& instance, PolicyKind kind, std::size_t a,
                 std::size_t b);

// k = ceil(2 / eps).
int jdgfp_exponent(const Rational& eps);

}  // namespace pdsched

#endif  // PDSCHED_SCHEDULERS_POLICY_HPP_
