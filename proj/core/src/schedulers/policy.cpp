#include "pdsched/schedulers/policy.hpp"

#include "pdsched/core/errors.hpp"

namespace pdsched {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kHdf: return "hdf";
    case PolicyKind::kFifo: return "fifo";
    case PolicyKind::kLifo: return "lifo";
    case PolicyKind::kPspHdf: return "psp";
    case PolicyKind::kJdgfpRate: return "jdgfp";
  }
  return "unknown";
}

PolicyKind parse_policy(std::string_view text) {
  if (text == "hdf") return PolicyKind::kHdf;
  if (text == "fifo") return PolicyKind::kFifo;
  if (text == "lifo") return PolicyKind::kLifo;
  if (text == "psp") return PolicyKind::kPspHdf;
  if (text == "jdgfp") return PolicyKind::kJdgfpRate;
  throw Error(ErrorCode::kInvalidInput,
              "unknown algorithm '" + std::string(text) + "'");
}

template <class Num>
bool runs_before(const Instance<Num>& instance, PolicyKind kind, std::size_t a,
                 std::size_t b) {
  const Job<Num>& ja = instance.job(a);
  const Job<Num>& jb = instance.job(b);
  switch (kind) {
    case PolicyKind::kHdf: {
      Num da = ja.density();
      Num db = jb.density();
      if (da != db) return da > db;
      break;
    }
    case PolicyKind::kFifo:
      if (ja.r != jb.r) return ja.r < jb.r;
      break;
    case PolicyKind::kLifo:
      if (ja.r != jb.r) return ja.r > jb.r;
      break;
    case PolicyKind::kPspHdf: {
      Num da = ja.density() / instance.min_demand(a);
      Num db = jb.density() / instance.min_demand(b);
      if (da != db) return da > db;
      break;
    }
    case PolicyKind::kJdgfpRate:
      throw Error(ErrorCode::kInvalidInput,
                  "jdgfp is not a single-job ordering policy");
  }
  return ja.id < jb.id;
}

int jdgfp_exponent(const Rational& eps) {
  if (eps <= 0) throw Error(ErrorCode::kInvalidInput, "eps must be > 0");
  Rational q = 2 / eps;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!c.fits_sint_p() || c > 100000) {
    throw Error(ErrorCode::kTooLarge, "eps too small");
  }
  return static_cast<int>(c.get_si());
}

template bool runs_before<Rational>(const Instance<Rational>&, PolicyKind,
                                    std::size_t, std::size_t);
template bool runs_before<double>(const Instance<double>&, PolicyKind,
                                  std::size_t, std::size_t);

}  // namespace pdsched
