#ifndef PDSCHED_TESTS_FIXTURES_HPP_
#define PDSCHED_TESTS_FIXTURES_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/json_io.hpp"
#include "pdsched/core/numeric.hpp"

namespace pdsched::testing {

inline InstanceSpec spec_from(const std::string& text) {
  InstanceSpec spec = instance_from_json(nlohmann::json::parse(text));
  spec.validate();
  return spec;
}

template <class Num = Rational>
Instance<Num> make(const std::string& text) {
  return Instance<Num>(spec_from(text));
}

inline Rational q(const char* text) { return parse_rational(text); }

// j1(r=0,p=2,w=4), j2(r=1,p=1,w=3), g(t)=t.
inline const char* kHdfGolden = R"({"problem":"gfp","g":{"shape":"linear"},
  "jobs":[{"id":1,"r":0,"p":2,"w":4},{"id":2,"r":1,"p":1,"w":3}]})";

// Unit densities, g(t)=t^2: j1(r=0,p=1), j2(r=1/2,p=1).
inline const char* kFifoSquare = R"({"problem":"gfp",
  "g":{"shape":"power","exponent":2},
  "jobs":[{"id":1,"r":0,"p":1,"w":1},{"id":2,"r":"1/2","p":1,"w":1}]})";

}  // namespace pdsched::testing

#endif  // PDSCHED_TESTS_FIXTURES_HPP_
