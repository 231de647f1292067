#ifndef PDSCHED_CORE_JSON_IO_HPP_
#define PDSCHED_CORE_JSON_IO_HPP_

#include <nlohmann/json.hpp>

#include <string>

#include "pdsched/core/instance.hpp"
#include "pdsched/core/schedule.hpp"

namespace pdsched {

// Numbers may be JSON integers, JSON floats, decimal strings or "a/b".
Rational rational_from_json(const nlohmann::json& value);
nlohmann::json rational_to_json(const Rational& value);

// Exact values are written as strings ("7/2"), floats as JSON numbers.
inline nlohmann::json num_to_json(const Rational& value) {
  return format_rational(value);
}
inline nlohmann::json num_to_json(double value) { return value; }

CostSpec cost_from_json(const nlohmann::json& value);
nlohmann::json cost_to_json(const CostSpec& cost);

InstanceSpec instance_from_json(const nlohmann::json& value);
nlohmann::json instance_to_json(const InstanceSpec& spec);

InstanceSpec load_instance(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& value);

template <class Num>
nlohmann::json schedule_to_json(const Instance<Num>& instance,
                                const Schedule<Num>& schedule);

}  // namespace pdsched

#endif  // PDSCHED_CORE_JSON_IO_HPP_
