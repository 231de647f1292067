#ifndef PDSCHED_APP_CONFIG_HPP_
#define PDSCHED_APP_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdsched/core/instance.hpp"

namespace pdsched::app {

// Everything needed to regenerate an experiment. Ranges are inclusive
// integer ranges; values are divided by `grain` to get rational data.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  int seeds = 1;  // sweep covers seed, seed+1, ..., seed+seeds-1
  int n = 5;
  int n_min = -1;  // -1: always n jobs
  Problem problem = Problem::kGfp;
  std::optional<CostSpec> g;
  // When non-empty, every job draws its own g from this list.
  std::vector<CostSpec> g_family;
  int r_max = 10;
  int p_min = 1;
  int p_max = 10;
  int w_max = 10;
  int grain = 1;
  // w_j = delta * p_j when set.
  std::optional<Rational> equal_density;
  int rows = 2;
  int demand_max = 4;

  std::string algorithm = "hdf";
  std::vector<Rational> eps{Rational(1)};
  std::vector<std::string> checks{"p", "q", "feasible"};
  std::string mode = "auto";  // auto | exact | float

  static ExperimentConfig from_json(const nlohmann::json& value);
  nlohmann::json to_json() const;
  // Throws InvalidInput on inconsistent settings.
  void validate() const;
};

// FNV-1a over the compact JSON dump.
std::uint64_t fnv1a(const std::string& text);
std::string hash_hex(std::uint64_t h);
std::string config_hash(const nlohmann::json& value);

InstanceSpec generate(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace pdsched::app

#endif  // PDSCHED_APP_CONFIG_HPP_
