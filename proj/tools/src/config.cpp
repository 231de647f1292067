#include "pdsched/app/config.hpp"

#include <algorithm>
#include <random>

#include "pdsched/core/errors.hpp"
#include "pdsched/core/json_io.hpp"
#include "pdsched/schedulers/policy.hpp"

namespace pdsched::app {

namespace {

template <class T>
void read(const nlohmann::json& v, const char* key, T& out) {
  if (v.contains(key)) out = v.at(key).get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& v) {
  if (!v.is_object()) {
    throw Error(ErrorCode::kInvalidInput, "config must be a JSON object");
  }
  ExperimentConfig c;
  try {
    read(v, "seed", c.seed);
    read(v, "seeds", c.seeds);
    read(v, "n", c.n);
    read(v, "n_min", c.n_min);
    if (v.contains("problem")) {
      c.problem = parse_problem(v.at("problem").get<std::string>());
    }
    if (v.contains("g") && !v.at("g").is_null()) c.g = cost_from_json(v.at("g"));
    if (v.contains("g_family")) {
      for (const auto& g : v.at("g_family")) c.g_family.push_back(cost_from_json(g));
    }
    read(v, "r_max", c.r_max);
    read(v, "p_min", c.p_min);
    read(v, "p_max", c.p_max);
    read(v, "w_max", c.w_max);
    read(v, "grain", c.grain);
    if (v.contains("equal_density") && !v.at("equal_density").is_null()) {
      c.equal_density = rational_from_json(v.at("equal_density"));
    }
    read(v, "rows", c.rows);
    read(v, "demand_max", c.demand_max);
    read(v, "algorithm", c.algorithm);
    if (v.contains("eps")) {
      c.eps.clear();
      const auto& e = v.at("eps");
      if (e.is_array()) {
        for (const auto& x : e) c.eps.push_back(rational_from_json(x));
      } else {
        c.eps.push_back(rational_from_json(e));
      }
    }
    read(v, "checks", c.checks);
    read(v, "mode", c.mode);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("bad config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json v;
  v["seed"] = seed;
  v["seeds"] = seeds;
  v["n"] = n;
  v["n_min"] = n_min;
  v["problem"] = std::string(to_string(problem));
  v["g"] = g ? cost_to_json(*g) : nlohmann::json();
  nlohmann::json family = nlohmann::json::array();
  for (const auto& f : g_family) family.push_back(cost_to_json(f));
  v["g_family"] = family;
  v["r_max"] = r_max;
  v["p_min"] = p_min;
  v["p_max"] = p_max;
  v["w_max"] = w_max;
  v["grain"] = grain;
  v["equal_density"] =
      equal_density ? rational_to_json(*equal_density) : nlohmann::json();
  v["rows"] = rows;
  v["demand_max"] = demand_max;
  v["algorithm"] = algorithm;
  nlohmann::json e = nlohmann::json::array();
  for (const auto& x : eps) e.push_back(rational_to_json(x));
  v["eps"] = e;
  v["checks"] = checks;
  v["mode"] = mode;
  return v;
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& m) {
    throw Error(ErrorCode::kInvalidInput, "bad config: " + m);
  };
  if (n < 0) bad("n must be >= 0");
  if (n_min > n) bad("n_min must be <= n");
  if (seeds < 0) bad("seeds must be >= 0");
  if (r_max < 0) bad("r_max must be >= 0");
  if (p_min < 1 || p_max < p_min) bad("need 1 <= p_min <= p_max");
  if (w_max < 1) bad("w_max must be >= 1");
  if (grain < 1) bad("grain must be >= 1");
  if (equal_density && *equal_density <= 0) bad("equal_density must be > 0");
  if (problem == Problem::kPsp && (rows < 1 || demand_max < 1)) {
    bad("psp needs rows >= 1 and demand_max >= 1");
  }
  if (!g && g_family.empty()) bad("either g or g_family is required");
  for (const auto& e : eps) {
    if (e <= 0) bad("eps must be > 0");
  }
  if (mode != "auto" && mode != "exact" && mode != "float") {
    bad("mode must be auto, exact or float");
  }
  parse_policy(algorithm);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* kDigits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string config_hash(const nlohmann::json& value) {
  return hash_hex(fnv1a(value.dump()));
}

InstanceSpec generate(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  InstanceSpec spec;
  spec.problem = config.problem;
  int n = config.n_min < 0 ? config.n : draw(std::max(0, config.n_min), config.n);
  const Rational grain(config.grain);
  for (int i = 0; i < n; ++i) {
    Job<Rational> job;
    job.id = i + 1;
    job.r = Rational(draw(0, config.r_max * config.grain)) / grain;
    job.p = Rational(draw(config.p_min * config.grain,
                          config.p_max * config.grain)) /
            grain;
    job.r.canonicalize();
    job.p.canonicalize();
    if (config.equal_density) {
      job.w = *config.equal_density * job.p;
    } else {
      job.w = Rational(draw(1, config.w_max));
    }
    spec.jobs.push_back(job);
  }
  if (config.g_family.empty()) {
    spec.g = config.g;
  } else {
    for (int i = 0; i < n; ++i) {
      spec.g_per_job.push_back(
          config.g_family[draw(0, static_cast<int>(config.g_family.size()) - 1)]);
    }
  }
  if (config.problem == Problem::kPsp) {
    int m = draw(1, config.rows);
    spec.demands.assign(m, std::vector<Rational>(n));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) spec.demands[i][j] = Rational(draw(1, config.demand_max));
    }
  }
  spec.validate();
  return spec;
}

}  // namespace pdsched::app
