#include "pdsched/core/json_io.hpp"

#include <fstream>

#include "pdsched/core/errors.hpp"

namespace pdsched {

using nlohmann::json;

Rational rational_from_json(const json& value) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) {
      return Rational(mpz_class(std::to_string(value.get<unsigned long long>())));
    }
    return Rational(mpz_class(std::to_string(value.get<long long>())));
  }
  if (value.is_number_float()) {
    // The shortest round-trip text is what the user wrote in almost all
    // cases ("0.1" stays 1/10).
    return parse_rational(format_double(value.get<double>()));
  }
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw Error(ErrorCode::kInvalidInput, "expected a number, got " + value.dump());
}

json rational_to_json(const Rational& value) {
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) {
    return value.get_num().get_si();
  }
  return format_rational(value);
}

CostSpec cost_from_json(const json& value) {
  if (!value.is_object() || !value.contains("shape")) {
    throw Error(ErrorCode::kInvalidInput, "cost function needs a 'shape'");
  }
  std::string shape = value.at("shape").get<std::string>();
  if (shape == "linear") {
    Rational a = value.contains("slope") ? rational_from_json(value["slope"])
                                         : Rational(1);
    return CostSpec::linear(a);
  }
  if (shape == "power") {
    return CostSpec::power(rational_from_json(value.at("exponent")));
  }
  if (shape == "log") return CostSpec::log1p();
  if (shape == "piecewise_linear") {
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& p : value.at("points")) {
      if (!p.is_array() || p.size() != 2) {
        throw Error(ErrorCode::kInvalidInput, "points must be [x, y] pairs");
      }
      pts.emplace_back(rational_from_json(p[0]), rational_from_json(p[1]));
    }
    return CostSpec::piecewise_linear(std::move(pts));
  }
  throw Error(ErrorCode::kUnsupportedShape, "unknown shape '" + shape + "'");
}

json cost_to_json(const CostSpec& cost) {
  json out;
  out["shape"] = std::string(to_string(cost.shape));
  switch (cost.shape) {
    case Shape::kLinear:
      out["slope"] = rational_to_json(cost.slope);
      break;
    case Shape::kPower:
      out["exponent"] = rational_to_json(cost.exponent);
      break;
    case Shape::kLog:
      break;
    case Shape::kPiecewiseLinear: {
      json pts = json::array();
      for (const auto& [x, y] : cost.points) {
        pts.push_back(json::array({rational_to_json(x), rational_to_json(y)}));
      }
      out["points"] = pts;
      break;
    }
  }
  return out;
}

InstanceSpec instance_from_json(const json& value) {
  InstanceSpec spec;
  spec.problem = parse_problem(value.at("problem").get<std::string>());
  if (value.contains("g") && !value["g"].is_null()) {
    spec.g = cost_from_json(value["g"]);
  }
  if (value.contains("g_per_job")) {
    for (const auto& c : value["g_per_job"]) {
      spec.g_per_job.push_back(cost_from_json(c));
    }
  }
  if (value.contains("B")) {
    for (const auto& row : value["B"]) {
      std::vector<Rational> r;
      for (const auto& b : row) r.push_back(rational_from_json(b));
      spec.demands.push_back(std::move(r));
    }
  }
  for (const auto& j : value.at("jobs")) {
    Job<Rational> job;
    job.id = j.at("id").get<int>();
    job.r = rational_from_json(j.at("r"));
    job.p = rational_from_json(j.at("p"));
    job.w = rational_from_json(j.at("w"));
    spec.jobs.push_back(std::move(job));
  }
  spec.validate();
  return spec;
}

json instance_to_json(const InstanceSpec& spec) {
  json out;
  out["problem"] = std::string(to_string(spec.problem));
  if (spec.g) out["g"] = cost_to_json(*spec.g);
  if (!spec.g_per_job.empty()) {
    json arr = json::array();
    for (const auto& c : spec.g_per_job) arr.push_back(cost_to_json(c));
    out["g_per_job"] = arr;
  }
  if (!spec.demands.empty()) {
    json rows = json::array();
    for (const auto& row : spec.demands) {
      json r = json::array();
      for (const auto& b : row) r.push_back(rational_to_json(b));
      rows.push_back(r);
    }
    out["B"] = rows;
  }
  json jobs = json::array();
  for (const auto& j : spec.jobs) {
    jobs.push_back({{"id", j.id},
                    {"r", rational_to_json(j.r)},
                    {"p", rational_to_json(j.p)},
                    {"w", rational_to_json(j.w)}});
  }
  out["jobs"] = jobs;
  return out;
}

InstanceSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  json value;
  try {
    in >> value;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, path + ": " + e.what());
  }
  return instance_from_json(value);
}

void save_json(const std::string& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  out << value.dump(2) << '\n';
}

template <class Num>
json schedule_to_json(const Instance<Num>& instance,
                      const Schedule<Num>& schedule) {
  json pieces = json::array();
  for (const auto& seg : schedule.segments) {
    if (seg.idle()) {
      pieces.push_back({{"t1", num_to_json(seg.start)},
                        {"t2", num_to_json(seg.end)},
                        {"job", nullptr},
                        {"rate", num_to_json(Num(0))}});
      continue;
    }
    for (const auto& a : seg.allocations) {
      pieces.push_back({{"t1", num_to_json(seg.start)},
                        {"t2", num_to_json(seg.end)},
                        {"job", instance.job(a.job).id},
                        {"rate", num_to_json(a.rate)}});
    }
  }
  json completions = json::object();
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (schedule.completion[j]) {
      completions[std::to_string(instance.job(j).id)] =
          num_to_json(*schedule.completion[j]);
    }
  }
  return {{"speed", num_to_json(schedule.speed)},
          {"mode", std::string(to_string(mode_of<Num>()))},
          {"pieces", pieces},
          {"completions", completions}};
}

template json schedule_to_json<Rational>(const Instance<Rational>&,
                                         const Schedule<Rational>&);
template json schedule_to_json<double>(const Instance<double>&,
                                       const Schedule<double>&);

}  // namespace pdsched
