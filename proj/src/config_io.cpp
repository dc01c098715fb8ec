#include "swan/config_io.hpp"

#include <fstream>
#include <stdexcept>

namespace swan {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("config: " + what);
}

double number_at(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
  return j;
}

SystemConfig config_from(const json& j) {
  SystemConfig cfg = default_system_config();
  cfg.carrier_frequency_hz =
      number_at(j, "carrier_frequency_hz", cfg.carrier_frequency_hz);
  cfg.n_eff = number_at(j, "n_eff", cfg.n_eff);
  cfg.deploy_height_m = number_at(j, "deploy_height_m", cfg.deploy_height_m);
  cfg.attenuation_db_per_m =
      number_at(j, "kappa_db_per_m", cfg.attenuation_db_per_m);
  if (j.contains("noise_power_dbm"))
    cfg.noise_power_w = dbm_to_watts(number_at(j, "noise_power_dbm", -90.0));
  if (j.contains("min_spacing_m")) {
    const auto& v = j.at("min_spacing_m");
    if (v.is_string()) {
      if (v.get<std::string>() != "half_wavelength")
        fail("min_spacing_m: unknown keyword '" + v.get<std::string>() + "'");
      cfg.min_spacing_m = cfg.wavelength() / 2.0;
    } else if (v.is_number()) {
      cfg.min_spacing_m = v.get<double>();
    } else {
      fail("min_spacing_m must be a number or \"half_wavelength\"");
    }
  } else {
    cfg.min_spacing_m = cfg.wavelength() / 2.0;
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return cfg;
}

}  // namespace

SystemConfig default_system_config() {
  SystemConfig cfg;
  cfg.carrier_frequency_hz = 28e9;
  cfg.n_eff = 1.4;
  cfg.deploy_height_m = 3.0;
  cfg.attenuation_db_per_m = 0.0;
  cfg.noise_power_w = dbm_to_watts(-90.0);
  cfg.min_spacing_m = cfg.wavelength() / 2.0;
  return cfg;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) fail("scenario must be a JSON object");
  Scenario sc;
  sc.config = config_from(j);

  sc.layout.num_segments =
      static_cast<int>(number_at(j, "num_segments", 50.0));
  sc.layout.segment_length_m = number_at(j, "segment_length_m", 1.0);
  sc.layout.first_feed_m =
      number_at(j, "first_feed_m", -sc.layout.span() / 2.0);
  try {
    sc.layout.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }

  if (!j.contains("users") || !j.at("users").is_array() ||
      j.at("users").empty())
    fail("users must be a non-empty array");
  for (const auto& ju : j.at("users")) {
    if (!ju.is_object()) fail("each user must be an object");
    User u;
    u.x_m = number_at(ju, "x_m", 0.0);
    u.y_m = number_at(ju, "y_m", 0.0);
    u.power_w = dbm_to_watts(number_at(ju, "power_dbm", 10.0));
    if (!(u.power_w > 0.0)) fail("user power must be positive");
    sc.users.push_back(u);
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(load_json(path));
}

Scheme parse_scheme(const std::string& name) {
  if (name == "ps_tdma") return Scheme::kPsTdma;
  if (name == "pm_tdma") return Scheme::kPmTdma;
  if (name == "noma") return Scheme::kNoma;
  fail("unknown scheme '" + name + "'");
}

Protocol parse_protocol(const std::string& name) {
  if (name == "ss") return Protocol::kSegmentSelection;
  if (name == "sa") return Protocol::kSegmentAggregation;
  if (name == "pass") return Protocol::kPassBaseline;
  fail("unknown protocol '" + name + "'");
}

ExperimentSpec parse_experiment_spec(const json& j) {
  if (!j.is_object()) fail("spec must be a JSON object");
  ExperimentSpec spec;
  spec.config = j.contains("config") ? config_from(j.at("config"))
                                     : default_system_config();

  if (!j.contains("sweep") || !j.at("sweep").is_string())
    fail("spec needs a \"sweep\" kind");
  const std::string kind = j.at("sweep").get<std::string>();
  if (kind == "dx")
    spec.kind = SweepKind::kDx;
  else if (kind == "segments_fixed_span")
    spec.kind = SweepKind::kSegmentsFixedSpan;
  else if (kind == "segments_fixed_length")
    spec.kind = SweepKind::kSegmentsFixedLength;
  else if (kind == "convergence")
    spec.kind = SweepKind::kConvergence;
  else
    fail("unknown sweep kind '" + kind + "'");

  if (j.contains("values")) {
    if (!j.at("values").is_array()) fail("values must be an array");
    for (const auto& v : j.at("values")) {
      if (!v.is_number()) fail("values must be numbers");
      spec.values.push_back(v.get<double>());
    }
  }
  spec.segment_length_m =
      number_at(j, "segment_length_m", spec.segment_length_m);
  spec.span_m = number_at(j, "span_m", spec.span_m);
  spec.num_segments =
      static_cast<int>(number_at(j, "num_segments", spec.num_segments));
  spec.trials = static_cast<int>(number_at(j, "trials", spec.trials));
  spec.seed = static_cast<uint64_t>(number_at(j, "seed", 1.0));
  spec.num_users = static_cast<int>(number_at(j, "num_users", spec.num_users));
  spec.region_dy_m = number_at(j, "region_dy_m", spec.region_dy_m);
  spec.user_power_w = dbm_to_watts(number_at(j, "user_power_dbm", 10.0));
  spec.grid_points =
      static_cast<int>(number_at(j, "grid_q", spec.grid_points));
  spec.ao_epsilon = number_at(j, "ao_epsilon", spec.ao_epsilon);
  spec.ao_max_iters =
      static_cast<int>(number_at(j, "ao_max_iters", spec.ao_max_iters));

  if (j.contains("protocols")) {
    if (!j.at("protocols").is_array()) fail("protocols must be an array");
    spec.protocols.clear();
    for (const auto& p : j.at("protocols"))
      spec.protocols.push_back(parse_protocol(p.get<std::string>()));
  }
  if (j.contains("schemes")) {
    if (!j.at("schemes").is_array()) fail("schemes must be an array");
    spec.schemes.clear();
    for (const auto& s : j.at("schemes"))
      spec.schemes.push_back(parse_scheme(s.get<std::string>()));
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  return parse_experiment_spec(load_json(path));
}

PlacementFile parse_placement(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    fail("placement needs a \"type\" of ss, sa or pass");
  const std::string type = j.at("type").get<std::string>();
  PlacementFile out;
  if (type == "ss") {
    if (!j.contains("segment") || !j.contains("position_m"))
      fail("ss placement needs segment and position_m");
    SsPlacement p;
    p.segment = j.at("segment").get<int>() - 1;  // file is 1-based
    p.position_m = j.at("position_m").get<double>();
    out.placement = p;
  } else if (type == "sa") {
    if (!j.contains("positions_m") || !j.at("positions_m").is_array())
      fail("sa placement needs a positions_m array");
    SaPlacement p;
    for (const auto& v : j.at("positions_m"))
      p.positions_m.push_back(v.get<double>());
    out.placement = p;
  } else if (type == "pass") {
    if (!j.contains("position_m")) fail("pass placement needs position_m");
    out.pass_position = j.at("position_m").get<double>();
  } else {
    fail("unknown placement type '" + type + "'");
  }
  return out;
}

json report_to_json(const RateReport& report) {
  json j;
  j["protocol"] = to_string(report.protocol);
  j["scheme"] = to_string(report.scheme);
  j["per_user_snr"] = report.per_user_snr;
  j["sum_rate_bps_hz"] = report.sum_rate_bps_hz;
  if (!report.trace.empty()) j["trace"] = report.trace;
  return j;
}

json sweep_to_json(const SweepResult& result) {
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    rows.push_back({{"sweep_param", row.sweep_param},
                    {"value", row.value},
                    {"protocol", to_string(row.protocol)},
                    {"scheme", to_string(row.scheme)},
                    {"mean_rate_bps_hz", row.mean_rate},
                    {"stderr", row.std_error},
                    {"trials", row.trials}});
  }
  return json{{"rows", rows}};
}

}  // namespace swan
