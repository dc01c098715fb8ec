#include "swan/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swan {

void SystemConfig::validate() const {
  if (!(carrier_frequency_hz > 0.0))
    throw std::invalid_argument("config: carrier_frequency_hz must be > 0");
  if (!(n_eff >= 1.0))
    throw std::invalid_argument("config: n_eff must be >= 1");
  if (!(min_spacing_m >= 0.0))
    throw std::invalid_argument("config: min_spacing_m must be >= 0");
  if (!(deploy_height_m > 0.0))
    throw std::invalid_argument("config: deploy_height_m must be > 0");
  if (!(attenuation_db_per_m >= 0.0))
    throw std::invalid_argument("config: kappa must be >= 0");
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("config: noise_power_w must be > 0");
}

int WaveguideLayout::segment_of(double x) const {
  const double offset = (x - first_feed_m) / segment_length_m;
  double idx = std::ceil(offset);  // 1-based; an offset of exactly 0 clamps up
  if (idx < 1.0) idx = 1.0;
  if (idx > num_segments) idx = num_segments;
  return static_cast<int>(idx) - 1;
}

void WaveguideLayout::validate() const {
  if (num_segments < 1)
    throw std::invalid_argument("layout: num_segments must be >= 1");
  if (!(segment_length_m > 0.0))
    throw std::invalid_argument("layout: segment_length_m must be > 0");
  if (!std::isfinite(first_feed_m))
    throw std::invalid_argument("layout: first_feed_m must be finite");
}

double lateral_distance_sq(const User& user, const SystemConfig& cfg) {
  return cfg.deploy_height_m * cfg.deploy_height_m + user.y_m * user.y_m;
}

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kPsTdma: return "ps_tdma";
    case Scheme::kPmTdma: return "pm_tdma";
    case Scheme::kNoma: return "noma";
  }
  return "?";
}

const char* to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::kSegmentSelection: return "ss";
    case Protocol::kSegmentAggregation: return "sa";
    case Protocol::kPassBaseline: return "pass";
  }
  return "?";
}

double dbm_to_watts(double dbm) {
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) {
  return 10.0 * std::log10(watts) + 30.0;
}

bool is_feasible(const SsPlacement& p, const WaveguideLayout& layout,
                 const SystemConfig&) {
  if (p.segment < 0 || p.segment >= layout.num_segments)
    throw std::invalid_argument("placement: segment index " +
                                std::to_string(p.segment) +
                                " outside layout");
  const double lo = layout.feed(p.segment);
  const double hi = lo + layout.segment_length_m;
  return p.position_m >= lo - kFeasibilityTol &&
         p.position_m <= hi + kFeasibilityTol;
}

bool is_feasible(const SaPlacement& p, const WaveguideLayout& layout,
                 const SystemConfig& cfg) {
  const int m = layout.num_segments;
  if (static_cast<int>(p.positions_m.size()) != m)
    throw std::invalid_argument("placement: expected " + std::to_string(m) +
                                " positions, got " +
                                std::to_string(p.positions_m.size()));
  for (int i = 0; i < m; ++i) {
    const double lo = layout.feed(i);
    const double hi = lo + layout.segment_length_m;
    if (p.positions_m[i] < lo - kFeasibilityTol ||
        p.positions_m[i] > hi + kFeasibilityTol)
      return false;
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(p.positions_m[i] - p.positions_m[j]) <
          cfg.min_spacing_m - kFeasibilityTol)
        return false;
  return true;
}

bool is_feasible(const Placement& p, const WaveguideLayout& layout,
                 const SystemConfig& cfg) {
  return std::visit([&](const auto& v) { return is_feasible(v, layout, cfg); },
                    p);
}

}  // namespace swan
