#pragma once

#include "swan/harness.hpp"
#include "swan/model.hpp"

namespace swan::test {

// 28 GHz, n_eff 1.4, half-wavelength spacing, 3 m height, lossless, -90 dBm.
inline SystemConfig make_config() {
  SystemConfig cfg;
  cfg.carrier_frequency_hz = 28e9;
  cfg.n_eff = 1.4;
  cfg.deploy_height_m = 3.0;
  cfg.attenuation_db_per_m = 0.0;
  cfg.noise_power_w = dbm_to_watts(-90.0);
  cfg.min_spacing_m = cfg.wavelength() / 2.0;
  return cfg;
}

inline WaveguideLayout make_layout(int segments, double length) {
  WaveguideLayout layout;
  layout.num_segments = segments;
  layout.segment_length_m = length;
  layout.first_feed_m = -segments * length / 2.0;
  return layout;
}

inline User random_user(Rng& rng, double dx, double dy, double power_w = 0.01) {
  return User{rng.uniform(-dx / 2.0, dx / 2.0), rng.uniform(-dy / 2.0, dy / 2.0),
              power_w};
}

}  // namespace swan::test
