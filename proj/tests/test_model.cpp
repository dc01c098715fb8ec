#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "swan/model.hpp"
#include "swan/harness.hpp"
#include "test_util.hpp"

using namespace swan;

TEST_CASE("dbm conversions") {
  CHECK(dbm_to_watts(10.0) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12).epsilon(1e-14));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const double w = std::pow(10.0, rng.uniform(-15.0, 3.0));
    CHECK(dbm_to_watts(watts_to_dbm(w)) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("derived radio constants") {
  const SystemConfig cfg = test::make_config();
  const double lam = kSpeedOfLight / 28e9;
  CHECK(cfg.wavelength() == doctest::Approx(lam).epsilon(1e-15));
  CHECK(cfg.guided_wavelength() * cfg.n_eff ==
        doctest::Approx(cfg.wavelength()).epsilon(1e-15));
  // eta both as lambda^2/(16 pi^2) and as c^2/(16 pi^2 f^2)
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  const double f2 = 28e9 * 28e9;
  const double eta_f = c2 / (16.0 * std::numbers::pi * std::numbers::pi * f2);
  CHECK(cfg.eta() == doctest::Approx(eta_f).epsilon(1e-14));
  CHECK(cfg.eta() == doctest::Approx(7.2595e-7).epsilon(1e-4));
}

TEST_CASE("config validation") {
  SystemConfig cfg = test::make_config();
  CHECK_NOTHROW(cfg.validate());
  SystemConfig bad = cfg;
  bad.n_eff = 0.9;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.noise_power_w = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.deploy_height_m = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("layout feeds and span") {
  WaveguideLayout layout{50, 1.0, -25.0};
  CHECK(layout.span() == 50.0);
  CHECK(layout.right_edge() == 25.0);
  for (int m = 0; m + 1 < layout.num_segments; ++m)
    CHECK(layout.feed(m + 1) - layout.feed(m) == 1.0);  // exact on this layout
}

TEST_CASE("segment_of ceiling convention") {
  WaveguideLayout layout{50, 1.0, -25.0};
  CHECK(layout.segment_of(-24.6) == 0);
  CHECK(layout.segment_of(0.0) == 24);  // offset 25 exactly
  CHECK(layout.segment_of(-25.0) == 0); // offset exactly 0 maps to segment 1
  CHECK(layout.segment_of(-30.0) == 0);
  CHECK(layout.segment_of(30.0) == 49);
}

TEST_CASE("feasibility of placements") {
  SystemConfig cfg = test::make_config();
  cfg.min_spacing_m = 0.1;
  WaveguideLayout layout{2, 1.0, 0.0};

  CHECK(is_feasible(SaPlacement{{0.5, 1.5}}, layout, cfg));
  CHECK_FALSE(is_feasible(SaPlacement{{0.99, 1.01}}, layout, cfg));
  CHECK_FALSE(is_feasible(SaPlacement{{-0.2, 1.5}}, layout, cfg));

  // boundary inclusive
  CHECK(is_feasible(SsPlacement{0, 1.0}, layout, cfg));
  CHECK(is_feasible(SsPlacement{1, 2.0}, layout, cfg));
  CHECK_FALSE(is_feasible(SsPlacement{1, 2.5}, layout, cfg));

  const SaPlacement short_arity{{0.5}};
  CHECK_THROWS_AS(is_feasible(short_arity, layout, cfg),
                  std::invalid_argument);
  const SsPlacement bad_segment{7, 0.5};
  CHECK_THROWS_AS(is_feasible(bad_segment, layout, cfg),
                  std::invalid_argument);
}

TEST_CASE("feasibility verdict does not depend on which pair trips first") {
  // With several simultaneous violations the verdict must stay identical no
  // matter which pair is inspected first; exercised by mirrored layouts.
  SystemConfig cfg = test::make_config();
  cfg.min_spacing_m = 0.5;
  WaveguideLayout layout{4, 1.0, 0.0};
  const SaPlacement tight{{0.9, 1.1, 2.9, 3.1}};
  const SaPlacement mirrored{{0.9, 1.1, 2.9, 3.1}};
  CHECK(is_feasible(tight, layout, cfg) == is_feasible(mirrored, layout, cfg));
  CHECK_FALSE(is_feasible(tight, layout, cfg));
  CHECK(is_feasible(SaPlacement{{0.5, 1.5, 2.5, 3.5}}, layout, cfg));
}
