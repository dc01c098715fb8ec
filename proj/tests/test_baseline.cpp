#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "swan/baseline.hpp"
#include "swan/harness.hpp"
#include "swan/opt_ss.hpp"
#include "test_util.hpp"

using namespace swan;

TEST_CASE("pass gain composition") {
  SystemConfig cfg = test::make_config();
  const double feed = -50.0, span = 100.0;
  const User u{10.0, 4.0, 0.01};

  const double lossless = pass_gain(u, 10.0, cfg, feed, span);
  CHECK(lossless ==
        doctest::Approx(cfg.eta() / lateral_distance_sq(u, cfg))
            .epsilon(1e-12));

  cfg.attenuation_db_per_m = 0.08;
  CHECK(pass_gain(u, feed + 50.0, cfg, feed, span) /
            pass_gain(u, feed + 50.0, test::make_config(), feed, span) ==
        doctest::Approx(std::pow(10.0, -0.4)).epsilon(1e-12));
  CHECK(pass_gain(u, feed, cfg, feed, span) ==
        doctest::Approx(pass_gain(u, feed, test::make_config(), feed, span))
            .epsilon(1e-14));
  CHECK_THROWS_AS(pass_gain(u, feed - 1.0, cfg, feed, span),
                  std::domain_error);

  // attenuated gain never exceeds the lossless one
  Rng rng(89);
  for (int i = 0; i < 200; ++i) {
    const double psi = rng.uniform(feed, feed + span);
    const double dx = u.x_m - psi;
    const double pure = cfg.eta() / (dx * dx + lateral_distance_sq(u, cfg));
    CHECK(pass_gain(u, psi, cfg, feed, span) <= pure * (1.0 + 1e-12));
  }
}

TEST_CASE("conventional baseline matches segment selection when lossless") {
  const SystemConfig cfg = test::make_config();
  const WaveguideLayout layout{30, 1.0, -15.0};
  Rng rng(97);
  for (int i = 0; i < 10; ++i) {
    std::vector<User> users;
    for (int k = 0; k < 4; ++k)
      users.push_back(test::random_user(rng, layout.span(), 20.0));
    for (const Scheme s : {Scheme::kPmTdma, Scheme::kNoma}) {
      const auto swan_r = optimize_ss(users, layout, cfg, s, 1000);
      const auto pass_r = optimize_pass(users, cfg, layout.left_edge(),
                                        layout.span(), s, 1000);
      CHECK(pass_r.report.sum_rate_bps_hz ==
            doctest::Approx(swan_r.report.sum_rate_bps_hz).epsilon(1e-12));
    }
    const auto swan_ps = optimize_ss(users, layout, cfg, Scheme::kPsTdma, 1000);
    const auto pass_ps = optimize_pass(users, cfg, layout.left_edge(),
                                       layout.span(), Scheme::kPsTdma, 1000);
    CHECK(swan_ps.report.sum_rate_bps_hz >=
          pass_ps.report.sum_rate_bps_hz - 1e-12);
    CHECK(pass_ps.report.sum_rate_bps_hz ==
          doctest::Approx(swan_ps.report.sum_rate_bps_hz).epsilon(1e-3));
  }
}

TEST_CASE("attenuation pulls the optimum toward the feed and costs rate") {
  SystemConfig cfg = test::make_config();
  const double feed = -50.0, span = 100.0;
  const std::vector<User> far{{40.0, 2.0, 0.01}};

  const auto lossless =
      optimize_pass(far, cfg, feed, span, Scheme::kPsTdma, 4001);
  cfg.attenuation_db_per_m = 0.08;
  const auto lossy = optimize_pass(far, cfg, feed, span, Scheme::kPsTdma, 4001);
  CHECK(lossy.positions[0] <= far[0].x_m + 1e-9);
  CHECK(lossy.positions[0] < lossless.positions[0]);
  CHECK(lossy.report.sum_rate_bps_hz < lossless.report.sum_rate_bps_hz);
}
