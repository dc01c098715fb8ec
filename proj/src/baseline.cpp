#include "swan/baseline.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swan/channel.hpp"
#include "swan/grid.hpp"
#include "swan/rates.hpp"

namespace swan {

double pass_gain(const User& user, double psi, const SystemConfig& cfg,
                 double feed, double span_m) {
  if (psi < feed - kFeasibilityTol || psi > feed + span_m + kFeasibilityTol)
    throw std::domain_error("pass_gain: antenna outside the waveguide");
  const double dx = user.x_m - psi;
  const double atten =
      std::pow(10.0, -cfg.attenuation_db_per_m * (psi - feed) / 10.0);
  return atten * cfg.eta() / (dx * dx + lateral_distance_sq(user, cfg));
}

PassOptimum optimize_pass(std::span<const User> users, const SystemConfig& cfg,
                          double feed, double span_m, Scheme scheme,
                          int grid_points) {
  if (users.empty()) throw std::invalid_argument("optimize_pass: no users");
  PassOptimum out;
  out.report.scheme = scheme;
  out.report.protocol = Protocol::kPassBaseline;
  const Grid grid{feed, feed + span_m, grid_points};

  if (scheme == Scheme::kPsTdma) {
    for (const User& u : users) {
      const double best = grid_argmax(
          [&](double x) { return pass_gain(u, x, cfg, feed, span_m); }, grid);
      out.positions.push_back(best);
      out.report.per_user_snr.push_back(
          snr(u, pass_gain(u, best, cfg, feed, span_m), cfg));
    }
    out.report.sum_rate_bps_hz = tdma_sum_rate(out.report.per_user_snr);
    return out;
  }

  const auto objective = [&](double x) {
    double acc = 0.0;
    for (const User& u : users) {
      const double s = u.power_w * pass_gain(u, x, cfg, feed, span_m) /
                       cfg.noise_power_w;
      acc += scheme == Scheme::kPmTdma ? std::log1p(s) : s;
    }
    return acc;
  };
  const double best = grid_argmax(objective, grid);
  out.positions.push_back(best);
  for (const User& u : users)
    out.report.per_user_snr.push_back(
        snr(u, pass_gain(u, best, cfg, feed, span_m), cfg));
  out.report.sum_rate_bps_hz = scheme == Scheme::kPmTdma
                                   ? tdma_sum_rate(out.report.per_user_snr)
                                   : noma_sum_rate(out.report.per_user_snr);
  return out;
}

}  // namespace swan
