#include "swan/opt_ss.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "swan/channel.hpp"
#include "swan/rates.hpp"

namespace swan {

SsPlacement ps_tdma_place(const User& user, const WaveguideLayout& layout) {
  const int seg = layout.segment_of(user.x_m);
  const double lo = layout.feed(seg);
  const double hi = lo + layout.segment_length_m;
  return SsPlacement{seg, std::clamp(user.x_m, lo, hi)};
}

double pm_tdma_objective(double psi, std::span<const User> users,
                         const SystemConfig& cfg) {
  double acc = 1.0;
  for (const User& u : users) {
    const double dx = u.x_m - psi;
    const double w = u.power_w * cfg.eta() / cfg.noise_power_w;
    acc *= 1.0 + w / (dx * dx + lateral_distance_sq(u, cfg));
  }
  return acc;
}

double pm_tdma_log_objective(double psi, std::span<const User> users,
                             const SystemConfig& cfg) {
  double acc = 0.0;
  for (const User& u : users) {
    const double dx = u.x_m - psi;
    const double w = u.power_w * cfg.eta() / cfg.noise_power_w;
    acc += std::log1p(w / (dx * dx + lateral_distance_sq(u, cfg)));
  }
  return acc / std::numbers::ln2;
}

double noma_ss_objective(double psi, std::span<const User> users,
                         const SystemConfig& cfg) {
  double acc = 0.0;
  for (const User& u : users) {
    const double dx = u.x_m - psi;
    acc += u.power_w / (dx * dx + lateral_distance_sq(u, cfg));
  }
  return acc;
}

double newton_refine(const std::function<double(double)>& objective,
                     const std::function<double(double)>& derivative,
                     double start, double lo, double hi, double derivative_tol,
                     int max_iters) {
  const double origin = std::clamp(start, lo, hi);
  const double f_origin = objective(origin);
  const double fd_step = 1e-6 * (hi - lo) + 1e-12;

  double x = origin;
  for (int it = 0; it < max_iters; ++it) {
    const double g = derivative(x);
    if (!std::isfinite(g)) return origin;
    if (std::abs(g) <= derivative_tol) break;
    const double curv =
        (derivative(x + fd_step) - derivative(x - fd_step)) / (2.0 * fd_step);
    if (!std::isfinite(curv)) return origin;
    double next;
    if (curv >= 0.0) {
      // Newton would walk toward a minimum (or nowhere); follow the ascent
      // direction to the interval edge instead.
      next = g > 0.0 ? hi : lo;
    } else {
      next = x - g / curv;
    }
    next = std::clamp(next, lo, hi);
    if (next == x) break;  // pinned at a boundary
    x = next;
  }
  return objective(x) >= f_origin ? x : origin;
}

namespace {

double channel_gain(const User& u, const SsPlacement& p,
                    const WaveguideLayout& layout, const SystemConfig& cfg) {
  return std::norm(ss_effective_channel(u, p, layout, cfg));
}

}  // namespace

SsOptimum optimize_ss(std::span<const User> users, const WaveguideLayout& layout,
                      const SystemConfig& cfg, Scheme scheme, int grid_points) {
  if (users.empty()) throw std::invalid_argument("optimize_ss: no users");
  SsOptimum out;
  out.report.scheme = scheme;
  out.report.protocol = Protocol::kSegmentSelection;

  if (scheme == Scheme::kPsTdma) {
    for (const User& u : users) {
      const SsPlacement p = ps_tdma_place(u, layout);
      out.placements.push_back(p);
      out.report.per_user_snr.push_back(snr(u, channel_gain(u, p, layout, cfg), cfg));
    }
    out.report.sum_rate_bps_hz = tdma_sum_rate(out.report.per_user_snr);
    return out;
  }

  const Grid grid{layout.left_edge(), layout.right_edge(), grid_points};
  const double best =
      scheme == Scheme::kPmTdma
          ? grid_argmax([&](double x) { return pm_tdma_log_objective(x, users, cfg); }, grid)
          : grid_argmax([&](double x) { return noma_ss_objective(x, users, cfg); }, grid);

  const SsPlacement shared{layout.segment_of(best), best};
  out.placements.push_back(shared);
  for (const User& u : users)
    out.report.per_user_snr.push_back(
        snr(u, channel_gain(u, shared, layout, cfg), cfg));
  out.report.sum_rate_bps_hz = scheme == Scheme::kPmTdma
                                   ? tdma_sum_rate(out.report.per_user_snr)
                                   : noma_sum_rate(out.report.per_user_snr);
  return out;
}

}  // namespace swan
