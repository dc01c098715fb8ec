#include "swan/opt_sa.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "swan/channel.hpp"
#include "swan/opt_ss.hpp"
#include "swan/rates.hpp"

namespace swan {

double phase_path_length(const User& user, double psi, double feed,
                         const SystemConfig& cfg) {
  const double dx = user.x_m - psi;
  return std::sqrt(dx * dx + lateral_distance_sq(user, cfg)) +
         cfg.n_eff * (psi - feed);
}

double phase_path_slope(const User& user, double psi, double feed,
                        const SystemConfig& cfg) {
  (void)feed;
  const double dx = psi - user.x_m;
  return cfg.n_eff + dx / std::sqrt(dx * dx + lateral_distance_sq(user, cfg));
}

namespace {

// Residual tolerance on the aligned path length, in meters.
constexpr double kAlignTol = 1e-9;

// Required path-length change toward congruence with target_c, in [0, lambda).
double residue_toward(const User& user, double psi_hat, double feed,
                      double target_c, const SystemConfig& cfg,
                      ShiftDirection direction) {
  const double lambda = cfg.wavelength();
  const double c0 = phase_path_length(user, psi_hat, feed, cfg);
  double delta = direction == ShiftDirection::kLeft
                     ? std::fmod(c0 - target_c, lambda)
                     : std::fmod(target_c - c0, lambda);
  if (delta < 0.0) delta += lambda;
  return delta;
}

// Position solving c(x) = target exactly, from the quadratic obtained by
// isolating the square root: sqrt((x-u)^2 + dk) = a - n*x with
// a = target + n*feed. The smaller root is the one with a nonnegative
// right-hand side.
std::optional<double> aligned_position_closed_form(const User& user,
                                                   double feed, double target,
                                                   const SystemConfig& cfg) {
  const double n = cfg.n_eff;
  const double ux = user.x_m;
  const double dk = lateral_distance_sq(user, cfg);
  const double a = target + n * feed;
  if (n == 1.0) {
    const double den = 2.0 * (a - ux);
    if (den == 0.0) return std::nullopt;
    const double x = (a * a - ux * ux - dk) / den;
    if (a - x < 0.0) return std::nullopt;
    return x;
  }
  const double disc = (a - n * ux) * (a - n * ux) + (n * n - 1.0) * dk;
  if (disc < 0.0) return std::nullopt;
  const double x = (n * a - ux - std::sqrt(disc)) / (n * n - 1.0);
  if (a - n * x < 0.0) return std::nullopt;
  return x;
}

struct SegmentBounds {
  double lo;
  double hi;
};

SegmentBounds segment_bounds(const WaveguideLayout& layout, int segment) {
  if (segment < 0 || segment >= layout.num_segments)
    throw std::invalid_argument("phase_align_shift: segment index");
  const double lo = layout.feed(segment);
  return {lo, lo + layout.segment_length_m};
}

}  // namespace

std::optional<double> phase_align_shift(const User& user,
                                        const WaveguideLayout& layout,
                                        int segment, double psi_hat,
                                        double target_c,
                                        const SystemConfig& cfg,
                                        ShiftDirection direction) {
  const auto [lo, hi] = segment_bounds(layout, segment);
  if (psi_hat < lo - kFeasibilityTol || psi_hat > hi + kFeasibilityTol)
    throw std::invalid_argument("phase_align_shift: psi_hat outside segment");
  psi_hat = std::clamp(psi_hat, lo, hi);

  const double lambda = cfg.wavelength();
  const double feed = lo;
  const double delta =
      residue_toward(user, psi_hat, feed, target_c, cfg, direction);
  if (delta <= kAlignTol || lambda - delta <= kAlignTol) return 0.0;

  const double c0 = phase_path_length(user, psi_hat, feed, cfg);
  const double target =
      direction == ShiftDirection::kLeft ? c0 - delta : c0 + delta;

  if (cfg.n_eff == 1.0) {
    // The bisection bracket delta/(n_eff - 1) is unbounded here; the
    // quadratic closed form is exact for this branch.
    const auto x = aligned_position_closed_form(user, feed, target, cfg);
    if (!x) return std::nullopt;
    if (direction == ShiftDirection::kLeft) {
      if (*x < lo - kFeasibilityTol || *x > psi_hat) return std::nullopt;
    } else {
      if (*x > hi + kFeasibilityTol || *x < psi_hat) return std::nullopt;
    }
    if (std::abs(phase_path_length(user, *x, feed, cfg) - target) > kAlignTol)
      return std::nullopt;
    return std::abs(psi_hat - *x);
  }

  // c is strictly increasing with slope in (n_eff-1, n_eff+1), so the root
  // lies within delta/(n_eff-1) of psi_hat.
  const double width = delta / (cfg.n_eff - 1.0);
  double blo, bhi;
  if (direction == ShiftDirection::kLeft) {
    blo = std::max(lo, psi_hat - width);
    bhi = psi_hat;
    if (phase_path_length(user, blo, feed, cfg) - target > 1e-12)
      return std::nullopt;  // still above the target at the feed point
  } else {
    blo = psi_hat;
    bhi = std::min(hi, psi_hat + width);
    if (phase_path_length(user, bhi, feed, cfg) - target < -1e-12)
      return std::nullopt;
  }
  for (int i = 0; i < 200 && bhi - blo > 1e-13; ++i) {
    const double mid = 0.5 * (blo + bhi);
    if (phase_path_length(user, mid, feed, cfg) < target)
      blo = mid;
    else
      bhi = mid;
  }
  const double x = 0.5 * (blo + bhi);
  return std::abs(psi_hat - x);
}

std::optional<double> phase_align_shift_closed_form(
    const User& user, const WaveguideLayout& layout, int segment,
    double psi_hat, double target_c, const SystemConfig& cfg,
    ShiftDirection direction) {
  const auto [lo, hi] = segment_bounds(layout, segment);
  if (psi_hat < lo - kFeasibilityTol || psi_hat > hi + kFeasibilityTol)
    throw std::invalid_argument("phase_align_shift: psi_hat outside segment");
  psi_hat = std::clamp(psi_hat, lo, hi);

  const double lambda = cfg.wavelength();
  const double feed = lo;
  const double delta =
      residue_toward(user, psi_hat, feed, target_c, cfg, direction);
  if (delta <= kAlignTol || lambda - delta <= kAlignTol) return 0.0;

  const double c0 = phase_path_length(user, psi_hat, feed, cfg);
  const double target =
      direction == ShiftDirection::kLeft ? c0 - delta : c0 + delta;
  const auto x = aligned_position_closed_form(user, feed, target, cfg);
  if (!x) return std::nullopt;
  if (direction == ShiftDirection::kLeft) {
    if (*x < lo - kFeasibilityTol || *x > psi_hat) return std::nullopt;
  } else {
    if (*x > hi + kFeasibilityTol || *x < psi_hat) return std::nullopt;
  }
  return std::abs(psi_hat - *x);
}

namespace {

// Per-segment contribution in the lossless design domain: e^{-j k0 c} / r,
// without the sqrt(eta) and 1/sqrt(M) factors.
std::complex<double> design_term(const User& user, double psi, double feed,
                                 const SystemConfig& cfg) {
  const double dx = user.x_m - psi;
  const double r = std::sqrt(dx * dx + lateral_distance_sq(user, cfg));
  return std::polar(1.0 / r,
                    -cfg.wavenumber() * (r + cfg.n_eff * (psi - feed)));
}

}  // namespace

SaRefinement refine_ps_tdma_sa(const User& user, const WaveguideLayout& layout,
                               const SystemConfig& cfg) {
  const int m = layout.num_segments;
  const double len = layout.segment_length_m;
  if (m >= 2 && cfg.min_spacing_m > len)
    throw std::invalid_argument(
        "refine_ps_tdma_sa: min spacing exceeds the segment length");

  SaRefinement out;
  out.placement.positions_m.assign(m, 0.0);
  out.aligned.assign(m, false);
  auto& pos = out.placement.positions_m;

  // anchor: the same projection-and-clamp rule as the per-slot ss placement
  const SsPlacement anchor_placement = ps_tdma_place(user, layout);
  const int anchor = anchor_placement.segment;
  out.anchor_segment = anchor;
  pos[anchor] = anchor_placement.position_m;
  out.aligned[anchor] = true;
  const double target =
      phase_path_length(user, pos[anchor], layout.feed(anchor), cfg);
  std::complex<double> partial =
      design_term(user, pos[anchor], layout.feed(anchor), cfg);

  const auto settle = [&](int seg, double hat, double fallback,
                          ShiftDirection dir) {
    const auto nu = phase_align_shift(user, layout, seg, hat, target, cfg, dir);
    if (nu) {
      pos[seg] = dir == ShiftDirection::kLeft ? hat - *nu : hat + *nu;
      out.aligned[seg] = true;
    } else {
      const double feed = layout.feed(seg);
      const auto reach = [&](double x) {
        return std::abs(partial + design_term(user, x, feed, cfg));
      };
      pos[seg] = reach(hat) >= reach(fallback) ? hat : fallback;
    }
    partial += design_term(user, pos[seg], layout.feed(seg), cfg);
  };

  for (int seg = anchor - 1; seg >= 0; --seg) {
    const double hat =
        std::min(layout.feed(seg) + len, pos[seg + 1] - cfg.min_spacing_m);
    settle(seg, hat, layout.feed(seg), ShiftDirection::kLeft);
  }
  for (int seg = anchor + 1; seg < m; ++seg) {
    const double hat =
        std::max(layout.feed(seg), pos[seg - 1] + cfg.min_spacing_m);
    settle(seg, hat, layout.feed(seg) + len, ShiftDirection::kRight);
  }
  return out;
}

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

struct DesignEvaluator {
  std::span<const User> users;
  const WaveguideLayout& layout;
  const SystemConfig& cfg;
  Scheme scheme;
  double snr_scale;  // eta / (M * sigma^2), used by the PM-TDMA form

  double combine(std::span<const std::complex<double>> sums) const {
    double acc = 0.0;
    if (scheme == Scheme::kPmTdma) {
      for (size_t k = 0; k < users.size(); ++k)
        acc += std::log1p(users[k].power_w * snr_scale * std::norm(sums[k]));
      return acc * kInvLn2;
    }
    for (size_t k = 0; k < users.size(); ++k)
      acc += users[k].power_w * std::norm(sums[k]);
    return acc;
  }

  // Value with segment m's antenna at x and the other contributions frozen.
  double with_candidate(std::span<const std::complex<double>> fixed, int m,
                        double x) const {
    const double feed = layout.feed(m);
    double acc = 0.0;
    if (scheme == Scheme::kPmTdma) {
      for (size_t k = 0; k < users.size(); ++k)
        acc += std::log1p(users[k].power_w * snr_scale *
                          std::norm(fixed[k] + design_term(users[k], x, feed, cfg)));
      return acc * kInvLn2;
    }
    for (size_t k = 0; k < users.size(); ++k)
      acc += users[k].power_w *
             std::norm(fixed[k] + design_term(users[k], x, feed, cfg));
    return acc;
  }
};

DesignEvaluator make_evaluator(std::span<const User> users,
                               const WaveguideLayout& layout,
                               const SystemConfig& cfg, Scheme scheme) {
  if (scheme == Scheme::kPsTdma)
    throw std::invalid_argument("element-wise search applies to PM-TDMA/NOMA");
  if (users.empty()) throw std::invalid_argument("no users");
  return DesignEvaluator{users, layout, cfg, scheme,
                         cfg.eta() /
                             (layout.num_segments * cfg.noise_power_w)};
}

std::vector<std::complex<double>> total_sums(std::span<const User> users,
                                             std::span<const double> positions,
                                             const WaveguideLayout& layout,
                                             const SystemConfig& cfg) {
  std::vector<std::complex<double>> sums(users.size());
  for (size_t k = 0; k < users.size(); ++k)
    for (int m = 0; m < layout.num_segments; ++m)
      sums[k] += design_term(users[k], positions[m], layout.feed(m), cfg);
  return sums;
}

void check_arity(std::span<const double> positions,
                 const WaveguideLayout& layout) {
  if (static_cast<int>(positions.size()) != layout.num_segments)
    throw std::invalid_argument("positions arity does not match the layout");
}

}  // namespace

double sa_pm_tdma_objective(std::span<const double> positions,
                            std::span<const User> users,
                            const WaveguideLayout& layout,
                            const SystemConfig& cfg) {
  check_arity(positions, layout);
  const auto eval = make_evaluator(users, layout, cfg, Scheme::kPmTdma);
  return eval.combine(total_sums(users, positions, layout, cfg));
}

double sa_noma_objective(std::span<const double> positions,
                         std::span<const User> users,
                         const WaveguideLayout& layout,
                         const SystemConfig& cfg) {
  check_arity(positions, layout);
  const auto eval = make_evaluator(users, layout, cfg, Scheme::kNoma);
  return eval.combine(total_sums(users, positions, layout, cfg));
}

namespace {

double ao_objective(double psi_m, int m, std::span<const double> positions,
                    std::span<const User> users, const WaveguideLayout& layout,
                    const SystemConfig& cfg, Scheme scheme) {
  check_arity(positions, layout);
  if (m < 0 || m >= layout.num_segments)
    throw std::invalid_argument("ao objective: segment index");
  const auto eval = make_evaluator(users, layout, cfg, scheme);
  std::vector<std::complex<double>> fixed(users.size());
  for (size_t k = 0; k < users.size(); ++k)
    for (int i = 0; i < layout.num_segments; ++i)
      if (i != m)
        fixed[k] += design_term(users[k], positions[i], layout.feed(i), cfg);
  return eval.with_candidate(fixed, m, psi_m);
}

}  // namespace

double ao_objective_pm_tdma(double psi_m, int m,
                            std::span<const double> positions,
                            std::span<const User> users,
                            const WaveguideLayout& layout,
                            const SystemConfig& cfg) {
  return ao_objective(psi_m, m, positions, users, layout, cfg, Scheme::kPmTdma);
}

double ao_objective_noma(double psi_m, int m, std::span<const double> positions,
                         std::span<const User> users,
                         const WaveguideLayout& layout,
                         const SystemConfig& cfg) {
  return ao_objective(psi_m, m, positions, users, layout, cfg, Scheme::kNoma);
}

std::vector<double> feasible_grid(const Grid& grid, int m,
                                  std::span<const double> positions,
                                  double min_spacing) {
  grid.validate();
  std::vector<double> out;
  out.reserve(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.point(i);
    bool ok = true;
    for (size_t other = 0; other < positions.size(); ++other) {
      if (static_cast<int>(other) == m) continue;
      if (std::abs(x - positions[other]) < min_spacing - kFeasibilityTol) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

AoResult elementwise_ao(std::span<const User> users,
                        const WaveguideLayout& layout, const SystemConfig& cfg,
                        Scheme scheme, int grid_points, double epsilon,
                        int max_iters) {
  const auto eval = make_evaluator(users, layout, cfg, scheme);
  const int m_total = layout.num_segments;
  const double len = layout.segment_length_m;
  if (m_total >= 2 && cfg.min_spacing_m > len)
    throw std::invalid_argument(
        "elementwise_ao: center initialization infeasible, min spacing "
        "exceeds the segment length");

  std::vector<double> positions(m_total);
  std::vector<Grid> grids;
  grids.reserve(m_total);
  for (int m = 0; m < m_total; ++m) {
    positions[m] = layout.feed(m) + 0.5 * len;
    grids.push_back(Grid{layout.feed(m), layout.feed(m) + len, grid_points});
  }

  const size_t k_total = users.size();
  auto sums = total_sums(users, positions, layout, cfg);
  std::vector<std::complex<double>> fixed(k_total);

  AoResult out;
  out.trace.threshold = epsilon;
  out.trace.objective.push_back(eval.combine(sums));

  for (int iter = 0; iter < max_iters; ++iter) {
    for (int m = 0; m < m_total; ++m) {
      const double feed = layout.feed(m);
      for (size_t k = 0; k < k_total; ++k)
        fixed[k] = sums[k] - design_term(users[k], positions[m], feed, cfg);
      double best_x = positions[m];
      double best_v = eval.with_candidate(fixed, m, best_x);
      for (const double x :
           feasible_grid(grids[m], m, positions, cfg.min_spacing_m)) {
        const double v = eval.with_candidate(fixed, m, x);
        if (v > best_v) {
          best_v = v;
          best_x = x;
        }
      }
      positions[m] = best_x;
      for (size_t k = 0; k < k_total; ++k)
        sums[k] = fixed[k] + design_term(users[k], best_x, feed, cfg);
    }
    sums = total_sums(users, positions, layout, cfg);  // curb drift
    const double prev = out.trace.objective.back();
    const double value = eval.combine(sums);
    out.trace.objective.push_back(value);
    if ((value - prev) / std::max(std::abs(prev), 1e-300) < epsilon) {
      out.trace.converged = true;
      break;
    }
  }
  out.placement.positions_m = std::move(positions);
  return out;
}

SaOptimum optimize_sa(std::span<const User> users, const WaveguideLayout& layout,
                      const SystemConfig& cfg, Scheme scheme, int grid_points,
                      double epsilon, int max_iters) {
  if (users.empty()) throw std::invalid_argument("optimize_sa: no users");
  SaOptimum out;
  out.report.scheme = scheme;
  out.report.protocol = Protocol::kSegmentAggregation;

  if (scheme == Scheme::kPsTdma) {
    for (const User& u : users) {
      auto refined = refine_ps_tdma_sa(u, layout, cfg);
      const double gain =
          std::norm(sa_effective_channel(u, refined.placement, layout, cfg));
      out.report.per_user_snr.push_back(snr(u, gain, cfg));
      out.placements.push_back(std::move(refined.placement));
    }
    out.report.sum_rate_bps_hz = tdma_sum_rate(out.report.per_user_snr);
    return out;
  }

  auto ao = elementwise_ao(users, layout, cfg, scheme, grid_points, epsilon,
                           max_iters);
  for (const User& u : users) {
    const double gain =
        std::norm(sa_effective_channel(u, ao.placement, layout, cfg));
    out.report.per_user_snr.push_back(snr(u, gain, cfg));
  }
  out.report.sum_rate_bps_hz = scheme == Scheme::kPmTdma
                                   ? tdma_sum_rate(out.report.per_user_snr)
                                   : noma_sum_rate(out.report.per_user_snr);
  out.report.trace = ao.trace.objective;
  out.placements.push_back(std::move(ao.placement));
  return out;
}

}  // namespace swan
