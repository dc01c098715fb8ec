#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swan/grid.hpp"
#include "swan/model.hpp"

namespace swan {

/// Path length governing the phase of one segment's received term:
/// c(psi) = sqrt((u_x - psi)^2 + d_k) + n_eff * (psi - feed).
/// Strictly increasing in psi; its slope lies in (n_eff - 1, n_eff + 1).
double phase_path_length(const User& user, double psi, double feed,
                         const SystemConfig& cfg);
double phase_path_slope(const User& user, double psi, double feed,
                        const SystemConfig& cfg);

enum class ShiftDirection { kLeft, kRight };

/// Smallest shift nu >= 0 that moves psi_hat in the given direction until the
/// path length becomes congruent to target_c modulo the wavelength, staying
/// inside the segment. Solved by bracketed bisection on the monotone path
/// length (residual <= 1e-9 m); n_eff == 1 falls back to the quadratic
/// closed form because its bracket is unbounded. Returns nullopt when the
/// segment edge is reached before alignment.
std::optional<double> phase_align_shift(const User& user,
                                        const WaveguideLayout& layout,
                                        int segment, double psi_hat,
                                        double target_c,
                                        const SystemConfig& cfg,
                                        ShiftDirection direction);

/// Quadratic-formula counterpart of phase_align_shift, exposed as an
/// independent cross-check; the root-finding result stays authoritative.
std::optional<double> phase_align_shift_closed_form(
    const User& user, const WaveguideLayout& layout, int segment,
    double psi_hat, double target_c, const SystemConfig& cfg,
    ShiftDirection direction);

struct SaRefinement {
  SaPlacement placement;
  std::vector<bool> aligned;  // per segment: phase matched to the anchor's
  int anchor_segment = 0;
};

/// Slot-optimal segment-aggregation refinement: anchor the antenna of the
/// user's segment at the projection, then sweep outward placing each
/// neighbor at its nearest feasible point and shifting it away from the user
/// until its phase matches the anchor's. When the feed (left) or segment end
/// (right) blocks the shift, the candidate with the larger partial coherent
/// sum is kept instead.
SaRefinement refine_ps_tdma_sa(const User& user, const WaveguideLayout& layout,
                               const SystemConfig& cfg);

/// Full multi-antenna objectives in the lossless design domain.
/// PM-TDMA: sum_k log2(1 + P_k*eta*|g_k|^2 / (M*sigma^2)), with g_k the
/// coherent sum of per-segment terms e^{-j k0 c} / r.
double sa_pm_tdma_objective(std::span<const double> positions,
                            std::span<const User> users,
                            const WaveguideLayout& layout,
                            const SystemConfig& cfg);
/// NOMA: sum_k P_k * |g_k|^2.
double sa_noma_objective(std::span<const double> positions,
                         std::span<const User> users,
                         const WaveguideLayout& layout,
                         const SystemConfig& cfg);

/// Single-coordinate objectives: the value of the full objective with segment
/// m's antenna moved to psi_m and every other antenna fixed.
double ao_objective_pm_tdma(double psi_m, int m,
                            std::span<const double> positions,
                            std::span<const User> users,
                            const WaveguideLayout& layout,
                            const SystemConfig& cfg);
double ao_objective_noma(double psi_m, int m, std::span<const double> positions,
                         std::span<const User> users,
                         const WaveguideLayout& layout,
                         const SystemConfig& cfg);

/// Grid points of segment m at least min_spacing away from every other fixed
/// antenna. An empty result signals "keep the current position".
std::vector<double> feasible_grid(const Grid& grid, int m,
                                  std::span<const double> positions,
                                  double min_spacing);

struct AoTrace {
  std::vector<double> objective;  // value at init, then after each sweep
  bool converged = false;
  double threshold = 1e-4;
  int iterations() const { return static_cast<int>(objective.size()) - 1; }
};

struct AoResult {
  SaPlacement placement;
  AoTrace trace;
};

/// Element-wise alternating optimization (PM-TDMA or NOMA): antennas start at
/// segment centers and are updated one segment at a time by a grid search
/// over the spacing-feasible points, keeping the incumbent when no candidate
/// improves on it. Stops when the sweep's fractional objective increase drops
/// below epsilon.
AoResult elementwise_ao(std::span<const User> users,
                        const WaveguideLayout& layout, const SystemConfig& cfg,
                        Scheme scheme, int grid_points, double epsilon = 1e-4,
                        int max_iters = 50);

struct SaOptimum {
  std::vector<SaPlacement> placements;  // one per slot for PS-TDMA, else one
  RateReport report;
};

SaOptimum optimize_sa(std::span<const User> users, const WaveguideLayout& layout,
                      const SystemConfig& cfg, Scheme scheme, int grid_points,
                      double epsilon = 1e-4, int max_iters = 50);

}  // namespace swan
