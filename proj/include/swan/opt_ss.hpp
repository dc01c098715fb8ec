#pragma once

#include <functional>
#include <span>
#include <vector>

#include "swan/grid.hpp"
#include "swan/model.hpp"

namespace swan {

/// Slot-optimal segment-selection placement: the segment under the user's
/// projection with the antenna at the projection, both clamped to the span.
SsPlacement ps_tdma_place(const User& user, const WaveguideLayout& layout);

/// Shared-placement TDMA objective in product form:
/// prod_k (1 + (P_k*eta/sigma^2) / ((u_x - psi)^2 + d_k)). Lossless design
/// domain (kappa = 0).
double pm_tdma_objective(double psi, std::span<const User> users,
                         const SystemConfig& cfg);

/// Same objective in log-sum form, sum_k log2(1 + ...); identical argmax.
double pm_tdma_log_objective(double psi, std::span<const User> users,
                             const SystemConfig& cfg);

/// Shared-placement NOMA objective: sum_k P_k / ((u_x - psi)^2 + d_k).
/// The constant eta/sigma^2 factor is dropped here and reapplied when rates
/// are reported.
double noma_ss_objective(double psi, std::span<const User> users,
                         const SystemConfig& cfg);

/// Projected Newton polish of a grid solution. Returns a point of [lo, hi]
/// with |derivative| <= derivative_tol, or the boundary the iteration is
/// pushed against. Falls back to `start` whenever the iteration diverges or
/// fails to improve the objective.
double newton_refine(const std::function<double(double)>& objective,
                     const std::function<double(double)>& derivative,
                     double start, double lo, double hi,
                     double derivative_tol = 1e-9, int max_iters = 100);

struct SsOptimum {
  std::vector<SsPlacement> placements;  // one per slot for PS-TDMA, else one
  RateReport report;
};

/// Optimizes the segment-selection placement for the given scheme. PS-TDMA is
/// closed form per slot; PM-TDMA and NOMA run a grid search over the full
/// span. Objectives use the lossless design domain; reported SNRs and rates
/// are re-evaluated with the config's attenuation.
SsOptimum optimize_ss(std::span<const User> users, const WaveguideLayout& layout,
                      const SystemConfig& cfg, Scheme scheme, int grid_points);

}  // namespace swan
