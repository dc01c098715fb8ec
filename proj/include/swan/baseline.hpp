#pragma once

#include <span>
#include <vector>

#include "swan/model.hpp"

namespace swan {

/// Channel gain of a conventional single-waveguide deployment with one active
/// antenna at psi and a single feed at the left end: the in-guide leg runs
/// over the full distance psi - feed, so
/// gain = 10^(-kappa*(psi-feed)/10) * eta / ((u_x - psi)^2 + d_k).
/// Throws std::domain_error when psi lies outside [feed, feed + span].
double pass_gain(const User& user, double psi, const SystemConfig& cfg,
                 double feed, double span_m);

struct PassOptimum {
  std::vector<double> positions;  // one per slot for PS-TDMA, else one
  RateReport report;
};

/// Grid search over [feed, feed + span] on the attenuated gain. PS-TDMA
/// searches per user; PM-TDMA and NOMA share a single antenna position.
PassOptimum optimize_pass(std::span<const User> users, const SystemConfig& cfg,
                          double feed, double span_m, Scheme scheme,
                          int grid_points);

}  // namespace swan
