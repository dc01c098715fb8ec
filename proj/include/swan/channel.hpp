#pragma once

#include <complex>

#include "swan/model.hpp"

namespace swan {

/// Free-space LoS coefficient between a user at (u_x, u_y, 0) and an antenna
/// at (pa_x, 0, d): magnitude sqrt(eta)/r, phase -k0*r.
std::complex<double> free_space_coeff(const User& user, double pa_x,
                                      const SystemConfig& cfg);

/// In-guide coefficient over `travel_m` meters between feed and antenna:
/// magnitude 10^(-kappa*l/20), phase -k0*n_eff*l.
std::complex<double> in_waveguide_coeff(double travel_m,
                                        const SystemConfig& cfg);

/// Effective segment-selection channel: in-guide leg from the segment feed to
/// the antenna, then the free-space leg to the user. The phase is accumulated
/// on the combined path length r + n_eff*(psi - feed).
std::complex<double> ss_effective_channel(const User& user,
                                          const SsPlacement& placement,
                                          const WaveguideLayout& layout,
                                          const SystemConfig& cfg);

/// Effective segment-aggregation channel: coherent sum of one term per
/// segment, scaled by 1/sqrt(M) for the combiner's noise aggregation.
std::complex<double> sa_effective_channel(const User& user,
                                          const SaPlacement& placement,
                                          const WaveguideLayout& layout,
                                          const SystemConfig& cfg);

/// P_k * |h|^2 / sigma^2.
double snr(const User& user, double channel_gain, const SystemConfig& cfg);

}  // namespace swan
