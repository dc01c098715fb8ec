#include "swan/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace swan {

std::complex<double> free_space_coeff(const User& user, double pa_x,
                                      const SystemConfig& cfg) {
  const double dx = user.x_m - pa_x;
  const double r = std::sqrt(dx * dx + lateral_distance_sq(user, cfg));
  if (!(r > 0.0))
    throw std::domain_error("free_space_coeff: user and antenna coincide");
  return std::polar(std::sqrt(cfg.eta()) / r, -cfg.wavenumber() * r);
}

std::complex<double> in_waveguide_coeff(double travel_m,
                                        const SystemConfig& cfg) {
  const double ell = std::abs(travel_m);
  const double mag = std::pow(10.0, -cfg.attenuation_db_per_m * ell / 20.0);
  return std::polar(mag, -cfg.wavenumber() * cfg.n_eff * ell);
}

namespace {

// One segment's contribution with full magnitude (attenuation and sqrt(eta))
// and the combined-path phase.
std::complex<double> segment_term(const User& user, double psi, double feed,
                                  const SystemConfig& cfg) {
  const double dx = user.x_m - psi;
  const double r = std::sqrt(dx * dx + lateral_distance_sq(user, cfg));
  if (!(r > 0.0))
    throw std::domain_error("effective channel: user and antenna coincide");
  const double ell = std::abs(psi - feed);
  const double amp =
      std::pow(10.0, -cfg.attenuation_db_per_m * ell / 20.0) *
      std::sqrt(cfg.eta()) / r;
  const double path = r + cfg.n_eff * (psi - feed);
  return std::polar(amp, -cfg.wavenumber() * path);
}

}  // namespace

std::complex<double> ss_effective_channel(const User& user,
                                          const SsPlacement& placement,
                                          const WaveguideLayout& layout,
                                          const SystemConfig& cfg) {
  return segment_term(user, placement.position_m, layout.feed(placement.segment),
                      cfg);
}

std::complex<double> sa_effective_channel(const User& user,
                                          const SaPlacement& placement,
                                          const WaveguideLayout& layout,
                                          const SystemConfig& cfg) {
  const int m = layout.num_segments;
  if (static_cast<int>(placement.positions_m.size()) != m)
    throw std::invalid_argument("sa_effective_channel: placement arity");
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < m; ++i)
    acc += segment_term(user, placement.positions_m[i], layout.feed(i), cfg);
  return acc / std::sqrt(static_cast<double>(m));
}

double snr(const User& user, double channel_gain, const SystemConfig& cfg) {
  if (channel_gain < 0.0)
    throw std::invalid_argument("snr: negative channel gain");
  return user.power_w * channel_gain / cfg.noise_power_w;
}

}  // namespace swan
