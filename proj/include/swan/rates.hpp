#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

namespace swan {

/// Orthogonal-slot sum-rate: (1/K) * sum_k log2(1 + snr_k).
inline double tdma_sum_rate(std::span<const double> snrs) {
  if (snrs.empty())
    throw std::invalid_argument("tdma_sum_rate: empty SNR list");
  double acc = 0.0;
  for (const double s : snrs) acc += std::log1p(s);
  return acc / (std::numbers::ln2 * static_cast<double>(snrs.size()));
}

/// Multiple-access sum capacity: log2(1 + sum_k snr_k).
inline double noma_sum_rate(std::span<const double> snrs) {
  if (snrs.empty())
    throw std::invalid_argument("noma_sum_rate: empty SNR list");
  double total = 0.0;
  for (const double s : snrs) total += s;
  return std::log1p(total) / std::numbers::ln2;
}

}  // namespace swan
