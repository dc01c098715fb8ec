#pragma once

#include <cmath>
#include <stdexcept>

namespace swan {

/// Uniform closed grid of `points` abscissas spanning [start, end]; the first
/// and last points hit the interval ends exactly.
struct Grid {
  double start = 0.0;
  double end = 1.0;
  int points = 2;

  double step() const { return (end - start) / (points - 1); }
  double point(int i) const {
    return i == points - 1 ? end : start + i * step();
  }
  void validate() const {
    if (points < 2) throw std::invalid_argument("grid: needs >= 2 points");
    if (!(end > start)) throw std::invalid_argument("grid: end must exceed start");
  }
};

/// Abscissa maximizing `objective` over the grid; ties break toward the
/// smallest abscissa. Throws std::domain_error on a NaN objective value.
template <typename Fn>
double grid_argmax(Fn&& objective, const Grid& grid) {
  grid.validate();
  double best_x = grid.point(0);
  double best_v = objective(best_x);
  if (std::isnan(best_v))
    throw std::domain_error("grid_argmax: objective returned NaN");
  for (int i = 1; i < grid.points; ++i) {
    const double x = grid.point(i);
    const double v = objective(x);
    if (std::isnan(v))
      throw std::domain_error("grid_argmax: objective returned NaN");
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace swan
