#include "ptqm/sweep.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ptqm {

std::vector<double> grid_points(const GridSpec& spec) {
  if (spec.steps < 1) throw std::invalid_argument("grid_points: steps must be >= 1");
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || spec.stop < spec.start) {
    throw std::invalid_argument("grid_points: invalid interval");
  }
  std::vector<double> pts(static_cast<std::size_t>(spec.steps));
  if (spec.steps == 1) {
    pts[0] = spec.start;
    return pts;
  }
  const double h = (spec.stop - spec.start) / (spec.steps - 1);
  for (int i = 0; i < spec.steps; ++i) pts[static_cast<std::size_t>(i)] = spec.start + h * i;
  pts.back() = spec.stop;
  return pts;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution mode) {
  if (mode == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    body(static_cast<std::size_t>(i));
  }
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace ptqm
