#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ptqm {

/// Inclusive parameter grid: `steps` points from start to stop
/// (a single point at start when steps == 1).
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

std::vector<double> grid_points(const GridSpec& spec);

enum class Execution { Serial, Parallel };

/// Run body(i) for every i in [0, n). Serial is the reference path;
/// Parallel distributes the loop over OpenMP threads when compiled in.
/// Every index owns its output slot, so the two paths are byte-identical.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution mode);

template <class T, class F>
std::vector<T> map_grid(const std::vector<double>& xs, F&& f, Execution mode) {
  std::vector<T> out(xs.size());
  for_each_index(
      xs.size(), [&](std::size_t i) { out[i] = f(xs[i]); }, mode);
  return out;
}

}  // namespace ptqm
