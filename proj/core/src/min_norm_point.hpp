#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pmds::detail {

/// Writes the extreme point of the base polytope selected by the greedy
/// order "ascending weight, then ascending index" into `out`.
using GreedyOracle =
    std::function<void(std::span<const double> weights, std::span<double> out)>;

struct MinNormPoint {
  std::vector<double> x;
  /// <x, x> - <x, q> at termination, q the last greedy vertex.
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Wolfe's minimum-norm-point algorithm over a base polytope given by its
/// greedy oracle, started from the vertex for `start_weights`.
MinNormPoint wolfe_min_norm_point(std::size_t n, const GreedyOracle& greedy,
                                  std::span<const double> start_weights,
                                  double tolerance, std::size_t max_iterations);

}  // namespace pmds::detail
