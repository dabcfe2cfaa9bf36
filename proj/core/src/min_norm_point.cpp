#include "min_norm_point.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace pmds::detail {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Affine minimizer of the corral: argmin ||Q beta|| subject to sum(beta) = 1.
// Parameterized as q_0 + sum_i gamma_i (q_i - q_0) and solved as a least
// squares problem, which stays stable when the corral is nearly degenerate.
VectorXd affine_minimizer(const MatrixXd& corral) {
  const Eigen::Index k = corral.cols();
  VectorXd beta(k);
  if (k == 1) {
    beta(0) = 1.0;
    return beta;
  }
  MatrixXd diff = corral.rightCols(k - 1).colwise() - corral.col(0);
  VectorXd gamma = diff.completeOrthogonalDecomposition().solve(-corral.col(0));
  beta(0) = 1.0 - gamma.sum();
  beta.tail(k - 1) = gamma;
  return beta;
}

}  // namespace

MinNormPoint wolfe_min_norm_point(std::size_t n, const GreedyOracle& greedy,
                                  std::span<const double> start_weights,
                                  double tolerance,
                                  std::size_t max_iterations) {
  const auto dim = static_cast<Eigen::Index>(n);
  MinNormPoint result;

  VectorXd q(dim);
  greedy(start_weights, {q.data(), n});

  MatrixXd corral(dim, 1);
  corral.col(0) = q;
  VectorXd lambda = VectorXd::Ones(1);
  VectorXd x = q;

  constexpr double kPositive = 1e-12;
  // The gap is measured against the largest squared vertex norm seen, the
  // usual scale-free form of Wolfe's stopping rule. Vertex coordinates can
  // be many orders of magnitude larger than x near the optimum.
  double scale = std::max(1.0, q.squaredNorm());

  while (result.iterations < max_iterations) {
    ++result.iterations;
    greedy({x.data(), n}, {q.data(), n});
    scale = std::max(scale, q.squaredNorm());
    const double xx = x.squaredNorm();
    result.gap = xx - x.dot(q);
    if (result.gap <= tolerance * scale) {
      result.converged = true;
      break;
    }
    // A vertex already in the corral means no further progress is possible.
    bool repeated = false;
    for (Eigen::Index i = 0; i < corral.cols(); ++i) {
      if ((corral.col(i) - q).lpNorm<Eigen::Infinity>() <=
          1e-12 * std::max(1.0, q.lpNorm<Eigen::Infinity>())) {
        repeated = true;
        break;
      }
    }
    if (repeated) {
      result.converged = true;
      break;
    }

    corral.conservativeResize(Eigen::NoChange, corral.cols() + 1);
    corral.col(corral.cols() - 1) = q;
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0.0;

    // Minor cycle: move toward the affine minimizer until it lies inside the
    // convex hull of the corral, dropping vertices whose weight hits zero.
    while (true) {
      const VectorXd beta = affine_minimizer(corral);
      if ((beta.array() > kPositive).all()) {
        lambda = beta;
        x = corral * lambda;
        break;
      }
      ++result.iterations;
      double theta = 1.0;
      Eigen::Index blocking = -1;
      for (Eigen::Index i = 0; i < beta.size(); ++i) {
        if (beta(i) > kPositive) continue;
        const double denom = lambda(i) - beta(i);
        const double t = denom > 0.0 ? lambda(i) / denom : 0.0;
        if (blocking < 0 || t < theta) {
          theta = t;
          blocking = i;
        }
      }
      lambda = theta * beta + (1.0 - theta) * lambda;
      lambda(blocking) = 0.0;

      Eigen::Index keep = 0;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) <= kPositive) continue;
        corral.col(keep) = corral.col(i);
        lambda(keep) = lambda(i);
        ++keep;
      }
      corral.conservativeResize(Eigen::NoChange, keep);
      lambda.conservativeResize(keep);
      lambda /= lambda.sum();
      x = corral * lambda;
      if (keep == 1 || result.iterations >= max_iterations) break;
    }
    // Rounding can make the new vertex drop out at once and leave x where
    // it was; the next greedy call would return the same vertex forever.
    if (x.squaredNorm() >= xx) {
      result.converged = true;
      break;
    }
  }

  result.x.assign(x.data(), x.data() + n);
  return result;
}

}  // namespace pmds::detail
