#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmds/graph.hpp"
#include "pmds/metrics.hpp"

namespace pmds {

/// Decision problem behind exact solving:
///   psi(S) = sum_{i in S} d_i(S)^p - alpha |S|,
/// supermodular in S for p >= 1, so -psi can be minimized exactly.
class SubmodularProblem {
 public:
  /// Throws std::invalid_argument for p < 1 ("supermodularity not
  /// guaranteed") or alpha < 0. alpha = 0 is accepted for evaluating psi;
  /// minimize_submodular requires alpha > 0. The graph must outlive the
  /// problem.
  SubmodularProblem(const Graph& graph, double p, double alpha);

  const Graph& graph() const noexcept { return *graph_; }
  double p() const noexcept { return p_; }
  double alpha() const noexcept { return alpha_; }

 private:
  const Graph* graph_;
  double p_;
  double alpha_;
};

double psi_value(const SubmodularProblem& prob, const NodeSet& s);

/// psi(S + v) - psi(S) in O(d_v). `degrees` holds d_u(S) indexed by node.
/// Throws std::invalid_argument if v is already in S.
double marginal_gain(const SubmodularProblem& prob, const NodeSet& s,
                     std::span<const std::uint32_t> degrees, NodeId v);

struct MinNormOptions {
  /// Stop once the Wolfe duality gap <x, x> - <x, q> falls below
  /// tolerance * max(1, largest squared norm of a visited vertex).
  double tolerance = 1e-10;
  /// Iteration cap per attempt; 0 means 10 n^2.
  std::size_t max_iterations = 0;
};

struct SubmodularSolution {
  /// Maximizer of psi among the certified candidates (the empty set wins
  /// ties only when no non-empty candidate reaches its value).
  NodeSet set;
  double psi = 0.0;
  /// Best non-empty candidate and its psi value.
  NodeSet best_nonempty;
  double best_nonempty_psi = 0.0;
  /// Lower bound on min(-psi) from the final base-polytope point.
  double lower_bound = 0.0;
  std::size_t iterations = 0;
};

/// Maximizes psi (minimizes -psi) with Wolfe's min-norm-point algorithm on
/// the base polytope of -psi. Candidate sets are the prefixes of the
/// min-norm point sorted by coordinate, each certified by direct evaluation.
/// Throws ConvergenceError if the cap is hit twice (once after a restart).
SubmodularSolution minimize_submodular(const SubmodularProblem& prob,
                                       const MinNormOptions& options = {});

enum class ExactMethod { BruteForce, Submodular };

struct AlphaStep {
  double alpha = 0.0;
  bool feasible = false;
  std::size_t minimizer_size = 0;
};

struct ExactResult {
  NodeSet best_set;
  /// f_p(best_set) for finite p > 0; M_p(best_set) otherwise (brute force
  /// with p <= 0 or infinite p).
  double best_fp = 0.0;
  std::vector<AlphaStep> alpha_trace;
  std::size_t iterations = 0;
  ExactMethod method = ExactMethod::BruteForce;
};

inline constexpr std::size_t kDefaultBruteForceCap = 22;

struct ExactOptions {
  ExactMethod method = ExactMethod::Submodular;
  /// Interval width at which binary search stops. Defaults to 1/n^2 for
  /// integer p and to 1e-9 otherwise.
  std::optional<double> tolerance;
  std::size_t brute_force_cap = kDefaultBruteForceCap;
  MinNormOptions min_norm;
};

/// Exact max over non-empty S of f_p(S) for p >= 1 (Submodular) or any p via
/// enumeration (BruteForce, n <= cap).
ExactResult exact_pmean(const Graph& g, double p, const ExactOptions& options = {});

/// Enumerates every non-empty subset. Ties go to the smaller set, then to
/// the lexicographically smaller sorted member list. Throws
/// std::invalid_argument when n exceeds `cap` (hard limit 30).
ExactResult brute_force_opt(const Graph& g, PValue p,
                            std::size_t cap = kDefaultBruteForceCap);

}  // namespace pmds
