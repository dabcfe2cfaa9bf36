#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmds/graph.hpp"
#include "pmds/metrics.hpp"

namespace pmds {

enum class PeelAlgorithm { Simple, Generalized };

/// Result of one peeling run.
///
/// S_i is V minus the first i nodes of `order`, for i = 0..n-1. The stored
/// objective of S_i is f_p(S_i) for finite p > 0 and M_p(S_i) otherwise;
/// prefixes on which M_p is undefined (p <= 0 with a zero-degree node) hold
/// -infinity so they never win the argmax.
struct PeelTrace {
  PeelAlgorithm algorithm = PeelAlgorithm::Simple;
  PValue p = PValue::finite(1.0);
  std::vector<NodeId> order;
  std::vector<double> prefix_objective;
  std::size_t best_index = 0;
  NodeSet best_set;

  double best_objective() const { return prefix_objective.at(best_index); }
};

struct CoreDecomposition {
  std::vector<std::uint32_t> core_number;
  std::uint32_t degeneracy = 0;
  NodeSet maxcore_set;
};

struct PrefixChoice {
  std::size_t index = 0;
  NodeSet set;
  double objective = 0.0;
};

/// True when prefixes are ranked by f_p rather than M_p.
inline bool ranks_by_fp(PValue p) { return p.is_finite() && p.value() > 0.0; }

/// Objective of every prefix S_0..S_{n-1} of a removal order, in
/// O(n + m) after a table of degree powers. See PeelTrace for the scale.
std::vector<double> prefix_objectives(const Graph& g,
                                      std::span<const NodeId> order, PValue p);

/// Repeatedly removes a node of minimum current degree (smallest index on
/// ties) and scores the prefixes under p. Throws std::invalid_argument on
/// an empty graph.
PeelTrace simple_peel(const Graph& g, PValue p);

/// GenPeel: repeatedly removes the node minimizing delta_j (smallest index on
/// ties). For p >= 1 the best prefix is a (p+1)-approximation of max f_p.
/// p <= 0 runs as a heuristic: delta_j uses the log / negative-power degree
/// score, which removes zero-degree nodes first. Throws std::invalid_argument
/// for an empty graph or non-finite p.
PeelTrace gen_peel(const Graph& g, double p);

/// Linear-time core numbers via bucketed min-degree peeling.
CoreDecomposition core_decomposition(const Graph& g);

/// Re-scores an existing removal order under p and returns the best prefix
/// (earliest index on ties). Throws std::domain_error when no prefix has a
/// defined objective.
PrefixChoice best_prefix(const Graph& g, const PeelTrace& trace, PValue p);

/// Nodes order[i..n), i.e. the prefix set S_i.
NodeSet prefix_set(std::size_t universe, std::span<const NodeId> order,
                   std::size_t i);

}  // namespace pmds
