#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pmds/graph.hpp"

namespace pmds::testing {

inline Graph from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

inline Graph triangle() { return from_text("0 1\n1 2\n2 0\n"); }
inline Graph star3() { return from_text("0 1\n0 2\n0 3\n"); }
inline Graph path3() { return from_text("0 1\n1 2\n"); }
/// Two triangles sharing node 0.
inline Graph bowtie() { return from_text("0 1\n1 2\n2 0\n0 3\n3 4\n4 0\n"); }
/// K3 on 0..2 disjoint from K4 on 3..6.
inline Graph k3_plus_k4() {
  return from_text("0 1\n0 2\n1 2\n3 4\n3 5\n3 6\n4 5\n4 6\n5 6\n");
}

/// G(n, prob) from std::mt19937_64; every node keeps its decimal label even
/// when isolated.
inline Graph random_graph(std::size_t n, double prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng) < prob) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

/// Independent enumeration oracle: max over non-empty S of
/// sum_{v in S} d_v(S)^p / |S| using only the raw edge list.
struct BruteOptimum {
  double value = -std::numeric_limits<double>::infinity();
  std::uint32_t mask = 0;
};

inline double oracle_fp(const std::vector<Edge>& edges, std::size_t n,
                        std::uint32_t mask, double p) {
  std::vector<int> deg(n, 0);
  for (const auto& [u, v] : edges) {
    if ((mask >> u & 1u) && (mask >> v & 1u)) {
      ++deg[u];
      ++deg[v];
    }
  }
  double total = 0.0;
  int size = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (mask >> v & 1u) {
      total += std::pow(deg[v], p);
      ++size;
    }
  }
  return total / size;
}

inline BruteOptimum oracle_max_fp(const Graph& g, double p) {
  const auto edges = g.edge_list();
  const std::size_t n = g.num_nodes();
  BruteOptimum best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const double value = oracle_fp(edges, n, mask, p);
    if (value > best.value) {
      best.value = value;
      best.mask = mask;
    }
  }
  return best;
}

inline std::uint32_t mask_of(const NodeSet& s) {
  std::uint32_t mask = 0;
  for (NodeId v : s.members()) mask |= 1u << v;
  return mask;
}

}  // namespace pmds::testing
