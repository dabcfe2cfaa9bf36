#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "pmds/graph.hpp"

namespace pmds {

// Generated graphs label node i with the decimal string "i". Node layouts:
//
//   Clique(size)              0..size-1
//   CompleteBipartite(a, b)   side A = 0..a-1, side B = a..a+b-1
//   Lemma4(d, D)              K_{D,d}: the D-side is 0..D-1, the d-side is
//                             D..D+d-1; then D cliques K_{d+2}, clique c on
//                             D+d + c(d+2) .. D+d + (c+1)(d+2) - 1
//   Banded(n, k)              node i (0-based) joined to i+1..min(i+k, n-1)
//   Tightness(p, k, n, c)     Banded(n, k) on 0..n-1, then c cliques K_{r+1}
//                             with r = ceil(2k / (p+1)^{1/p} + 1)
//   ErdosRenyi(n, prob, seed) each pair independently with probability prob

namespace family {

struct Clique {
  std::size_t size;
};
struct CompleteBipartite {
  std::size_t a;
  std::size_t b;
};
/// Complete bipartite K_{D,d} plus D disjoint cliques on d+2 nodes: peeling
/// by degree discards the bipartite part first.
struct Lemma4 {
  std::size_t d;
  std::size_t D;
};
struct Banded {
  std::size_t n;
  std::size_t k;
};
/// Banded(n, k) plus `copies` cliques sized so that GenPeel peels the band
/// before any clique. copies = 0 selects the default of n copies.
struct Tightness {
  double p;
  std::size_t k;
  std::size_t n;
  std::size_t copies = 0;
};
struct ErdosRenyi {
  std::size_t n;
  double prob;
  std::uint64_t seed;
};

}  // namespace family

using FamilySpec =
    std::variant<family::Clique, family::CompleteBipartite, family::Lemma4,
                 family::Banded, family::Tightness, family::ErdosRenyi>;

/// Throws std::invalid_argument when the family's invariants fail (zero
/// sizes, k >= n/2 for banded graphs, p < 1 for tightness, prob outside
/// [0, 1]).
Graph generate(const FamilySpec& spec);

/// Short human-readable description, e.g. "lemma4(d=2,D=3)".
std::string describe(const FamilySpec& spec);

/// r = ceil(2k / (p+1)^{1/p} + 1); the tightness clique has r + 1 nodes.
std::size_t tightness_clique_degree(double p, std::size_t k);

/// Closed form f_p of the bipartite part of Lemma4(d, D):
/// (D d^p + d D^p) / (d + D).
double lemma4_bipartite_fp(std::size_t d, std::size_t D, double p);

/// min over v of [d_v^p + sum_{u in N(v)} (d_u^p - (d_u - 1)^p)], i.e. the
/// smallest peeling marginal on the whole graph. Requires p >= 1.
double delta_graph(const Graph& g, double p);

}  // namespace pmds
