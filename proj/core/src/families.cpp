#include "pmds/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pmds {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void add_clique(std::vector<Edge>& edges, NodeId first, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      edges.emplace_back(first + static_cast<NodeId>(i),
                         first + static_cast<NodeId>(j));
    }
  }
}

void add_banded(std::vector<Edge>& edges, NodeId first, std::size_t n,
                std::size_t k) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t last = std::min(i + k, n - 1);
    for (std::size_t j = i + 1; j <= last; ++j) {
      edges.emplace_back(first + static_cast<NodeId>(i),
                         first + static_cast<NodeId>(j));
    }
  }
}

void check_banded(std::size_t n, std::size_t k) {
  require(n > 0 && k > 0, "banded graph needs n > 0 and k > 0");
  require(2 * k < n, "banded graph needs k < n/2");
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Graph erdos_renyi(std::size_t n, double prob, std::uint64_t seed) {
  std::vector<Edge> edges;
  if (n >= 2 && prob > 0.0) {
    std::mt19937_64 rng(seed);
    if (prob >= 1.0) {
      add_clique(edges, 0, n);
    } else {
      // Geometric skipping over the pairs (v, w), w < v.
      const double log_q = std::log1p(-prob);
      std::size_t v = 1;
      std::ptrdiff_t w = -1;
      while (v < n) {
        const double r = unit_uniform(rng);
        const double skip = std::floor(std::log1p(-r) / log_q);
        w += 1 + static_cast<std::ptrdiff_t>(
                     std::min(skip, static_cast<double>(n) * n));
        while (v < n && w >= static_cast<std::ptrdiff_t>(v)) {
          w -= static_cast<std::ptrdiff_t>(v);
          ++v;
        }
        if (v < n) {
          edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
        }
      }
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

std::size_t tightness_clique_degree(double p, std::size_t k) {
  require(p >= 1.0 && std::isfinite(p), "tightness family needs finite p >= 1");
  const double x = 2.0 * static_cast<double>(k) / std::pow(p + 1.0, 1.0 / p) + 1.0;
  // Guard against x landing a few ulps above an exact integer.
  return static_cast<std::size_t>(std::ceil(x - 1e-9 * x));
}

double lemma4_bipartite_fp(std::size_t d, std::size_t D, double p) {
  const double dd = static_cast<double>(d);
  const double DD = static_cast<double>(D);
  return (DD * std::pow(dd, p) + dd * std::pow(DD, p)) / (dd + DD);
}

Graph generate(const FamilySpec& spec) {
  std::vector<Edge> edges;
  std::size_t n = 0;

  if (const auto* s = std::get_if<family::Clique>(&spec)) {
    require(s->size > 0, "clique size must be positive");
    n = s->size;
    add_clique(edges, 0, n);
  } else if (const auto* s = std::get_if<family::CompleteBipartite>(&spec)) {
    require(s->a > 0 && s->b > 0, "bipartite sides must be positive");
    n = s->a + s->b;
    for (std::size_t i = 0; i < s->a; ++i) {
      for (std::size_t j = 0; j < s->b; ++j) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(s->a + j));
      }
    }
  } else if (const auto* s = std::get_if<family::Lemma4>(&spec)) {
    require(s->d > 0 && s->D > 0, "lemma4 needs d > 0 and D > 0");
    const std::size_t bip = s->D + s->d;
    n = bip + s->D * (s->d + 2);
    edges.reserve(s->D * s->d + s->D * (s->d + 2) * (s->d + 1) / 2);
    for (std::size_t i = 0; i < s->D; ++i) {
      for (std::size_t j = 0; j < s->d; ++j) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(s->D + j));
      }
    }
    for (std::size_t c = 0; c < s->D; ++c) {
      add_clique(edges, static_cast<NodeId>(bip + c * (s->d + 2)), s->d + 2);
    }
  } else if (const auto* s = std::get_if<family::Banded>(&spec)) {
    check_banded(s->n, s->k);
    n = s->n;
    add_banded(edges, 0, s->n, s->k);
  } else if (const auto* s = std::get_if<family::Tightness>(&spec)) {
    check_banded(s->n, s->k);
    const std::size_t r = tightness_clique_degree(s->p, s->k);
    const std::size_t copies = s->copies == 0 ? s->n : s->copies;
    n = s->n + copies * (r + 1);
    edges.reserve(s->n * s->k + copies * (r + 1) * r / 2);
    add_banded(edges, 0, s->n, s->k);
    for (std::size_t c = 0; c < copies; ++c) {
      add_clique(edges, static_cast<NodeId>(s->n + c * (r + 1)), r + 1);
    }
  } else if (const auto* s = std::get_if<family::ErdosRenyi>(&spec)) {
    require(s->n > 0, "erdos-renyi needs n > 0");
    require(s->prob >= 0.0 && s->prob <= 1.0, "edge probability must be in [0, 1]");
    return erdos_renyi(s->n, s->prob, s->seed);
  }

  require(n <= std::numeric_limits<NodeId>::max(), "family too large");
  return Graph::from_edges(n, edges);
}

std::string describe(const FamilySpec& spec) {
  std::ostringstream os;
  if (const auto* s = std::get_if<family::Clique>(&spec)) {
    os << "clique(size=" << s->size << ")";
  } else if (const auto* s = std::get_if<family::CompleteBipartite>(&spec)) {
    os << "bipartite(a=" << s->a << ",b=" << s->b << ")";
  } else if (const auto* s = std::get_if<family::Lemma4>(&spec)) {
    os << "lemma4(d=" << s->d << ",D=" << s->D << ")";
  } else if (const auto* s = std::get_if<family::Banded>(&spec)) {
    os << "banded(n=" << s->n << ",k=" << s->k << ")";
  } else if (const auto* s = std::get_if<family::Tightness>(&spec)) {
    os << "tightness(p=" << s->p << ",k=" << s->k << ",n=" << s->n
       << ",copies=" << (s->copies == 0 ? s->n : s->copies) << ")";
  } else if (const auto* s = std::get_if<family::ErdosRenyi>(&spec)) {
    os << "er(n=" << s->n << ",prob=" << s->prob << ",seed=" << s->seed << ")";
  }
  return os.str();
}

double delta_graph(const Graph& g, double p) {
  require(!g.empty(), "graph is empty");
  require(p >= 1.0 && std::isfinite(p), "delta_graph requires finite p >= 1");
  std::vector<double> power(static_cast<std::size_t>(g.max_degree()) + 1);
  for (std::size_t d = 0; d < power.size(); ++d) {
    power[d] = std::pow(static_cast<double>(d), p);
  }
  double best = std::numeric_limits<double>::infinity();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    double value = power[g.degree(v)];
    for (NodeId u : g.neighbors(v)) {
      value += power[g.degree(u)] - power[g.degree(u) - 1];
    }
    best = std::min(best, value);
  }
  return best;
}

}  // namespace pmds
