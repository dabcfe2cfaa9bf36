#include "pmds/peel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "indexed_heap.hpp"

namespace pmds {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_nonempty(const Graph& g) {
  if (g.empty()) throw std::invalid_argument("graph is empty");
}

std::vector<double> score_table(std::uint32_t max_degree, double p) {
  std::vector<double> table(static_cast<std::size_t>(max_degree) + 1);
  for (std::size_t d = 0; d < table.size(); ++d) {
    table[d] = degree_score(static_cast<double>(d), p);
  }
  return table;
}

std::vector<std::uint32_t> initial_degrees(const Graph& g) {
  std::vector<std::uint32_t> deg(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) deg[v] = g.degree(v);
  return deg;
}

// Tracks the minimum or maximum current degree among alive nodes while
// degrees only decrease.
class DegreeExtremum {
 public:
  DegreeExtremum(std::span<const std::uint32_t> degrees, std::uint32_t max_deg,
                 bool track_max)
      : count_(static_cast<std::size_t>(max_deg) + 1, 0),
        track_max_(track_max) {
    for (auto d : degrees) ++count_[d];
    alive_ = degrees.size();
    cursor_ = track_max ? max_deg : 0;
    settle();
  }

  std::uint32_t value() const { return cursor_; }

  void decrement(std::uint32_t from) {
    --count_[from];
    ++count_[from - 1];
    if (!track_max_) cursor_ = std::min(cursor_, from - 1);
    settle();
  }

  void remove(std::uint32_t degree) {
    --count_[degree];
    --alive_;
    settle();
  }

 private:
  void settle() {
    if (alive_ == 0) return;
    if (track_max_) {
      while (count_[cursor_] == 0) --cursor_;
    } else {
      while (count_[cursor_] == 0) ++cursor_;
    }
  }

  std::vector<std::size_t> count_;
  std::size_t alive_ = 0;
  std::uint32_t cursor_ = 0;
  bool track_max_;
};

std::vector<double> extremum_objectives(const Graph& g,
                                        std::span<const NodeId> order,
                                        bool track_max) {
  const std::size_t n = g.num_nodes();
  auto deg = initial_degrees(g);
  std::vector<std::uint8_t> alive(n, 1);
  DegreeExtremum ext(deg, g.max_degree(), track_max);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t value = ext.value();
    // M_{-inf} needs every degree positive.
    out[i] = (!track_max && value == 0) ? kNegInf : static_cast<double>(value);
    const NodeId v = order[i];
    alive[v] = 0;
    ext.remove(deg[v]);
    for (NodeId u : g.neighbors(v)) {
      if (!alive[u]) continue;
      ext.decrement(deg[u]);
      --deg[u];
    }
  }
  return out;
}

// Finite p: maintains sum of degree_score over the prefix.
std::vector<double> power_objectives(const Graph& g,
                                     std::span<const NodeId> order, double p) {
  const std::size_t n = g.num_nodes();
  const auto table = score_table(g.max_degree(), p);
  auto deg = initial_degrees(g);
  std::vector<std::uint8_t> alive(n, 1);

  // Zero degrees are tracked separately; their score is -inf for p <= 0.
  std::size_t zeros = 0;
  long double sum = 0.0L;
  for (NodeId v = 0; v < n; ++v) {
    if (deg[v] == 0) {
      ++zeros;
    } else {
      sum += table[deg[v]];
    }
  }

  auto contribution = [&](std::uint32_t d) -> long double {
    return d == 0 ? 0.0L : static_cast<long double>(table[d]);
  };

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double size = static_cast<double>(n - i);
    const double mean = static_cast<double>(sum) / size;
    if (p > 0.0) {
      out[i] = mean;
    } else if (zeros > 0) {
      out[i] = kNegInf;
    } else if (p == 0.0) {
      out[i] = std::exp(mean);
    } else {
      // sum holds -d^p per node.
      out[i] = std::pow(-mean, 1.0 / p);
    }

    const NodeId v = order[i];
    alive[v] = 0;
    if (deg[v] == 0) --zeros;
    sum -= contribution(deg[v]);
    for (NodeId u : g.neighbors(v)) {
      if (!alive[u]) continue;
      sum -= contribution(deg[u]);
      --deg[u];
      if (deg[u] == 0) ++zeros;
      sum += contribution(deg[u]);
    }
  }
  return out;
}

void validate_order(const Graph& g, std::span<const NodeId> order) {
  if (order.size() != g.num_nodes()) {
    throw std::invalid_argument("removal order length does not match graph");
  }
  std::vector<std::uint8_t> seen(g.num_nodes(), 0);
  for (NodeId v : order) {
    if (v >= g.num_nodes() || seen[v]) {
      throw std::invalid_argument("removal order is not a permutation");
    }
    seen[v] = 1;
  }
}

std::size_t argmax_prefix(std::span<const double> objective) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < objective.size(); ++i) {
    if (objective[i] > objective[best]) best = i;
  }
  return best;
}

PeelTrace finish_trace(const Graph& g, PeelAlgorithm algorithm, PValue p,
                       std::vector<NodeId> order) {
  PeelTrace trace;
  trace.algorithm = algorithm;
  trace.p = p;
  trace.prefix_objective = prefix_objectives(g, order, p);
  trace.best_index = argmax_prefix(trace.prefix_objective);
  trace.best_set = prefix_set(g.num_nodes(), order, trace.best_index);
  trace.order = std::move(order);
  return trace;
}

}  // namespace

NodeSet prefix_set(std::size_t universe, std::span<const NodeId> order,
                   std::size_t i) {
  if (i > order.size()) throw std::out_of_range("prefix index out of range");
  return NodeSet(universe, order.subspan(i));
}

std::vector<double> prefix_objectives(const Graph& g,
                                      std::span<const NodeId> order, PValue p) {
  validate_order(g, order);
  if (p.kind() == PValue::Kind::PosInf) return extremum_objectives(g, order, true);
  const PValue eff = ranks_by_fp(p) ? p : p.saturated(kDefaultInfinityThreshold);
  if (eff.kind() == PValue::Kind::NegInf) {
    return extremum_objectives(g, order, false);
  }
  return power_objectives(g, order, eff.value());
}

PeelTrace simple_peel(const Graph& g, PValue p) {
  require_nonempty(g);
  const std::size_t n = g.num_nodes();
  auto deg = initial_degrees(g);
  std::vector<std::uint8_t> alive(n, 1);
  detail::IndexedMinHeap<std::uint32_t> heap(n);
  for (NodeId v = 0; v < n; ++v) heap.push(v, deg[v]);

  std::vector<NodeId> order;
  order.reserve(n);
  while (!heap.empty()) {
    const NodeId v = heap.pop();
    alive[v] = 0;
    order.push_back(v);
    for (NodeId u : g.neighbors(v)) {
      if (!alive[u]) continue;
      heap.update(u, --deg[u]);
    }
  }
  return finish_trace(g, PeelAlgorithm::Simple, p, std::move(order));
}

PeelTrace gen_peel(const Graph& g, double p) {
  require_nonempty(g);
  if (!std::isfinite(p)) {
    throw std::invalid_argument("gen_peel requires a finite p");
  }
  const std::size_t n = g.num_nodes();
  const auto table = score_table(g.max_degree(), p);
  auto deg = initial_degrees(g);
  std::vector<std::uint8_t> alive(n, 1);

  // Same expression and summation order as delta_j, so keys match a
  // from-scratch evaluation bit for bit.
  auto delta = [&](NodeId j) {
    double value = table[deg[j]];
    for (NodeId i : g.neighbors(j)) {
      if (!alive[i]) continue;
      value += table[deg[i]] - table[deg[i] - 1];
    }
    return value;
  };

  detail::IndexedMinHeap<double> heap(n);
  for (NodeId v = 0; v < n; ++v) heap.push(v, delta(v));

  // Removing v changes d_u for u in N(v), which moves delta for N(v) and
  // N(N(v)); every such alive node is recomputed once.
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t round = 0;
  std::vector<NodeId> touched;

  std::vector<NodeId> order;
  order.reserve(n);
  while (!heap.empty()) {
    const NodeId v = heap.pop();
    alive[v] = 0;
    order.push_back(v);

    ++round;
    touched.clear();
    for (NodeId u : g.neighbors(v)) {
      if (!alive[u]) continue;
      --deg[u];
    }
    for (NodeId u : g.neighbors(v)) {
      if (!alive[u]) continue;
      if (stamp[u] != round) {
        stamp[u] = round;
        touched.push_back(u);
      }
      for (NodeId w : g.neighbors(u)) {
        if (!alive[w] || stamp[w] == round) continue;
        stamp[w] = round;
        touched.push_back(w);
      }
    }
    for (NodeId w : touched) heap.update(w, delta(w));
  }
  return finish_trace(g, PeelAlgorithm::Generalized, PValue::finite(p),
                      std::move(order));
}

CoreDecomposition core_decomposition(const Graph& g) {
  const std::size_t n = g.num_nodes();
  CoreDecomposition result;
  result.core_number.assign(n, 0);
  if (n == 0) {
    result.maxcore_set = NodeSet(0);
    return result;
  }

  // Batagelj-Zaversnik: nodes sorted by degree with bucket start offsets;
  // decrementing a degree swaps the node to the front of its bucket.
  const std::uint32_t max_deg = g.max_degree();
  auto deg = initial_degrees(g);
  std::vector<std::size_t> bin(static_cast<std::size_t>(max_deg) + 1, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const std::size_t count = b;
    b = start;
    start += count;
  }
  std::vector<NodeId> vert(n);
  std::vector<std::size_t> pos(n);
  for (NodeId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = vert[i];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] <= deg[v]) continue;
      const std::uint32_t du = deg[u];
      const std::size_t pu = pos[u];
      const std::size_t pw = bin[du];
      const NodeId w = vert[pw];
      if (u != w) {
        pos[u] = pw;
        vert[pu] = w;
        pos[w] = pu;
        vert[pw] = u;
      }
      ++bin[du];
      --deg[u];
    }
  }

  result.core_number = std::move(deg);
  result.degeneracy =
      *std::max_element(result.core_number.begin(), result.core_number.end());
  std::vector<NodeId> top;
  for (NodeId v = 0; v < n; ++v) {
    if (result.core_number[v] == result.degeneracy) top.push_back(v);
  }
  result.maxcore_set = NodeSet(n, top);
  return result;
}

PrefixChoice best_prefix(const Graph& g, const PeelTrace& trace, PValue p) {
  const auto objective = prefix_objectives(g, trace.order, p);
  const std::size_t best = argmax_prefix(objective);
  if (objective[best] == kNegInf) {
    throw std::domain_error("no prefix has a defined p-density (p = " +
                            p.to_string() + ")");
  }
  return {best, prefix_set(g.num_nodes(), trace.order, best), objective[best]};
}

}  // namespace pmds
