#include "pmds/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "min_norm_point.hpp"
#include "pmds/errors.hpp"
#include "pmds/peel.hpp"

namespace pmds {

SubmodularProblem::SubmodularProblem(const Graph& graph, double p, double alpha)
    : graph_(&graph), p_(p), alpha_(alpha) {
  if (!(p >= 1.0) || std::isinf(p)) {
    throw std::invalid_argument("supermodularity not guaranteed for p = " +
                                std::to_string(p) + " (requires finite p >= 1)");
  }
  if (!(alpha >= 0.0) || std::isinf(alpha)) {
    throw std::invalid_argument("alpha must be finite and non-negative");
  }
}

double psi_value(const SubmodularProblem& prob, const NodeSet& s) {
  double total = 0.0;
  for (const auto& [v, d] : induced_degrees(prob.graph(), s)) {
    total += std::pow(static_cast<double>(d), prob.p());
  }
  return total - prob.alpha() * static_cast<double>(s.size());
}

double marginal_gain(const SubmodularProblem& prob, const NodeSet& s,
                     std::span<const std::uint32_t> degrees, NodeId v) {
  const Graph& g = prob.graph();
  check_node_set(g, s);
  if (v >= g.num_nodes()) throw std::out_of_range("node index out of range");
  if (s.contains(v)) {
    throw std::invalid_argument("node " + std::to_string(v) +
                                " is already in the set");
  }
  const double p = prob.p();
  double gain = -prob.alpha();
  std::uint32_t dv = 0;
  for (NodeId u : g.neighbors(v)) {
    if (!s.contains(u)) continue;
    ++dv;
    const double du = degrees[u];
    gain += std::pow(du + 1.0, p) - std::pow(du, p);
  }
  return gain + std::pow(static_cast<double>(dv), p);
}

namespace {

// Greedy vertex of the base polytope of F = -psi: visiting nodes in order,
// coordinate v is F(S + v) - F(S) = -marginal_gain(S, v).
class GreedyVertex {
 public:
  explicit GreedyVertex(const SubmodularProblem& prob)
      : prob_(prob),
        order_(prob.graph().num_nodes()),
        degrees_(prob.graph().num_nodes()),
        in_set_(prob.graph().num_nodes()) {}

  void operator()(std::span<const double> weights, std::span<double> out) {
    const Graph& g = prob_.graph();
    std::iota(order_.begin(), order_.end(), NodeId{0});
    std::stable_sort(order_.begin(), order_.end(), [&](NodeId a, NodeId b) {
      return weights[a] < weights[b];
    });
    std::fill(degrees_.begin(), degrees_.end(), 0u);
    std::fill(in_set_.begin(), in_set_.end(), std::uint8_t{0});
    const double p = prob_.p();
    for (NodeId v : order_) {
      double gain = -prob_.alpha();
      std::uint32_t dv = 0;
      for (NodeId u : g.neighbors(v)) {
        if (!in_set_[u]) continue;
        ++dv;
        const double du = degrees_[u];
        gain += std::pow(du + 1.0, p) - std::pow(du, p);
      }
      gain += std::pow(static_cast<double>(dv), p);
      out[v] = -gain;
      in_set_[v] = 1;
      for (NodeId u : g.neighbors(v)) {
        if (in_set_[u] && u != v) ++degrees_[u];
      }
      degrees_[v] = dv;
    }
  }

 private:
  const SubmodularProblem& prob_;
  std::vector<NodeId> order_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::uint8_t> in_set_;
};

struct Candidate {
  NodeSet set;
  double psi;
};

// Sorted-coordinate prefixes of x plus the empty set, V and all singletons;
// each scored by direct psi evaluation.
std::vector<Candidate> certified_candidates(const SubmodularProblem& prob,
                                            std::span<const double> x) {
  const std::size_t n = prob.graph().num_nodes();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return x[a] < x[b]; });

  std::vector<Candidate> out;
  out.reserve(2 * n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    NodeSet s(n, std::span<const NodeId>(order).first(k));
    const double value = psi_value(prob, s);
    out.push_back({std::move(s), value});
  }
  for (NodeId v = 0; v < n; ++v) {
    const NodeId single[] = {v};
    NodeSet s(n, single);
    const double value = psi_value(prob, s);
    out.push_back({std::move(s), value});
  }
  return out;
}

}  // namespace

SubmodularSolution minimize_submodular(const SubmodularProblem& prob,
                                       const MinNormOptions& options) {
  if (!(prob.alpha() > 0.0)) {
    throw std::invalid_argument("minimize_submodular requires alpha > 0");
  }
  const Graph& g = prob.graph();
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("graph is empty");
  const std::size_t cap =
      options.max_iterations > 0 ? options.max_iterations : 10 * n * n;

  GreedyVertex greedy(prob);
  detail::GreedyOracle oracle = [&](std::span<const double> w,
                                    std::span<double> out) { greedy(w, out); };

  std::vector<double> start(n, 0.0);
  auto mnp = detail::wolfe_min_norm_point(n, oracle, start, options.tolerance, cap);
  std::size_t iterations = mnp.iterations;
  if (!mnp.converged) {
    // Restart from the greedy vertex of the current point.
    mnp = detail::wolfe_min_norm_point(n, oracle, mnp.x, options.tolerance, cap);
    iterations += mnp.iterations;
  }

  double lower = 0.0;
  for (double xi : mnp.x) lower += std::min(xi, 0.0);

  auto candidates = certified_candidates(prob, mnp.x);
  if (!mnp.converged) {
    double best = 0.0;
    for (const auto& c : candidates) best = std::max(best, c.psi);
    throw ConvergenceError(
        "min-norm point did not converge within " + std::to_string(cap) +
            " iterations (best psi found " + std::to_string(best) +
            ", upper bound on max psi " + std::to_string(-lower) + ")",
        -lower);
  }

  SubmodularSolution sol;
  sol.iterations = iterations;
  sol.lower_bound = lower;
  const Candidate* best_any = &candidates.front();  // the empty set
  const Candidate* best_nonempty = nullptr;
  for (const auto& c : candidates) {
    if (c.set.empty()) continue;
    if (!best_nonempty || c.psi > best_nonempty->psi ||
        (c.psi == best_nonempty->psi && c.set.size() < best_nonempty->set.size())) {
      best_nonempty = &c;
    }
  }
  if (best_nonempty && best_nonempty->psi >= best_any->psi) {
    best_any = best_nonempty;
  }
  sol.set = best_any->set;
  sol.psi = best_any->psi;
  sol.best_nonempty = best_nonempty->set;
  sol.best_nonempty_psi = best_nonempty->psi;
  return sol;
}

// ---------------------------------------------------------------------------

namespace {

double ranked_value(const Graph& g, const NodeSet& s, PValue p) {
  return ranks_by_fp(p) ? fp_value(g, s, p.value()) : p_density(g, s, p);
}

bool is_integer(double p) { return std::floor(p) == p; }

}  // namespace

ExactResult exact_pmean(const Graph& g, double p, const ExactOptions& options) {
  if (g.empty()) throw std::invalid_argument("graph is empty");
  if (options.tolerance && !(*options.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (options.method == ExactMethod::BruteForce) {
    return brute_force_opt(g, PValue::finite(p), options.brute_force_cap);
  }

  const std::size_t n = g.num_nodes();
  const double tol = options.tolerance.value_or(
      is_integer(p) ? 1.0 / (static_cast<double>(n) * static_cast<double>(n))
                    : 1e-9);

  ExactResult result;
  result.method = ExactMethod::Submodular;

  double lo = 0.0;
  double hi = 0.0;
  for (NodeId v = 0; v < n; ++v) hi += std::pow(static_cast<double>(g.degree(v)), p);
  const double decision_band = 1e-9 * hi;

  result.best_set = NodeSet::all(n);
  result.best_fp = fp_value(g, result.best_set, p);

  while (hi - lo >= tol) {
    const double alpha = 0.5 * (lo + hi);
    if (!(alpha > lo && alpha < hi)) break;  // interval below resolution
    const SubmodularProblem prob(g, p, alpha);
    const auto sol = minimize_submodular(prob, options.min_norm);
    ++result.iterations;
    const bool feasible = sol.best_nonempty_psi >= -decision_band;
    result.alpha_trace.push_back(
        {alpha, feasible, feasible ? sol.best_nonempty.size() : sol.set.size()});
    if (feasible) {
      const double value = fp_value(g, sol.best_nonempty, p);
      if (value > result.best_fp) {
        result.best_fp = value;
        result.best_set = sol.best_nonempty;
      }
      lo = std::max(alpha, std::min(value, hi));
    } else {
      hi = alpha;
    }
  }
  result.best_fp = fp_value(g, result.best_set, p);
  return result;
}

ExactResult brute_force_opt(const Graph& g, PValue p, std::size_t cap) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("graph is empty");
  if (n > std::min<std::size_t>(cap, 30)) {
    throw std::invalid_argument("brute force limited to " +
                                std::to_string(std::min<std::size_t>(cap, 30)) +
                                " nodes, graph has " + std::to_string(n));
  }

  std::vector<std::uint32_t> adj(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(v)) adj[v] |= 1u << u;
  }

  const bool by_fp = ranks_by_fp(p);
  const PValue eff = by_fp ? p : p.saturated(kDefaultInfinityThreshold);
  std::vector<double> table(n, 0.0);
  if (eff.is_finite()) {
    for (std::size_t d = 0; d < n; ++d) {
      table[d] = degree_score(static_cast<double>(d), eff.value());
    }
  }

  // Score comparable across subsets; -inf when undefined.
  auto score = [&](std::uint32_t mask) -> double {
    const int size = std::popcount(mask);
    double acc = 0.0;
    std::uint32_t lo_deg = UINT32_MAX;
    std::uint32_t hi_deg = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const auto d = static_cast<std::uint32_t>(std::popcount(adj[v] & mask));
      lo_deg = std::min(lo_deg, d);
      hi_deg = std::max(hi_deg, d);
      if (eff.is_finite()) acc += table[d];
    }
    if (eff.kind() == PValue::Kind::PosInf) return hi_deg;
    if (!by_fp && lo_deg == 0) return -std::numeric_limits<double>::infinity();
    if (eff.kind() == PValue::Kind::NegInf) return lo_deg;
    const double mean = acc / size;
    if (by_fp) return mean;
    if (eff.value() == 0.0) return std::exp(mean);
    return std::pow(-mean, 1.0 / eff.value());
  };

  const std::uint32_t full = n == 32 ? UINT32_MAX : (1u << n) - 1;
  std::uint32_t best_mask = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask != 0 && mask <= full; ++mask) {
    const double value = score(mask);
    if (value == -std::numeric_limits<double>::infinity()) continue;
    const double slack = 1e-12 * std::max(1.0, std::abs(best));
    bool better = best_mask == 0 || value > best + slack;
    if (!better && std::abs(value - best) <= slack) {
      const int a = std::popcount(mask);
      const int b = std::popcount(best_mask);
      // Same size: the lowest differing bit decides lexicographic order.
      better = a < b ||
               (a == b && ((mask ^ best_mask) & mask & -(mask ^ best_mask)) != 0);
    }
    if (better) {
      best = value;
      best_mask = mask;
    }
  }
  if (best_mask == 0) {
    throw std::domain_error("no subset has a defined p-density (p = " +
                            p.to_string() + ")");
  }

  std::vector<NodeId> members;
  for (std::uint32_t rest = best_mask; rest != 0; rest &= rest - 1) {
    members.push_back(static_cast<NodeId>(std::countr_zero(rest)));
  }
  ExactResult result;
  result.method = ExactMethod::BruteForce;
  result.best_set = NodeSet(n, members);
  result.best_fp = ranked_value(g, result.best_set, p);
  result.iterations = (std::size_t{1} << n) - 1;
  return result;
}

}  // namespace pmds
