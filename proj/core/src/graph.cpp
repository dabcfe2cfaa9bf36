#include "pmds/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "pmds/errors.hpp"

namespace pmds {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (n > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("graph too large for 32-bit node ids");
  }
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  } else if (labels.size() != n) {
    throw std::invalid_argument("label count does not match node count");
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    if (u == v) continue;
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  std::vector<NodeId> adj(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adj[cursor[u]++] = v;
    adj[cursor[v]++] = u;
  }

  // Sort and dedupe each row, compacting in place.
  std::size_t write = 0;
  std::size_t row_begin = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t row_end = g.offsets_[v + 1];
    auto first = adj.begin() + static_cast<std::ptrdiff_t>(row_begin);
    auto last = adj.begin() + static_cast<std::ptrdiff_t>(row_end);
    std::sort(first, last);
    last = std::unique(first, last);
    const std::size_t row_start = write;
    for (auto it = first; it != last; ++it) adj[write++] = *it;
    g.offsets_[v] = row_start;
    g.max_degree_ =
        std::max(g.max_degree_, static_cast<std::uint32_t>(write - row_start));
    row_begin = row_end;
  }
  g.offsets_[n] = write;
  adj.resize(write);
  adj.shrink_to_fit();
  g.neighbors_ = std::move(adj);

  g.index_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.index_.emplace(labels[v], static_cast<NodeId>(v)).second) {
      throw std::invalid_argument("duplicate node label '" + labels[v] + "'");
    }
  }
  g.labels_ = std::move(labels);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

NodeId Graph::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    throw std::out_of_range("unknown node label '" + std::string(label) + "'");
  }
  return it->second;
}

bool Graph::has_label(std::string_view label) const {
  return index_.contains(std::string(label));
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// NodeSet

NodeSet::NodeSet(std::size_t universe, std::span<const NodeId> members)
    : mask_(universe, 0) {
  members_.reserve(members.size());
  for (NodeId v : members) {
    check_index(v);
    if (!mask_[v]) {
      mask_[v] = 1;
      members_.push_back(v);
    }
  }
  std::sort(members_.begin(), members_.end());
}

NodeSet NodeSet::all(std::size_t universe) {
  NodeSet s;
  s.mask_.assign(universe, 1);
  s.members_.resize(universe);
  for (std::size_t v = 0; v < universe; ++v) {
    s.members_[v] = static_cast<NodeId>(v);
  }
  return s;
}

void NodeSet::check_index(NodeId v) const {
  if (v >= mask_.size()) {
    throw std::out_of_range("node index " + std::to_string(v) +
                            " outside universe of size " +
                            std::to_string(mask_.size()));
  }
}

bool NodeSet::insert(NodeId v) {
  check_index(v);
  if (mask_[v]) return false;
  mask_[v] = 1;
  members_.insert(std::lower_bound(members_.begin(), members_.end(), v), v);
  return true;
}

bool NodeSet::erase(NodeId v) {
  check_index(v);
  if (!mask_[v]) return false;
  mask_[v] = 0;
  members_.erase(std::lower_bound(members_.begin(), members_.end(), v));
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_separator(char c) {
  return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace

ParseResult parse_edge_list_with_diagnostics(std::istream& in) {
  ParseDiagnostics diag;
  std::unordered_map<std::string, NodeId> index;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  auto intern = [&](std::string_view token) -> NodeId {
    auto [it, inserted] =
        index.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::vector<std::string_view> tokens;
  while (std::getline(in, line)) {
    ++diag.lines;
    std::string_view rest(line);
    while (!rest.empty() && is_separator(rest.front())) rest.remove_prefix(1);
    if (rest.empty()) continue;
    if (rest.front() == '#' || rest.front() == '%') {
      ++diag.comment_lines;
      continue;
    }
    tokens.clear();
    while (!rest.empty()) {
      std::size_t len = 0;
      while (len < rest.size() && !is_separator(rest[len])) ++len;
      tokens.push_back(rest.substr(0, len));
      rest.remove_prefix(len);
      while (!rest.empty() && is_separator(rest.front())) rest.remove_prefix(1);
    }
    if (tokens.size() != 2) {
      throw ParseError("line " + std::to_string(diag.lines) + ": expected 2 " +
                           "node labels, found " +
                           std::to_string(tokens.size()),
                       diag.lines);
    }
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    if (u == v) {
      ++diag.self_loops;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (in.bad()) throw ParseError("read error", diag.lines);

  const std::size_t raw = edges.size();
  const std::size_t n = labels.size();
  Graph g = Graph::from_edges(n, edges, std::move(labels));
  diag.duplicate_edges = raw - g.num_edges();
  if (g.num_edges() == 0) throw ParseError("no edges", 0);
  return {std::move(g), diag};
}

Graph parse_edge_list(std::istream& in) {
  return parse_edge_list_with_diagnostics(in).graph;
}

Graph parse_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return parse_edge_list(in);
}

void write_canonical_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

// ---------------------------------------------------------------------------
// Induced-subgraph utilities

void check_node_set(const Graph& g, const NodeSet& s) {
  if (s.universe() != g.num_nodes()) {
    throw std::out_of_range("node set universe (" +
                            std::to_string(s.universe()) +
                            ") does not match graph size (" +
                            std::to_string(g.num_nodes()) + ")");
  }
}

std::vector<std::pair<NodeId, std::uint32_t>> induced_degrees(
    const Graph& g, const NodeSet& s) {
  check_node_set(g, s);
  std::vector<std::pair<NodeId, std::uint32_t>> out;
  out.reserve(s.size());
  for (NodeId v : s.members()) {
    std::uint32_t d = 0;
    for (NodeId u : g.neighbors(v)) d += s.contains(u);
    out.emplace_back(v, d);
  }
  return out;
}

std::vector<std::uint32_t> induced_degree_vector(const Graph& g,
                                                 const NodeSet& s) {
  check_node_set(g, s);
  std::vector<std::uint32_t> deg(g.num_nodes(), 0);
  for (NodeId v : s.members()) {
    std::uint32_t d = 0;
    for (NodeId u : g.neighbors(v)) d += s.contains(u);
    deg[v] = d;
  }
  return deg;
}

std::size_t induced_edge_count(const Graph& g, const NodeSet& s) {
  std::size_t twice = 0;
  for (const auto& [v, d] : induced_degrees(g, s)) twice += d;
  return twice / 2;
}

}  // namespace pmds
