#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pmds {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in compressed-row form.
///
/// Nodes are dense indices in [0, n). Every node carries a string label
/// (the token it had in the input file, or its decimal index for generated
/// graphs). Neighbor lists are sorted ascending and duplicate-free, and the
/// adjacency relation is symmetric.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over nodes [0, n). Self-loops are dropped and parallel
  /// edges collapsed. `labels` must be empty (decimal labels are generated)
  /// or hold exactly n distinct strings.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v],
            neighbors_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(NodeId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t max_degree() const noexcept { return max_degree_; }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Dense index for an original label, or throws std::out_of_range.
  NodeId index_of(std::string_view label) const;
  bool has_label(std::string_view label) const;

  /// Edges (u, v) with u < v, ascending by (u, v).
  std::vector<Edge> edge_list() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ &&
           a.labels_ == b.labels_;
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::uint32_t max_degree_ = 0;
};

/// Subset of the nodes of a graph with O(1) membership and a sorted member
/// list. The universe size fixes the valid index range.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : mask_(universe, 0) {}
  NodeSet(std::size_t universe, std::span<const NodeId> members);

  static NodeSet all(std::size_t universe);

  std::size_t universe() const noexcept { return mask_.size(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeId v) const noexcept {
    return v < mask_.size() && mask_[v] != 0;
  }

  /// Returns false if v was already present.
  bool insert(NodeId v);
  /// Returns false if v was absent.
  bool erase(NodeId v);

  /// Sorted ascending.
  std::span<const NodeId> members() const noexcept { return members_; }

  friend bool operator==(const NodeSet& a, const NodeSet& b) {
    return a.mask_.size() == b.mask_.size() && a.members_ == b.members_;
  }

 private:
  void check_index(NodeId v) const;

  std::vector<NodeId> members_;
  std::vector<std::uint8_t> mask_;
};

struct ParseDiagnostics {
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;
};

struct ParseResult {
  Graph graph;
  ParseDiagnostics diagnostics;
};

/// Reads a whitespace- or comma-separated edge list. Lines starting with '#'
/// or '%' are comments and blank lines are skipped. Labels are assigned dense
/// indices in first-appearance order. Throws ParseError on a line with a
/// token count other than two, or when no edge survives ("no edges").
ParseResult parse_edge_list_with_diagnostics(std::istream& in);
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);

/// Canonical form: one "u v" line per edge, dense indices, u < v, ascending.
void write_canonical_edge_list(const Graph& g, std::ostream& out);

/// (node, d_v(S)) for every v in S, ascending by node.
std::vector<std::pair<NodeId, std::uint32_t>> induced_degrees(const Graph& g,
                                                              const NodeSet& s);

/// d_v(S) for every node of g, zero outside S. Indexed by node.
std::vector<std::uint32_t> induced_degree_vector(const Graph& g,
                                                 const NodeSet& s);

/// |E_S|.
std::size_t induced_edge_count(const Graph& g, const NodeSet& s);

/// Throws std::out_of_range unless s is a subset of g's nodes.
void check_node_set(const Graph& g, const NodeSet& s);

}  // namespace pmds
