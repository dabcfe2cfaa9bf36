#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "pmds/errors.hpp"
#include "pmds/graph.hpp"
#include "support/fixtures.hpp"

namespace pmds {
namespace {

using testing::from_text;

TEST(ParseEdgeList, Triangle) {
  const Graph g = testing::triangle();
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 3u);
  for (NodeId v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 2u);
}

TEST(ParseEdgeList, DuplicatesCollapseAndSelfLoopsDrop) {
  std::istringstream in("a b\nb a\na a\n");
  const auto [g, diag] = parse_edge_list_with_diagnostics(in);
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(diag.self_loops, 1u);
  EXPECT_EQ(diag.duplicate_edges, 1u);
  EXPECT_EQ(g.index_of("a"), 0u);
  EXPECT_EQ(g.index_of("b"), 1u);
}

TEST(ParseEdgeList, Star) {
  const Graph g = testing::star3();
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.degree(0), 3u);
}

TEST(ParseEdgeList, CommentsCommasAndFirstAppearanceOrder) {
  const Graph g = from_text("# header\n% other\n\n30,10\n10 ,\t20\r\n");
  ASSERT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.label(0), "30");
  EXPECT_EQ(g.label(1), "10");
  EXPECT_EQ(g.label(2), "20");
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(ParseEdgeList, NodeSeenOnlyInSelfLoopIsKeptIsolated) {
  const Graph g = from_text("x x\na b\n");
  ASSERT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.degree(g.index_of("x")), 0u);
}

TEST(ParseEdgeList, MalformedLineReportsLineNumber) {
  std::istringstream in("0 1\n1 2 3\n");
  try {
    parse_edge_list(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream single("# c\n7\n");
  EXPECT_THROW(parse_edge_list(single), ParseError);
}

TEST(ParseEdgeList, EmptyInputHasNoEdges) {
  std::istringstream empty("");
  try {
    parse_edge_list(empty);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "no edges");
  }
  std::istringstream loops("a a\n# only a loop\n");
  EXPECT_THROW(parse_edge_list(loops), ParseError);
}

TEST(Graph, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_graph(40, 0.15, seed);
    std::size_t total = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      auto row = g.neighbors(v);
      total += row.size();
      EXPECT_TRUE(std::is_sorted(row.begin(), row.end()));
      EXPECT_EQ(std::adjacent_find(row.begin(), row.end()), row.end());
      for (NodeId u : row) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(g.has_edge(u, v));
      }
    }
    EXPECT_EQ(total, 2 * g.num_edges());
  }
}

TEST(NodeSet, MembershipAndBounds) {
  NodeSet s(5);
  EXPECT_TRUE(s.insert(3));
  EXPECT_TRUE(s.insert(1));
  EXPECT_FALSE(s.insert(3));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(1));
  EXPECT_FALSE(s.contains(4));
  EXPECT_FALSE(s.contains(99));
  EXPECT_EQ(std::vector<NodeId>(s.members().begin(), s.members().end()),
            (std::vector<NodeId>{1, 3}));
  EXPECT_TRUE(s.erase(1));
  EXPECT_FALSE(s.erase(1));
  EXPECT_THROW(s.insert(5), std::out_of_range);
  const NodeId bad[] = {7};
  EXPECT_THROW(NodeSet(5, bad), std::out_of_range);
}

TEST(InducedDegrees, Examples) {
  const Graph k3 = testing::triangle();
  const auto all = induced_degrees(k3, NodeSet::all(3));
  ASSERT_EQ(all.size(), 3u);
  for (NodeId v = 0; v < 3; ++v) {
    EXPECT_EQ(all[v], (std::pair<NodeId, std::uint32_t>{v, 2}));
  }

  const Graph star = testing::star3();
  const NodeId hub_and_two[] = {0, 1, 2};
  const auto part = induced_degrees(star, NodeSet(4, hub_and_two));
  ASSERT_EQ(part.size(), 3u);
  EXPECT_EQ(part[0].second, 2u);
  EXPECT_EQ(part[1].second, 1u);
  EXPECT_EQ(part[2].second, 1u);

  EXPECT_TRUE(induced_degrees(k3, NodeSet(3)).empty());
  EXPECT_THROW(induced_degrees(k3, NodeSet(4)), std::out_of_range);
}

TEST(InducedEdgeCount, Examples) {
  EXPECT_EQ(induced_edge_count(testing::triangle(), NodeSet::all(3)), 3u);
  const NodeId leaves[] = {1, 2, 3};
  EXPECT_EQ(induced_edge_count(testing::star3(), NodeSet(4, leaves)), 0u);
  EXPECT_EQ(induced_edge_count(testing::bowtie(), NodeSet::all(5)), 6u);
}

TEST(InducedDegrees, HandshakeOnRandomSubsets) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testing::random_graph(30, 0.2, seed);
    NodeSet s(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (rng() & 1u) s.insert(v);
    }
    std::size_t sum = 0;
    for (const auto& [v, d] : induced_degrees(g, s)) sum += d;
    EXPECT_EQ(sum, 2 * induced_edge_count(g, s));

    // Independent count straight from the edge list.
    std::size_t direct = 0;
    for (const auto& [u, v] : g.edge_list()) direct += s.contains(u) && s.contains(v);
    EXPECT_EQ(direct, induced_edge_count(g, s));
  }
}

TEST(InducedDegrees, FullSetMatchesDegreeSequence) {
  const Graph g = testing::random_graph(50, 0.1, 3);
  for (const auto& [v, d] : induced_degrees(g, NodeSet::all(g.num_nodes()))) {
    EXPECT_EQ(d, g.degree(v));
  }
}

TEST(CanonicalEdgeList, RoundTripPreservesGraph) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    // Random labels, duplicates and loops in random order.
    std::ostringstream text;
    for (int e = 0; e < 60; ++e) {
      text << "n" << rng() % 25 << (rng() & 1u ? " " : ",") << "n" << rng() % 25
           << '\n';
    }
    const Graph g = from_text(text.str());

    std::ostringstream canonical;
    write_canonical_edge_list(g, canonical);
    const Graph h = from_text(canonical.str());

    // h's labels are g's dense indices; map them back and compare edge sets.
    std::set<Edge> expected;
    for (const auto& e : g.edge_list()) expected.insert(e);
    std::set<Edge> actual;
    for (const auto& [u, v] : h.edge_list()) {
      const auto a = static_cast<NodeId>(std::stoul(h.label(u)));
      const auto b = static_cast<NodeId>(std::stoul(h.label(v)));
      actual.emplace(std::min(a, b), std::max(a, b));
    }
    EXPECT_EQ(actual, expected);

    // Canonical text is a fixpoint once labels equal indices.
    std::ostringstream again;
    write_canonical_edge_list(from_text(canonical.str()), again);
    const Graph h2 = from_text(again.str());
    EXPECT_EQ(h2.num_edges(), g.num_edges());
  }
}

}  // namespace
}  // namespace pmds
