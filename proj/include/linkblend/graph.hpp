#ifndef LINKBLEND_GRAPH_HPP
#define LINKBLEND_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "linkblend/rng.hpp"

namespace linkblend {

using NodeId = std::uint32_t;
using NodePair = std::pair<NodeId, NodeId>;

// Undirected simple graph over dense node ids [0, node_count). Edges are
// stored once as (u, v) with u < v; adjacency lists are sorted. Immutable
// after construction, so instances can be shared across threads freely.
class Graph {
 public:
  // Validates and canonicalizes: orders endpoints, sorts, deduplicates.
  // Rejects self-loops and endpoints >= node_count.
  static Graph from_edges(NodeId node_count, std::vector<NodePair> edges);

  NodeId node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const NodePair> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId u) const;
  std::size_t degree(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;

  // Unordered pairs {u,v}, u != v, minus existing edges.
  std::uint64_t non_edge_count() const;

  bool operator==(const Graph& other) const = default;

 private:
  Graph() = default;
  NodeId node_count_ = 0;
  std::vector<NodePair> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

struct LinkSplit {
  std::vector<NodePair> train_pos;
  std::vector<NodePair> valid_pos;
  std::vector<NodePair> valid_neg;
  std::vector<NodePair> test_pos;
  std::vector<NodePair> test_neg;
};

// Edge-list text format: one "u v" or "u,v" pair per line, '#' lines are
// comments, and an optional leading "#N=<count>" fixes node_count (otherwise
// 1 + max id seen). Reversed and repeated lines collapse to one edge.
Graph load_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

// Same line format, but kept verbatim: no dedup, order preserved. Self-loops
// are rejected (no pair file in the pipeline contains them).
std::vector<NodePair> load_pair_list(std::istream& in);
void write_pair_list(std::ostream& out, std::span<const NodePair> pairs);

// Partitions the edge set into train/valid/test positives (sizes
// round(frac * |E|)) and samples valid/test negatives uniformly without
// replacement from the non-edges, disjoint between the two lists.
// Deterministic in seed.
LinkSplit make_split(const Graph& g, double valid_frac, double test_frac,
                     std::size_t n_valid_neg, std::size_t n_test_neg, std::uint64_t seed);

// G(n, p) and a two-probability stochastic block model, both sampled
// edge-by-edge from the seeded generator.
Graph erdos_renyi(NodeId n, double p, std::uint64_t seed);
Graph stochastic_block_model(std::span<const NodeId> block_sizes, double p_in, double p_out,
                             std::uint64_t seed);

}  // namespace linkblend

#endif  // LINKBLEND_GRAPH_HPP
