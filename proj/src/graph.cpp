#include "linkblend/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "linkblend/errors.hpp"

namespace linkblend {

namespace {

NodePair ordered(NodePair p) {
  if (p.first > p.second) std::swap(p.first, p.second);
  return p;
}

std::uint64_t pair_key(NodeId n, NodePair p) {
  return static_cast<std::uint64_t>(p.first) * n + p.second;
}

// Parses "u v" / "u,v" with arbitrary surrounding whitespace.
bool parse_pair_line(std::string_view line, NodeId& u, NodeId& v) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == ',' ||
                                 line[pos] == '\r'))
      ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != ',' &&
           line[pos] != '\r')
      ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  if (tokens.size() != 2) return false;
  NodeId ids[2];
  for (int i = 0; i < 2; ++i) {
    const auto* first = tokens[i].data();
    const auto* last = first + tokens[i].size();
    auto res = std::from_chars(first, last, ids[i]);
    if (res.ec != std::errc{} || res.ptr != last) return false;
  }
  u = ids[0];
  v = ids[1];
  return true;
}

}  // namespace

Graph Graph::from_edges(NodeId node_count, std::vector<NodePair> edges) {
  for (auto& e : edges) {
    if (e.first == e.second)
      throw ArgumentError("self-loop (" + std::to_string(e.first) + "," +
                          std::to_string(e.second) + ") is not allowed");
    e = ordered(e);
    if (e.second >= node_count)
      throw ArgumentError("edge endpoint " + std::to_string(e.second) +
                          " out of range for node_count " + std::to_string(node_count));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.node_count_ = node_count;
  g.adjacency_.resize(node_count);
  for (const auto& [u, v] : edges) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
  g.edges_ = std::move(edges);
  return g;
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  if (u >= node_count_) throw ArgumentError("node id " + std::to_string(u) + " out of range");
  return adjacency_[u];
}

std::size_t Graph::degree(NodeId u) const { return neighbors(u).size(); }

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count_ || v >= node_count_)
    throw ArgumentError("node id out of range in has_edge");
  if (u == v) return false;
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::uint64_t Graph::non_edge_count() const {
  const std::uint64_t n = node_count_;
  return n * (n - 1) / 2 - edges_.size();
}

Graph load_edge_list(std::istream& in) {
  std::vector<NodePair> edges;
  bool have_override = false;
  NodeId node_count_override = 0;
  NodeId max_id = 0;
  bool saw_node = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      if (line_no == 1 && sv.rfind("#N=", 0) == 0) {
        std::string_view num = sv.substr(3);
        const auto* first = num.data();
        const auto* last = first + num.size();
        auto res = std::from_chars(first, last, node_count_override);
        if (res.ec != std::errc{} || res.ptr != last)
          throw ParseError("line 1: malformed node-count header '" + std::string(sv) + "'");
        have_override = true;
      }
      continue;
    }
    NodeId u = 0;
    NodeId v = 0;
    if (!parse_pair_line(sv, u, v))
      throw ParseError("line " + std::to_string(line_no) + ": expected two integer node ids, got '" +
                       std::string(sv) + "'");
    if (u == v)
      throw ParseError("line " + std::to_string(line_no) + ": self-loop (" + std::to_string(u) +
                       "," + std::to_string(v) + ")");
    edges.emplace_back(u, v);
    max_id = std::max(max_id, std::max(u, v));
    saw_node = true;
  }

  const NodeId node_count = have_override ? node_count_override : (saw_node ? max_id + 1 : 0);
  if (have_override && saw_node && max_id >= node_count_override)
    throw ParseError("node-count header #N=" + std::to_string(node_count_override) +
                     " is smaller than max node id " + std::to_string(max_id));
  return Graph::from_edges(node_count, std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "#N=" << g.node_count() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << "\t" << v << "\n";
}

std::vector<NodePair> load_pair_list(std::istream& in) {
  std::vector<NodePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv(line);
    if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
    if (sv.empty() || sv.front() == '#') continue;
    NodeId u = 0;
    NodeId v = 0;
    if (!parse_pair_line(sv, u, v))
      throw ParseError("line " + std::to_string(line_no) + ": expected two integer node ids, got '" +
                       std::string(sv) + "'");
    if (u == v)
      throw ParseError("line " + std::to_string(line_no) + ": self-loop (" + std::to_string(u) +
                       "," + std::to_string(v) + ")");
    pairs.emplace_back(u, v);
  }
  return pairs;
}

void write_pair_list(std::ostream& out, std::span<const NodePair> pairs) {
  for (const auto& [u, v] : pairs) out << u << "\t" << v << "\n";
}

namespace {

// Uniform sample of `count` distinct non-edges. Rejection from random pairs
// when the request is small relative to the pool; full enumeration plus a
// partial Fisher-Yates otherwise, which terminates even on near-complete
// graphs.
std::vector<NodePair> sample_non_edges(const Graph& g, std::size_t count, Pcg32& rng) {
  const std::uint64_t pool = g.non_edge_count();
  if (count > pool)
    throw CapacityError("requested " + std::to_string(count) + " negative pairs but only " +
                        std::to_string(pool) + " non-edges exist");
  std::vector<NodePair> result;
  result.reserve(count);
  if (count == 0) return result;

  const NodeId n = g.node_count();
  if (count * 4 <= pool) {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count * 2);
    while (result.size() < count) {
      const auto u = static_cast<NodeId>(rng.next_below(n));
      const auto v = static_cast<NodeId>(rng.next_below(n));
      if (u == v) continue;
      const NodePair p = ordered({u, v});
      if (g.has_edge(p.first, p.second)) continue;
      if (!chosen.insert(pair_key(n, p)).second) continue;
      result.push_back(p);
    }
  } else {
    std::vector<NodePair> non_edges;
    non_edges.reserve(pool);
    for (NodeId u = 0; u < n; ++u) {
      auto adj = g.neighbors(u);
      auto it = std::lower_bound(adj.begin(), adj.end(), u + 1);
      for (NodeId v = u + 1; v < n; ++v) {
        if (it != adj.end() && *it == v) {
          ++it;
          continue;
        }
        non_edges.emplace_back(u, v);
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.next_below(non_edges.size() - i);
      std::swap(non_edges[i], non_edges[j]);
      result.push_back(non_edges[i]);
    }
  }
  return result;
}

}  // namespace

LinkSplit make_split(const Graph& g, double valid_frac, double test_frac, std::size_t n_valid_neg,
                     std::size_t n_test_neg, std::uint64_t seed) {
  if (!(valid_frac > 0.0 && valid_frac < 1.0) || !(test_frac > 0.0 && test_frac < 1.0))
    throw ArgumentError("valid_frac and test_frac must lie in (0,1)");
  if (valid_frac + test_frac >= 1.0)
    throw ArgumentError("valid_frac + test_frac must be < 1");

  Pcg32 rng(seed, rng_stream::kSplit);

  std::vector<NodePair> edges(g.edges().begin(), g.edges().end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const std::size_t j = i + rng.next_below(edges.size() - i);
    std::swap(edges[i], edges[j]);
  }

  const auto e = static_cast<double>(edges.size());
  const auto n_valid = static_cast<std::size_t>(std::llround(valid_frac * e));
  const auto n_test = static_cast<std::size_t>(std::llround(test_frac * e));

  LinkSplit split;
  split.valid_pos.assign(edges.begin(), edges.begin() + n_valid);
  split.test_pos.assign(edges.begin() + n_valid, edges.begin() + n_valid + n_test);
  split.train_pos.assign(edges.begin() + n_valid + n_test, edges.end());

  auto negatives = sample_non_edges(g, n_valid_neg + n_test_neg, rng);
  split.valid_neg.assign(negatives.begin(), negatives.begin() + n_valid_neg);
  split.test_neg.assign(negatives.begin() + n_valid_neg, negatives.end());

  std::sort(split.train_pos.begin(), split.train_pos.end());
  std::sort(split.valid_pos.begin(), split.valid_pos.end());
  std::sort(split.test_pos.begin(), split.test_pos.end());
  std::sort(split.valid_neg.begin(), split.valid_neg.end());
  std::sort(split.test_neg.begin(), split.test_neg.end());
  return split;
}

Graph erdos_renyi(NodeId n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("edge probability must lie in [0,1]");
  Pcg32 rng(seed, rng_stream::kSynthetic);
  std::vector<NodePair> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.next_double() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

Graph stochastic_block_model(std::span<const NodeId> block_sizes, double p_in, double p_out,
                             std::uint64_t seed) {
  if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0))
    throw ArgumentError("block probabilities must lie in [0,1]");
  if (block_sizes.empty()) throw ArgumentError("at least one block is required");

  std::vector<std::uint32_t> block_of;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    if (block_sizes[b] == 0) throw ArgumentError("block sizes must be positive");
    block_of.insert(block_of.end(), block_sizes[b], static_cast<std::uint32_t>(b));
  }
  const auto n = static_cast<NodeId>(block_of.size());

  Pcg32 rng(seed, rng_stream::kSynthetic);
  std::vector<NodePair> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = block_of[u] == block_of[v] ? p_in : p_out;
      if (rng.next_double() < p) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace linkblend
