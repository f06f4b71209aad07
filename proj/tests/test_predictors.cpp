#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "gnn_check.hpp"
#include "linkblend/errors.hpp"
#include "linkblend/graph.hpp"
#include "linkblend/metrics.hpp"
#include "linkblend/predictors.hpp"
#include "linkblend/rng.hpp"

using namespace linkblend;

namespace {

// Square 0-1-2 plus tail: edges {(0,1),(0,2),(1,2),(1,3)}.
Graph triangle_with_tail() {
  return Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}});
}

}  // namespace

TEST_CASE("heuristic worked examples") {
  const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(heuristic_score(path, {0, 2}, Heuristic::common_neighbors) == 1.0);

  const Graph g = triangle_with_tail();
  // Common neighbor of (0,3) is node 1 with degree 3.
  CHECK(heuristic_score(g, {0, 3}, Heuristic::adamic_adar) ==
        doctest::Approx(1.0 / std::log(3.0)));
  CHECK(heuristic_score(g, {0, 3}, Heuristic::resource_allocation) ==
        doctest::Approx(1.0 / 3.0));
  // Gamma(0)={1,2}, Gamma(3)={1}: intersection 1, union 2.
  CHECK(heuristic_score(g, {0, 3}, Heuristic::jaccard) == doctest::Approx(0.5));
}

TEST_CASE("jaccard of disconnected endpoints with empty union is 0") {
  const Graph g = Graph::from_edges(4, {{0, 1}});
  CHECK(heuristic_score(g, {2, 3}, Heuristic::jaccard) == 0.0);
}

TEST_CASE("heuristics reject out-of-range nodes") {
  const Graph g = Graph::from_edges(3, {{0, 1}});
  CHECK_THROWS_AS(heuristic_score(g, {0, 3}, Heuristic::common_neighbors), ArgumentError);
}

TEST_CASE("heuristics are nonnegative and jaccard is at most 1") {
  Pcg32 rng(77, 5);
  for (int rep = 0; rep < 10; ++rep) {
    const Graph g = erdos_renyi(25, 0.2, 1000 + rep);
    for (int t = 0; t < 50; ++t) {
      const auto u = static_cast<NodeId>(rng.next_below(25));
      const auto v = static_cast<NodeId>(rng.next_below(25));
      if (u == v) continue;
      for (const auto kind : {Heuristic::common_neighbors, Heuristic::adamic_adar,
                              Heuristic::resource_allocation, Heuristic::jaccard}) {
        const double s = heuristic_score(g, {u, v}, kind);
        CHECK(s >= 0.0);
        if (kind == Heuristic::jaccard) CHECK(s <= 1.0);
      }
    }
  }
}

TEST_CASE("zeroed scorer outputs probability one half for every pair") {
  const Graph g = triangle_with_tail();
  GnnConfig config;
  config.embedding_dim = 4;
  config.num_layers = 2;
  auto m = GnnScorer::init(g.node_count(), config, 1);
  m.embeddings().setZero();
  for (auto& w : m.layer_weights()) w.setZero();
  m.mlp_w1().setZero();
  m.mlp_b1().setZero();
  m.mlp_w2().setZero();
  m.mlp_b2() = 0.0;
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = 0; v < 4; ++v)
      if (u != v) CHECK(m.forward(g, {u, v}) == 0.5);
}

TEST_CASE("scorer is symmetric in its pair argument") {
  const Graph g = erdos_renyi(12, 0.3, 4);
  GnnConfig config;
  config.embedding_dim = 8;
  for (const auto agg : {Aggregation::gcn_symmetric, Aggregation::mean}) {
    config.aggregation = agg;
    const auto m = GnnScorer::init(g.node_count(), config, 9);
    Pcg32 rng(3, 13);
    for (int t = 0; t < 30; ++t) {
      const auto u = static_cast<NodeId>(rng.next_below(12));
      const auto v = static_cast<NodeId>(rng.next_below(12));
      if (u == v) continue;
      CHECK(m.forward(g, {u, v}) == m.forward(g, {v, u}));
    }
  }
}

TEST_CASE("forward matches the dense straight-line oracle to 1e-12") {
  const Graph g = erdos_renyi(10, 0.35, 6);
  GnnConfig config;
  config.embedding_dim = 6;
  config.num_layers = 2;
  for (const auto agg : {Aggregation::gcn_symmetric, Aggregation::mean}) {
    config.aggregation = agg;
    auto m = GnnScorer::init(g.node_count(), config, 17);
    Pcg32 rng(5, 21);
    for (int t = 0; t < 25; ++t) {
      const auto u = static_cast<NodeId>(rng.next_below(10));
      const auto v = static_cast<NodeId>(rng.next_below(10));
      if (u == v) continue;
      const double got = m.forward(g, {u, v});
      const double want = gnn_check::dense_oracle_forward(m, g, {u, v});
      CHECK(std::abs(got - want) < 1e-12);
    }
  }
}

TEST_CASE("scorer rejects dimension mismatches") {
  const Graph small = Graph::from_edges(3, {{0, 1}});
  GnnConfig config;
  config.embedding_dim = 4;
  const auto m = GnnScorer::init(5, config, 1);
  CHECK_THROWS_AS(m.forward(small, {0, 1}), ArgumentError);
}

TEST_CASE("analytic gradients agree with central finite differences") {
  // 6-node graph, d=4, both aggregation operators and both depths.
  const Graph g = Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 4}});
  const std::vector<NodePair> pos = {{0, 1}, {2, 3}, {3, 4}, {1, 4}};
  const std::vector<NodePair> neg = {{0, 5}, {1, 5}, {2, 5}, {0, 3}};
  for (const auto agg : {Aggregation::gcn_symmetric, Aggregation::mean}) {
    for (const int layers : {1, 2}) {
      GnnConfig config;
      config.embedding_dim = 4;
      config.num_layers = layers;
      config.aggregation = agg;
      auto m = GnnScorer::init(g.node_count(), config, 23);
      for (const auto& block : gnn_check::gradcheck_by_block(m, g, pos, neg, 1.0, 1e-5)) {
        INFO("block ", block.block);
        CHECK(block.max_rel_err < 1e-4);
      }
    }
  }
}

TEST_CASE("zero learning rate leaves parameters unchanged") {
  const Graph g = erdos_renyi(12, 0.3, 2);
  GnnConfig config;
  config.embedding_dim = 4;
  auto m = GnnScorer::init(g.node_count(), config, 3);
  const Eigen::MatrixXd before = m.embeddings();
  const Eigen::MatrixXd w1_before = m.mlp_w1();

  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.learning_rate = 0.0;
  const auto trace = m.train(g, g.edges(), cfg);
  CHECK(trace.size() == 5);
  CHECK(m.embeddings() == before);
  CHECK(m.mlp_w1() == w1_before);
}

TEST_CASE("training keeps the loss finite and learns block structure") {
  // Two dense blocks, sparse cross links: the scorer should rank held-in
  // edges above sampled non-edges clearly (AUC > 0.8) for all three seeds.
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const std::vector<NodeId> blocks = {25, 25};
    const Graph g = stochastic_block_model(blocks, 0.4, 0.02, seed);

    GnnConfig config;
    config.embedding_dim = 16;
    config.num_layers = 2;
    auto m = GnnScorer::init(g.node_count(), config, seed);

    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.learning_rate = 0.05;
    cfg.seed = seed;
    const auto trace = m.train(g, g.edges(), cfg);
    for (double loss : trace) CHECK(std::isfinite(loss));

    // Score train positives vs fresh uniform non-edges.
    const auto pos_scores = score_column(g, m, g.edges());
    Pcg32 rng(seed, 111);
    std::vector<NodePair> negs;
    while (negs.size() < g.edge_count()) {
      const auto u = static_cast<NodeId>(rng.next_below(g.node_count()));
      const auto v = static_cast<NodeId>(rng.next_below(g.node_count()));
      if (u == v || g.has_edge(u, v)) continue;
      negs.emplace_back(u, v);
    }
    const auto neg_scores = score_column(g, m, negs);
    CHECK(auc(pos_scores, neg_scores).value > 0.8);
  }
}

TEST_CASE("training is deterministic given the seed") {
  const Graph g = erdos_renyi(15, 0.25, 5);
  GnnConfig config;
  config.embedding_dim = 4;
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.learning_rate = 0.05;
  cfg.seed = 42;

  auto a = GnnScorer::init(g.node_count(), config, 7);
  auto b = GnnScorer::init(g.node_count(), config, 7);
  const auto trace_a = a.train(g, g.edges(), cfg);
  const auto trace_b = b.train(g, g.edges(), cfg);
  CHECK(trace_a == trace_b);
  CHECK(a.embeddings() == b.embeddings());
  CHECK(a.mlp_w2() == b.mlp_w2());
}

TEST_CASE("train validates its inputs") {
  const Graph g = erdos_renyi(10, 0.3, 8);
  GnnConfig config;
  config.embedding_dim = 4;
  auto m = GnnScorer::init(g.node_count(), config, 1);
  TrainConfig cfg;
  CHECK_THROWS_AS(m.train(g, {}, cfg), ArgumentError);

  const Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  auto m3 = GnnScorer::init(3, config, 1);
  CHECK_THROWS_AS(m3.train(k3, k3.edges(), cfg), TrainingError);
}

TEST_CASE("score_column length and alignment contracts") {
  const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(score_column(path, Heuristic::common_neighbors, {}).empty());

  const std::vector<NodePair> single = {{0, 2}};
  CHECK(score_column(path, Heuristic::common_neighbors, single) == std::vector<double>{1.0});

  GnnConfig config;
  config.embedding_dim = 4;
  const auto m = GnnScorer::init(3, config, 2);
  std::vector<NodePair> pairs = {{0, 1}, {0, 2}, {1, 2}};
  const auto col = score_column(path, m, pairs);
  REQUIRE(col.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    CHECK(col[i] == doctest::Approx(m.forward(path, pairs[i])));
}
