#ifndef LINKBLEND_TEST_GNN_CHECK_HPP
#define LINKBLEND_TEST_GNN_CHECK_HPP

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linkblend/graph.hpp"
#include "linkblend/predictors.hpp"

namespace gnn_check {

// Straight-line reading of the layer recurrence and the scorer with dense
// matrices; shares nothing with GnnScorer's adjacency-list path.
inline double dense_oracle_forward(linkblend::GnnScorer& m, const linkblend::Graph& g,
                                   linkblend::NodePair pair) {
  using linkblend::Aggregation;
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a_hat = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
  for (Eigen::Index u = 0; u < n; ++u)
    deg(u) = static_cast<double>(g.degree(static_cast<linkblend::NodeId>(u))) + 1.0;
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const bool connected =
          u == v || g.has_edge(static_cast<linkblend::NodeId>(u),
                               static_cast<linkblend::NodeId>(v));
      if (!connected) continue;
      if (m.aggregation() == Aggregation::gcn_symmetric)
        a_hat(u, v) = 1.0 / std::sqrt(deg(u) * deg(v));
      else
        a_hat(u, v) = 1.0 / deg(u);
    }
  }
  Eigen::MatrixXd h = m.embeddings();
  for (const auto& w : m.layer_weights()) h = (a_hat * h * w).cwiseMax(0.0);
  const Eigen::VectorXd p = h.row(pair.first).cwiseProduct(h.row(pair.second)).transpose();
  const Eigen::VectorXd z = (m.mlp_w1() * p + m.mlp_b1()).cwiseMax(0.0);
  const double s = m.mlp_w2().dot(z) + m.mlp_b2();
  return 1.0 / (1.0 + std::exp(-s));
}

struct BlockError {
  std::string block;
  double max_rel_err = 0.0;
};

// Central finite differences of the batch loss against the analytic
// gradients, reported per parameter block.
inline std::vector<BlockError> gradcheck_by_block(linkblend::GnnScorer& m,
                                                  const linkblend::Graph& g,
                                                  std::span<const linkblend::NodePair> pos,
                                                  std::span<const linkblend::NodePair> neg,
                                                  double margin, double step) {
  const auto loss_at = [&] { return m.batch_loss(g, pos, neg, margin); };
  const auto [loss, grads] = m.batch_loss_and_gradients(g, pos, neg, margin);
  (void)loss;

  std::vector<BlockError> blocks;
  double* current = nullptr;
  const auto begin_block = [&](const std::string& name) {
    blocks.push_back({name, 0.0});
    current = &blocks.back().max_rel_err;
  };
  const auto probe = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + step;
    const double up = loss_at();
    param = saved - step;
    const double down = loss_at();
    param = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double denom = std::max({1e-6, std::abs(analytic), std::abs(numeric)});
    *current = std::max(*current, std::abs(analytic - numeric) / denom);
  };

  begin_block("embeddings");
  for (Eigen::Index r = 0; r < m.embeddings().rows(); ++r)
    for (Eigen::Index c = 0; c < m.embeddings().cols(); ++c)
      probe(m.embeddings()(r, c), grads.embeddings(r, c));
  for (std::size_t l = 0; l < m.layer_weights().size(); ++l) {
    begin_block("layer_weights[" + std::to_string(l) + "]");
    for (Eigen::Index r = 0; r < m.layer_weights()[l].rows(); ++r)
      for (Eigen::Index c = 0; c < m.layer_weights()[l].cols(); ++c)
        probe(m.layer_weights()[l](r, c), grads.layer_weights[l](r, c));
  }
  begin_block("mlp_w1");
  for (Eigen::Index r = 0; r < m.mlp_w1().rows(); ++r)
    for (Eigen::Index c = 0; c < m.mlp_w1().cols(); ++c)
      probe(m.mlp_w1()(r, c), grads.mlp_w1(r, c));
  begin_block("mlp_b1");
  for (Eigen::Index r = 0; r < m.mlp_b1().size(); ++r) probe(m.mlp_b1()(r), grads.mlp_b1(r));
  begin_block("mlp_w2");
  for (Eigen::Index r = 0; r < m.mlp_w2().size(); ++r) probe(m.mlp_w2()(r), grads.mlp_w2(r));
  begin_block("mlp_b2");
  probe(m.mlp_b2(), grads.mlp_b2);
  return blocks;
}

}  // namespace gnn_check

#endif  // LINKBLEND_TEST_GNN_CHECK_HPP
