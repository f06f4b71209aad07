#include "linkblend/predictors.hpp"

#include <algorithm>
#include <cmath>

#include "linkblend/errors.hpp"
#include "linkblend/rng.hpp"

namespace linkblend {

Heuristic parse_heuristic(const std::string& name) {
  if (name == "common_neighbors") return Heuristic::common_neighbors;
  if (name == "adamic_adar") return Heuristic::adamic_adar;
  if (name == "resource_allocation") return Heuristic::resource_allocation;
  if (name == "jaccard") return Heuristic::jaccard;
  throw ArgumentError("unknown heuristic '" + name +
                      "' (common_neighbors|adamic_adar|resource_allocation|jaccard)");
}

std::string to_string(Heuristic kind) {
  switch (kind) {
    case Heuristic::common_neighbors: return "common_neighbors";
    case Heuristic::adamic_adar: return "adamic_adar";
    case Heuristic::resource_allocation: return "resource_allocation";
    case Heuristic::jaccard: return "jaccard";
  }
  return "?";
}

Aggregation parse_aggregation(const std::string& name) {
  if (name == "gcn_symmetric") return Aggregation::gcn_symmetric;
  if (name == "mean") return Aggregation::mean;
  throw ArgumentError("unknown aggregation '" + name + "' (gcn_symmetric|mean)");
}

double heuristic_score(const Graph& g, NodePair pair, Heuristic kind) {
  const auto ni = g.neighbors(pair.first);
  const auto nj = g.neighbors(pair.second);

  double acc = 0.0;
  std::size_t common = 0;
  auto it = ni.begin();
  auto jt = nj.begin();
  while (it != ni.end() && jt != nj.end()) {
    if (*it < *jt) {
      ++it;
    } else if (*jt < *it) {
      ++jt;
    } else {
      const auto deg = static_cast<double>(g.degree(*it));
      ++common;
      switch (kind) {
        case Heuristic::adamic_adar:
          if (deg > 1.0) acc += 1.0 / std::log(deg);
          break;
        case Heuristic::resource_allocation:
          acc += 1.0 / deg;
          break;
        default:
          break;
      }
      ++it;
      ++jt;
    }
  }

  switch (kind) {
    case Heuristic::common_neighbors:
      return static_cast<double>(common);
    case Heuristic::adamic_adar:
    case Heuristic::resource_allocation:
      return acc;
    case Heuristic::jaccard: {
      const std::size_t uni = ni.size() + nj.size() - common;
      return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
    }
  }
  throw ArgumentError("unknown heuristic kind");
}

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// out = A_gnn * H, iterating adjacency lists; self-loop weight included.
Eigen::MatrixXd propagate(const Graph& g, Aggregation agg, const Eigen::MatrixXd& h) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, h.cols());
  for (Eigen::Index u = 0; u < n; ++u) {
    const auto uid = static_cast<NodeId>(u);
    const double du = static_cast<double>(g.degree(uid)) + 1.0;
    if (agg == Aggregation::mean) {
      out.row(u) = h.row(u) / du;
      for (NodeId v : g.neighbors(uid)) out.row(u) += h.row(v) / du;
    } else {
      out.row(u) = h.row(u) / du;
      for (NodeId v : g.neighbors(uid)) {
        const double dv = static_cast<double>(g.degree(v)) + 1.0;
        out.row(u) += h.row(v) / std::sqrt(du * dv);
      }
    }
  }
  return out;
}

// out = A_gnn^T * G. The symmetric operator is its own adjoint; the mean
// operator is not, so scatter row u's normalization onto its sources.
Eigen::MatrixXd propagate_adjoint(const Graph& g, Aggregation agg, const Eigen::MatrixXd& grad) {
  if (agg == Aggregation::gcn_symmetric) return propagate(g, agg, grad);
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, grad.cols());
  for (Eigen::Index u = 0; u < n; ++u) {
    const auto uid = static_cast<NodeId>(u);
    const double du = static_cast<double>(g.degree(uid)) + 1.0;
    out.row(u) += grad.row(u) / du;
    for (NodeId v : g.neighbors(uid)) out.row(v) += grad.row(u) / du;
  }
  return out;
}

}  // namespace

GnnScorer GnnScorer::init(NodeId node_count, const GnnConfig& config, std::uint64_t seed) {
  if (node_count == 0) throw ArgumentError("gnn: graph must have at least one node");
  if (config.embedding_dim < 1) throw ArgumentError("gnn: embedding_dim must be >= 1");
  if (config.num_layers < 1) throw ArgumentError("gnn: num_layers must be >= 1");

  const Eigen::Index d = config.embedding_dim;
  const double bound = 1.0 / std::sqrt(static_cast<double>(d));
  Pcg32 rng(seed, rng_stream::kGnnInit);
  auto draw = [&] { return (2.0 * rng.next_double() - 1.0) * bound; };

  GnnScorer m;
  m.node_count_ = node_count;
  m.aggregation_ = config.aggregation;
  m.embeddings_.resize(static_cast<Eigen::Index>(node_count), d);
  for (Eigen::Index r = 0; r < m.embeddings_.rows(); ++r)
    for (Eigen::Index c = 0; c < d; ++c) m.embeddings_(r, c) = draw();
  m.layer_weights_.resize(config.num_layers);
  for (auto& w : m.layer_weights_) {
    w.resize(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) w(r, c) = draw();
  }
  m.mlp_w1_.resize(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m.mlp_w1_(r, c) = draw();
  // b1 is drawn too: an exactly-zero bias parks pre-activations of all-zero
  // pair products on the rectifier kink.
  m.mlp_b1_.resize(d);
  for (Eigen::Index r = 0; r < d; ++r) m.mlp_b1_(r) = draw();
  m.mlp_w2_.resize(d);
  for (Eigen::Index r = 0; r < d; ++r) m.mlp_w2_(r) = draw();
  m.mlp_b2_ = 0.0;
  return m;
}

void GnnScorer::check_graph(const Graph& g) const {
  if (g.node_count() != node_count_)
    throw ArgumentError("gnn: model was initialized for " + std::to_string(node_count_) +
                        " nodes, graph has " + std::to_string(g.node_count()));
}

Eigen::MatrixXd GnnScorer::node_representations(const Graph& g) const {
  check_graph(g);
  Eigen::MatrixXd h = embeddings_;
  for (const auto& w : layer_weights_)
    h = (propagate(g, aggregation_, h) * w).cwiseMax(0.0);
  return h;
}

double GnnScorer::pair_score(const Eigen::MatrixXd& reps, NodePair pair) const {
  if (pair.first >= node_count_ || pair.second >= node_count_)
    throw ArgumentError("gnn: pair endpoint out of range");
  const Eigen::VectorXd p =
      reps.row(pair.first).cwiseProduct(reps.row(pair.second)).transpose();
  const Eigen::VectorXd z = (mlp_w1_ * p + mlp_b1_).cwiseMax(0.0);
  return mlp_w2_.dot(z) + mlp_b2_;
}

double GnnScorer::forward(const Graph& g, NodePair pair) const {
  return logistic(pair_score(node_representations(g), pair));
}

double GnnScorer::batch_loss(const Graph& g, std::span<const NodePair> pos,
                             std::span<const NodePair> neg, double margin) const {
  if (pos.size() != neg.size() || pos.empty())
    throw ArgumentError("gnn: batch needs equal, non-empty pos/neg pair lists");
  const Eigen::MatrixXd reps = node_representations(g);
  double loss = 0.0;
  for (std::size_t t = 0; t < pos.size(); ++t) {
    const double diff = margin - (pair_score(reps, pos[t]) - pair_score(reps, neg[t]));
    loss += diff * diff;
  }
  return loss / static_cast<double>(pos.size());
}

std::pair<double, GnnGradients> GnnScorer::batch_loss_and_gradients(
    const Graph& g, std::span<const NodePair> pos, std::span<const NodePair> neg,
    double margin) const {
  if (pos.size() != neg.size() || pos.empty())
    throw ArgumentError("gnn: batch needs equal, non-empty pos/neg pair lists");
  check_graph(g);

  const auto n = static_cast<Eigen::Index>(node_count_);
  const Eigen::Index d = embedding_dim();
  const auto num_layers = layer_weights_.size();

  // Forward, keeping what backward needs: per layer the propagated input
  // M_l = A H_{l-1} (for the weight gradient) and the pre-activation mask.
  std::vector<Eigen::MatrixXd> h(num_layers + 1);
  std::vector<Eigen::MatrixXd> propagated(num_layers);
  std::vector<Eigen::MatrixXd> pre_act(num_layers);
  h[0] = embeddings_;
  for (std::size_t l = 0; l < num_layers; ++l) {
    propagated[l] = propagate(g, aggregation_, h[l]);
    pre_act[l] = propagated[l] * layer_weights_[l];
    h[l + 1] = pre_act[l].cwiseMax(0.0);
  }
  const Eigen::MatrixXd& reps = h[num_layers];

  const auto m_terms = static_cast<double>(pos.size());
  double loss = 0.0;
  // Per term: dL/ds_pos = -2 diff / M and dL/ds_neg = +2 diff / M.
  std::vector<double> term_grad(pos.size());
  for (std::size_t t = 0; t < pos.size(); ++t) {
    const double diff = margin - (pair_score(reps, pos[t]) - pair_score(reps, neg[t]));
    loss += diff * diff;
    term_grad[t] = 2.0 * diff / m_terms;
  }
  loss /= m_terms;

  GnnGradients grads;
  grads.embeddings = Eigen::MatrixXd::Zero(n, d);
  grads.layer_weights.assign(num_layers, Eigen::MatrixXd::Zero(d, d));
  grads.mlp_w1 = Eigen::MatrixXd::Zero(d, d);
  grads.mlp_b1 = Eigen::VectorXd::Zero(d);
  grads.mlp_w2 = Eigen::VectorXd::Zero(d);
  grads.mlp_b2 = 0.0;

  Eigen::MatrixXd grad_reps = Eigen::MatrixXd::Zero(n, d);
  auto backprop_pair = [&](NodePair pair, double gs) {
    const Eigen::VectorXd hi = reps.row(pair.first).transpose();
    const Eigen::VectorXd hj = reps.row(pair.second).transpose();
    const Eigen::VectorXd p = hi.cwiseProduct(hj);
    const Eigen::VectorXd z_pre = mlp_w1_ * p + mlp_b1_;
    const Eigen::VectorXd z = z_pre.cwiseMax(0.0);

    grads.mlp_w2 += gs * z;
    grads.mlp_b2 += gs;
    const Eigen::VectorXd dz_pre =
        (gs * mlp_w2_.array() * (z_pre.array() > 0.0).cast<double>()).matrix();
    grads.mlp_w1 += dz_pre * p.transpose();
    grads.mlp_b1 += dz_pre;
    const Eigen::VectorXd dp = mlp_w1_.transpose() * dz_pre;
    grad_reps.row(pair.first) += dp.cwiseProduct(hj).transpose();
    grad_reps.row(pair.second) += dp.cwiseProduct(hi).transpose();
  };
  for (std::size_t t = 0; t < pos.size(); ++t) {
    backprop_pair(pos[t], -term_grad[t]);
    backprop_pair(neg[t], term_grad[t]);
  }

  // Through the message-passing stack.
  Eigen::MatrixXd grad_h = std::move(grad_reps);
  for (std::size_t l = num_layers; l-- > 0;) {
    const Eigen::MatrixXd grad_pre =
        (grad_h.array() * (pre_act[l].array() > 0.0).cast<double>()).matrix();
    grads.layer_weights[l] = propagated[l].transpose() * grad_pre;
    grad_h = propagate_adjoint(g, aggregation_,
                               Eigen::MatrixXd(grad_pre * layer_weights_[l].transpose()));
  }
  grads.embeddings = std::move(grad_h);

  return {loss, std::move(grads)};
}

std::vector<double> GnnScorer::train(const Graph& g, std::span<const NodePair> train_pos,
                                     const TrainConfig& cfg) {
  check_graph(g);
  if (train_pos.empty()) throw ArgumentError("gnn: train_pos must be non-empty");
  if (!(cfg.learning_rate >= 0.0)) throw ArgumentError("gnn: learning_rate must be >= 0");
  if (cfg.neg_per_pos < 1) throw ArgumentError("gnn: neg_per_pos must be >= 1");
  if (g.non_edge_count() == 0)
    throw TrainingError("gnn: graph has no non-edges to sample negatives from");

  Pcg32 rng(cfg.seed, rng_stream::kGnnNegatives);
  const NodeId n = g.node_count();
  auto sample_negative = [&] {
    for (;;) {
      const auto u = static_cast<NodeId>(rng.next_below(n));
      const auto v = static_cast<NodeId>(rng.next_below(n));
      if (u == v || g.has_edge(u, v)) continue;
      return NodePair{u, v};
    }
  };

  std::vector<double> trace;
  trace.reserve(cfg.epochs);
  std::vector<NodePair> batch_pos;
  std::vector<NodePair> batch_neg;
  batch_pos.reserve(train_pos.size() * cfg.neg_per_pos);
  batch_neg.reserve(train_pos.size() * cfg.neg_per_pos);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    batch_pos.clear();
    batch_neg.clear();
    for (const auto& e : train_pos) {
      for (std::size_t r = 0; r < cfg.neg_per_pos; ++r) {
        batch_pos.push_back(e);
        batch_neg.push_back(sample_negative());
      }
    }

    auto [loss, grads] = batch_loss_and_gradients(g, batch_pos, batch_neg, cfg.margin);
    if (!std::isfinite(loss))
      throw TrainingError("gnn: non-finite loss at epoch " + std::to_string(epoch));
    trace.push_back(loss);

    const double lr = cfg.learning_rate;
    embeddings_ -= lr * grads.embeddings;
    for (std::size_t l = 0; l < layer_weights_.size(); ++l)
      layer_weights_[l] -= lr * grads.layer_weights[l];
    mlp_w1_ -= lr * grads.mlp_w1;
    mlp_b1_ -= lr * grads.mlp_b1;
    mlp_w2_ -= lr * grads.mlp_w2;
    mlp_b2_ -= lr * grads.mlp_b2;
  }
  return trace;
}

std::vector<double> score_column(const Graph& g, Heuristic kind,
                                 std::span<const NodePair> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(heuristic_score(g, p, kind));
  return out;
}

std::vector<double> score_column(const Graph& g, const GnnScorer& scorer,
                                 std::span<const NodePair> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  if (pairs.empty()) return out;
  const Eigen::MatrixXd reps = scorer.node_representations(g);
  for (const auto& p : pairs) out.push_back(1.0 / (1.0 + std::exp(-scorer.pair_score(reps, p))));
  return out;
}

}  // namespace linkblend
