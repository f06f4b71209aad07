#ifndef LINKBLEND_PREDICTORS_HPP
#define LINKBLEND_PREDICTORS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linkblend/graph.hpp"

namespace linkblend {

enum class Heuristic { common_neighbors, adamic_adar, resource_allocation, jaccard };

Heuristic parse_heuristic(const std::string& name);
std::string to_string(Heuristic kind);

// Closed-form neighborhood scores computed on the given (train) graph.
// adamic_adar skips common neighbors of degree <= 1; jaccard is 0 on an
// empty union.
double heuristic_score(const Graph& g, NodePair pair, Heuristic kind);

// Normalized message-passing operator: symmetric D^-1/2 (A+I) D^-1/2 or
// row-mean over neighbors plus self.
enum class Aggregation { gcn_symmetric, mean };

Aggregation parse_aggregation(const std::string& name);

struct GnnConfig {
  Eigen::Index embedding_dim = 32;
  Eigen::Index num_layers = 2;
  Aggregation aggregation = Aggregation::gcn_symmetric;
};

struct TrainConfig {
  std::size_t epochs = 200;
  double learning_rate = 0.05;
  std::size_t neg_per_pos = 3;
  std::uint64_t seed = 0;
  double margin = 1.0;
};

// Gradient of the batch loss w.r.t. every trainable block, same shapes as
// the parameters themselves.
struct GnnGradients {
  Eigen::MatrixXd embeddings;
  std::vector<Eigen::MatrixXd> layer_weights;
  Eigen::MatrixXd mlp_w1;
  Eigen::VectorXd mlp_b1;
  Eigen::VectorXd mlp_w2;
  double mlp_b2 = 0.0;
};

// Trainable link scorer: free node embeddings pushed through num_layers
// rounds of normalized neighborhood aggregation (ReLU between rounds), then
// a two-layer MLP on the elementwise product of the endpoint
// representations. The final activation is the logistic function, applied
// only in forward(); training and ranking use the pre-logistic score.
class GnnScorer {
 public:
  // Embeddings and weight matrices drawn uniform in [-1/sqrt(d), 1/sqrt(d)]
  // from the seeded generator; biases start at zero.
  static GnnScorer init(NodeId node_count, const GnnConfig& config, std::uint64_t seed);

  // Node representations after all message-passing rounds (one row per node).
  Eigen::MatrixXd node_representations(const Graph& g) const;

  // Pre-logistic score s for one pair, given precomputed representations.
  double pair_score(const Eigen::MatrixXd& reps, NodePair pair) const;

  // Probability sigma(s); symmetric in the pair by construction.
  double forward(const Graph& g, NodePair pair) const;

  // Mean of (margin - (s_pos - s_neg))^2 over aligned (pos, neg) pair lists.
  double batch_loss(const Graph& g, std::span<const NodePair> pos,
                    std::span<const NodePair> neg, double margin) const;
  std::pair<double, GnnGradients> batch_loss_and_gradients(const Graph& g,
                                                           std::span<const NodePair> pos,
                                                           std::span<const NodePair> neg,
                                                           double margin) const;

  // Full-batch gradient descent; negatives are resampled uniformly from the
  // non-edges every epoch, cfg.neg_per_pos per positive. Returns the
  // per-epoch loss trace.
  std::vector<double> train(const Graph& g, std::span<const NodePair> train_pos,
                            const TrainConfig& cfg);

  NodeId node_count() const { return node_count_; }
  Eigen::Index embedding_dim() const { return embeddings_.cols(); }
  Eigen::Index num_layers() const { return static_cast<Eigen::Index>(layer_weights_.size()); }
  Aggregation aggregation() const { return aggregation_; }

  Eigen::MatrixXd& embeddings() { return embeddings_; }
  std::vector<Eigen::MatrixXd>& layer_weights() { return layer_weights_; }
  Eigen::MatrixXd& mlp_w1() { return mlp_w1_; }
  Eigen::VectorXd& mlp_b1() { return mlp_b1_; }
  Eigen::VectorXd& mlp_w2() { return mlp_w2_; }
  double& mlp_b2() { return mlp_b2_; }

 private:
  GnnScorer() = default;
  void check_graph(const Graph& g) const;

  NodeId node_count_ = 0;
  Aggregation aggregation_ = Aggregation::gcn_symmetric;
  Eigen::MatrixXd embeddings_;                  // N x d
  std::vector<Eigen::MatrixXd> layer_weights_;  // per layer, d x d
  Eigen::MatrixXd mlp_w1_;                      // d x d
  Eigen::VectorXd mlp_b1_;                      // d
  Eigen::VectorXd mlp_w2_;                      // d
  double mlp_b2_ = 0.0;
};

// Scores aligned index-for-index with `pairs`, computed against g (the train
// graph; callers must not pass a graph containing evaluation edges).
std::vector<double> score_column(const Graph& g, Heuristic kind, std::span<const NodePair> pairs);
std::vector<double> score_column(const Graph& g, const GnnScorer& scorer,
                                 std::span<const NodePair> pairs);

}  // namespace linkblend

#endif  // LINKBLEND_PREDICTORS_HPP
