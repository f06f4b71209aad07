#ifndef LINKBLEND_COMMANDS_HPP
#define LINKBLEND_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "linkblend/ensemble.hpp"
#include "linkblend/predictors.hpp"
#include "linkblend/tpe.hpp"

namespace linkblend {

// Shared knobs, fanned out to the modules. Defaults here are the toolkit
// defaults; the CLI layers config-file values and flags on top.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t k = 20;
  Normalization normalize = Normalization::rank;
  ObjectiveMode objective_mode = ObjectiveMode::hits;

  std::size_t trials = 200;
  std::size_t n_startup = 0;  // 0 = derived (K + 11)
  std::size_t gamma_cap = 25;
  double gamma_frac = 0.25;
  std::size_t n_ei_candidates = 24;
  double prior_weight = 1.0;

  std::size_t epochs = 200;
  double learning_rate = 0.05;
  std::size_t neg_per_pos = 3;
  double margin = 1.0;
  long embedding_dim = 32;
  long gnn_layers = 2;
  std::string aggregation = "gcn_symmetric";

  TpeConfig tpe() const;
  TrainConfig gnn_train() const;
  GnnConfig gnn() const;
};

struct SplitArgs {
  std::string edge_file;
  std::string out_dir;
  double valid_frac = 0.1;
  double test_frac = 0.1;
  std::size_t n_valid_neg = 500;
  std::size_t n_test_neg = 500;
  std::uint64_t seed = 0;
};

struct ScoreArgs {
  std::string split_dir;
  std::string out_dir;  // empty = split_dir
  std::vector<std::string> predictors = {"common_neighbors", "adamic_adar", "gnn"};
  RunConfig cfg;
};

struct OptimizeArgs {
  std::string valid_scores_file;
  std::string out_dir;
  RunConfig cfg;
};

struct EvaluateArgs {
  std::string scores_file;
  std::string weights_file;
  std::string fit_scores_file;  // optional: fit minmax/zscore stats here
  RunConfig cfg;
};

struct AblateArgs {
  std::string valid_scores_file;
  std::string test_scores_file;
  RunConfig cfg;
};

struct DemoArgs {
  std::string out_dir;
  std::vector<NodeId> block_sizes = {60, 60};
  double p_in = 0.3;
  double p_out = 0.03;
  double valid_frac = 0.1;
  double test_frac = 0.1;
  std::size_t n_valid_neg = 300;
  std::size_t n_test_neg = 300;
  RunConfig cfg;
};

// Each command throws on failure; the CLI front end maps exceptions to
// "error: ..." on stderr and a nonzero exit code.
void cmd_split(const SplitArgs& args, std::ostream& out);
void cmd_score(const ScoreArgs& args, std::ostream& out);
void cmd_optimize(const OptimizeArgs& args, std::ostream& out);
void cmd_evaluate(const EvaluateArgs& args, std::ostream& out);
void cmd_ablate(const AblateArgs& args, std::ostream& out);
void cmd_demo(const DemoArgs& args, std::ostream& out);

// A named, trained set of base predictors. Heuristics are stateless; a
// requested "gnn" column is trained once on the train graph at creation and
// then scores any pair list.
class PredictorSet {
 public:
  static PredictorSet create(const Graph& train_graph, std::span<const std::string> names,
                             const RunConfig& cfg);

  ScoreTable score(const Graph& train_graph, std::span<const NodePair> positives,
                   std::span<const NodePair> negatives) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::variant<Heuristic, GnnScorer>> impls_;
};

OptimizeResult optimize_weights(const ScoreTable& valid_table, const RunConfig& cfg);

}  // namespace linkblend

#endif  // LINKBLEND_COMMANDS_HPP
