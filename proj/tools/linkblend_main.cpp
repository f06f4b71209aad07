#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "linkblend/commands.hpp"
#include "linkblend/errors.hpp"

namespace {

struct ConfigStrings {
  std::string normalize = "rank";
  std::string objective = "hits";
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Applies key=value lines from --config to the subcommand's options. Keys
// are the long flag names without dashes; values set on the command line
// win, so the layering is defaults < config file < flags. Unknown keys are
// an error.
void apply_config_file(CLI::App& cmd, const std::string& config_path) {
  if (config_path.empty()) return;
  std::ifstream in(config_path);
  if (!in) throw linkblend::IoError("cannot open config file '" + config_path + "'");

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw linkblend::ParseError(config_path + " line " + std::to_string(line_no) +
                                  ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    auto* opt = cmd.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config")
      throw linkblend::ParseError(config_path + " line " + std::to_string(line_no) +
                                  ": unknown config key '" + key + "'");
    if (opt->count() > 0) continue;  // command line overrides the file
    opt->add_result(value);
    opt->run_callback();
  }
}

void add_run_options(CLI::App& cmd, linkblend::RunConfig& cfg, ConfigStrings& strings) {
  cmd.add_option("--seed", cfg.seed, "master seed; all randomness derives from it");
  cmd.add_option("--k", cfg.k, "K for Hits@K")->check(CLI::PositiveNumber);
  cmd.add_option("--normalize", strings.normalize, "score-column normalization")
      ->check(CLI::IsMember({"none", "minmax", "zscore", "rank"}));
  cmd.add_option("--objective", strings.objective, "weight-search objective")
      ->check(CLI::IsMember({"hits", "pos-mean"}));

  cmd.add_option("--trials", cfg.trials, "optimizer trial count");
  cmd.add_option("--startup", cfg.n_startup, "startup trials before density-guided search");
  cmd.add_option("--gamma-cap", cfg.gamma_cap, "max size of the good set");
  cmd.add_option("--gamma-frac", cfg.gamma_frac, "fraction of history in the good set");
  cmd.add_option("--ei-candidates", cfg.n_ei_candidates, "candidate draws per dimension");
  cmd.add_option("--prior-weight", cfg.prior_weight, "weight of the uniform prior component");

  cmd.add_option("--epochs", cfg.epochs, "gnn training epochs");
  cmd.add_option("--learning-rate", cfg.learning_rate, "gnn learning rate");
  cmd.add_option("--neg-per-pos", cfg.neg_per_pos, "negatives sampled per positive");
  cmd.add_option("--margin", cfg.margin, "ranking margin of the surrogate loss");
  cmd.add_option("--dim", cfg.embedding_dim, "gnn embedding dimension");
  cmd.add_option("--layers", cfg.gnn_layers, "gnn message-passing rounds");
  cmd.add_option("--aggregation", cfg.aggregation, "neighborhood operator")
      ->check(CLI::IsMember({"gcn_symmetric", "mean"}));
}

void finalize(linkblend::RunConfig& cfg, const ConfigStrings& strings) {
  cfg.normalize = linkblend::parse_normalization(strings.normalize);
  cfg.objective_mode = linkblend::parse_objective_mode(strings.objective);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"link-prediction ensemble toolkit: split graphs, score pairs with base "
               "predictors, search blend weights, evaluate Hits@K"};
  app.require_subcommand(1);

  // One active subcommand at a time, so a single config path suffices.
  std::string config_path;
  const auto with_config = [&config_path](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file with key=value lines");
    return cmd;
  };

  linkblend::SplitArgs split_args;
  auto* split =
      with_config(app.add_subcommand("split", "split an edge list into train/valid/test files"));
  split->add_option("edge_file", split_args.edge_file, "input edge list")->required();
  split->add_option("--out", split_args.out_dir, "output directory")->required();
  split->add_option("--valid-frac", split_args.valid_frac, "validation fraction of edges");
  split->add_option("--test-frac", split_args.test_frac, "test fraction of edges");
  split->add_option("--valid-neg", split_args.n_valid_neg, "validation negatives to sample");
  split->add_option("--test-neg", split_args.n_test_neg, "test negatives to sample");
  split->add_option("--seed", split_args.seed, "master seed");

  linkblend::ScoreArgs score_args;
  ConfigStrings score_strings;
  auto* score = with_config(
      app.add_subcommand("score", "train/score base predictors over a split"));
  score->add_option("split_dir", score_args.split_dir, "directory produced by split")->required();
  score->add_option("--out", score_args.out_dir, "output directory (default: split dir)");
  score->add_option("--predictors", score_args.predictors,
                    "predictor columns (heuristic names and/or gnn)")
      ->delimiter(',');
  add_run_options(*score, score_args.cfg, score_strings);

  linkblend::OptimizeArgs opt_args;
  ConfigStrings opt_strings;
  auto* optimize = with_config(
      app.add_subcommand("optimize", "search ensemble weights on a score table"));
  optimize->add_option("valid_scores", opt_args.valid_scores_file, "validation score table")
      ->required();
  optimize->add_option("--out", opt_args.out_dir, "output directory")->required();
  add_run_options(*optimize, opt_args.cfg, opt_strings);

  linkblend::EvaluateArgs eval_args;
  ConfigStrings eval_strings;
  auto* evaluate = with_config(
      app.add_subcommand("evaluate", "metrics of a weighted blend on a score table"));
  evaluate->add_option("scores", eval_args.scores_file, "score table to evaluate")->required();
  evaluate->add_option("--weights", eval_args.weights_file, "weights.tsv file")->required();
  evaluate->add_option("--fit", eval_args.fit_scores_file,
                       "fit minmax/zscore statistics on this table instead");
  add_run_options(*evaluate, eval_args.cfg, eval_strings);

  linkblend::AblateArgs ablate_args;
  ConfigStrings ablate_strings;
  auto* ablate = with_config(
      app.add_subcommand("ablate", "uniform averaging vs optimized weights"));
  ablate->add_option("valid_scores", ablate_args.valid_scores_file, "validation score table")
      ->required();
  ablate->add_option("test_scores", ablate_args.test_scores_file, "test score table")->required();
  add_run_options(*ablate, ablate_args.cfg, ablate_strings);

  linkblend::DemoArgs demo_args;
  ConfigStrings demo_strings;
  auto* demo = with_config(
      app.add_subcommand("demo", "end-to-end walkthrough on a synthetic graph"));
  demo->add_option("--out", demo_args.out_dir, "output directory")->required();
  demo->add_option("--blocks", demo_args.block_sizes, "block sizes of the synthetic graph")
      ->delimiter(',');
  demo->add_option("--p-in", demo_args.p_in, "within-block edge probability");
  demo->add_option("--p-out", demo_args.p_out, "cross-block edge probability");
  demo->add_option("--valid-frac", demo_args.valid_frac, "validation fraction of edges");
  demo->add_option("--test-frac", demo_args.test_frac, "test fraction of edges");
  demo->add_option("--valid-neg", demo_args.n_valid_neg, "validation negatives to sample");
  demo->add_option("--test-neg", demo_args.n_test_neg, "test negatives to sample");
  add_run_options(*demo, demo_args.cfg, demo_strings);

  CLI11_PARSE(app, argc, argv);

  try {
    for (CLI::App* cmd : {split, score, optimize, evaluate, ablate, demo})
      if (cmd->parsed()) apply_config_file(*cmd, config_path);

    if (split->parsed()) {
      linkblend::cmd_split(split_args, std::cout);
    } else if (score->parsed()) {
      finalize(score_args.cfg, score_strings);
      linkblend::cmd_score(score_args, std::cout);
    } else if (optimize->parsed()) {
      finalize(opt_args.cfg, opt_strings);
      linkblend::cmd_optimize(opt_args, std::cout);
    } else if (evaluate->parsed()) {
      finalize(eval_args.cfg, eval_strings);
      linkblend::cmd_evaluate(eval_args, std::cout);
    } else if (ablate->parsed()) {
      finalize(ablate_args.cfg, ablate_strings);
      linkblend::cmd_ablate(ablate_args, std::cout);
    } else if (demo->parsed()) {
      finalize(demo_args.cfg, demo_strings);
      linkblend::cmd_demo(demo_args, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
