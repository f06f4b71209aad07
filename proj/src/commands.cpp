#include "linkblend/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "linkblend/errors.hpp"
#include "linkblend/format.hpp"
#include "linkblend/metrics.hpp"
#include "linkblend/table_io.hpp"

namespace fs = std::filesystem;

namespace linkblend {

TpeConfig RunConfig::tpe() const {
  TpeConfig t;
  t.n_trials = trials;
  t.n_startup = n_startup;
  t.gamma_cap = gamma_cap;
  t.gamma_frac = gamma_frac;
  t.n_ei_candidates = n_ei_candidates;
  t.prior_weight = prior_weight;
  t.seed = seed;
  return t;
}

TrainConfig RunConfig::gnn_train() const {
  TrainConfig t;
  t.epochs = epochs;
  t.learning_rate = learning_rate;
  t.neg_per_pos = neg_per_pos;
  t.seed = seed;
  t.margin = margin;
  return t;
}

GnnConfig RunConfig::gnn() const {
  GnnConfig g;
  g.embedding_dim = embedding_dim;
  g.num_layers = gnn_layers;
  g.aggregation = parse_aggregation(aggregation);
  return g;
}

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void write_pairs_file(const fs::path& path, NodeId node_count, std::span<const NodePair> pairs) {
  auto out = open_output(path);
  out << "#N=" << node_count << "\n";
  write_pair_list(out, pairs);
}

Graph load_graph_file(const fs::path& path) {
  auto in = open_input(path);
  try {
    return load_edge_list(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<NodePair> load_pairs_file(const fs::path& path) {
  auto in = open_input(path);
  try {
    return load_pair_list(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

ScoreTable load_table_file(const fs::path& path) {
  auto in = open_input(path);
  try {
    return read_score_table(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// hits_at_k + auc of one score column against the labels.
std::pair<double, double> column_metrics(std::span<const double> scores,
                                         std::span<const int> labels, std::size_t k) {
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < scores.size(); ++i)
    (labels[i] == 1 ? pos : neg).push_back(scores[i]);
  return {hits_at_k(pos, neg, k).value, auc(pos, neg).value};
}

}  // namespace

PredictorSet PredictorSet::create(const Graph& train_graph,
                                  std::span<const std::string> names, const RunConfig& cfg) {
  if (names.empty()) throw ArgumentError("at least one predictor is required");
  PredictorSet set;
  set.names_.assign(names.begin(), names.end());
  for (const auto& name : names) {
    if (name == "gnn") {
      auto scorer = GnnScorer::init(train_graph.node_count(), cfg.gnn(), cfg.seed);
      scorer.train(train_graph, train_graph.edges(), cfg.gnn_train());
      set.impls_.emplace_back(std::move(scorer));
    } else {
      try {
        set.impls_.emplace_back(parse_heuristic(name));
      } catch (const ArgumentError&) {
        throw ArgumentError("unknown predictor '" + name +
                            "' (common_neighbors|adamic_adar|resource_allocation|jaccard|gnn)");
      }
    }
  }
  return set;
}

ScoreTable PredictorSet::score(const Graph& train_graph, std::span<const NodePair> positives,
                               std::span<const NodePair> negatives) const {
  ScoreTable table;
  table.model_names = names_;
  table.pairs.assign(positives.begin(), positives.end());
  table.pairs.insert(table.pairs.end(), negatives.begin(), negatives.end());
  table.labels.assign(positives.size(), 1);
  table.labels.insert(table.labels.end(), negatives.size(), 0);
  for (const auto& impl : impls_) {
    if (const auto* kind = std::get_if<Heuristic>(&impl))
      table.columns.push_back(score_column(train_graph, *kind, table.pairs));
    else
      table.columns.push_back(score_column(train_graph, std::get<GnnScorer>(impl), table.pairs));
  }
  table.validate();
  return table;
}

OptimizeResult optimize_weights(const ScoreTable& valid_table, const RunConfig& cfg) {
  const ScoreTable normalized =
      FittedNormalizer::fit(valid_table, cfg.normalize).apply(valid_table);
  const auto objective_fn = [&](std::span<const double> raw) {
    return objective(normalized, project_to_simplex(raw), cfg.objective_mode, cfg.k);
  };
  return optimize(objective_fn, valid_table.n_models(), cfg.tpe());
}

void cmd_split(const SplitArgs& args, std::ostream& out) {
  const Graph g = load_graph_file(args.edge_file);
  const LinkSplit split = make_split(g, args.valid_frac, args.test_frac, args.n_valid_neg,
                                     args.n_test_neg, args.seed);
  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  write_pairs_file(dir / "train_pos.tsv", g.node_count(), split.train_pos);
  write_pairs_file(dir / "valid_pos.tsv", g.node_count(), split.valid_pos);
  write_pairs_file(dir / "valid_neg.tsv", g.node_count(), split.valid_neg);
  write_pairs_file(dir / "test_pos.tsv", g.node_count(), split.test_pos);
  write_pairs_file(dir / "test_neg.tsv", g.node_count(), split.test_neg);
  out << "split: " << g.edge_count() << " edges -> " << split.train_pos.size() << " train / "
      << split.valid_pos.size() << " valid / " << split.test_pos.size() << " test positives, "
      << split.valid_neg.size() << "+" << split.test_neg.size() << " negatives -> "
      << dir.string() << "\n";
}

void cmd_score(const ScoreArgs& args, std::ostream& out) {
  const fs::path split_dir(args.split_dir);
  const fs::path out_dir(args.out_dir.empty() ? args.split_dir : args.out_dir);

  const Graph train_graph = load_graph_file(split_dir / "train_pos.tsv");
  const auto valid_pos = load_pairs_file(split_dir / "valid_pos.tsv");
  const auto valid_neg = load_pairs_file(split_dir / "valid_neg.tsv");
  const auto test_pos = load_pairs_file(split_dir / "test_pos.tsv");
  const auto test_neg = load_pairs_file(split_dir / "test_neg.tsv");

  const PredictorSet predictors = PredictorSet::create(train_graph, args.predictors, args.cfg);
  const ScoreTable valid_table = predictors.score(train_graph, valid_pos, valid_neg);
  const ScoreTable test_table = predictors.score(train_graph, test_pos, test_neg);

  fs::create_directories(out_dir);
  {
    auto f = open_output(out_dir / "valid_scores.tsv");
    write_score_table(f, valid_table);
  }
  {
    auto f = open_output(out_dir / "test_scores.tsv");
    write_score_table(f, test_table);
  }
  out << "score: " << args.predictors.size() << " columns over " << valid_table.n_rows()
      << " valid and " << test_table.n_rows() << " test rows -> " << out_dir.string() << "\n";
}

void cmd_optimize(const OptimizeArgs& args, std::ostream& out) {
  const ScoreTable valid_table = load_table_file(args.valid_scores_file);
  const OptimizeResult result = optimize_weights(valid_table, args.cfg);

  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  {
    auto f = open_output(dir / "weights.tsv");
    write_weights_tsv(f, {valid_table.model_names, result.best.weights});
  }
  {
    auto f = open_output(dir / "trials.tsv");
    write_trials_tsv(f, result.history);
  }

  out << "optimize: " << result.history.size() << " trials, best validation "
      << to_string(args.cfg.objective_mode);
  if (args.cfg.objective_mode == ObjectiveMode::hits) out << "@" << args.cfg.k;
  out << " = " << format_double(result.best.value) << "\n";
  for (std::size_t m = 0; m < valid_table.n_models(); ++m)
    out << "  " << valid_table.model_names[m] << "\t"
        << format_double(result.best.weights.weights[m]) << "\n";
}

namespace {

// Reorders the weights file entries to the table's column order; the name
// sets must match exactly.
WeightVector align_weights(const ScoreTable& table, const NamedWeights& named) {
  const std::set<std::string> table_names(table.model_names.begin(), table.model_names.end());
  const std::set<std::string> weight_names(named.model_names.begin(), named.model_names.end());
  if (table_names != weight_names) {
    auto join = [](const std::set<std::string>& s) {
      std::string acc;
      for (const auto& n : s) acc += (acc.empty() ? "" : ",") + n;
      return acc;
    };
    throw ArgumentError("weights file models {" + join(weight_names) +
                        "} do not match score table models {" + join(table_names) + "}");
  }
  WeightVector w;
  w.weights.resize(table.n_models());
  for (std::size_t m = 0; m < table.n_models(); ++m) {
    const auto it = std::find(named.model_names.begin(), named.model_names.end(),
                              table.model_names[m]);
    w.weights[m] = named.weights.weights[static_cast<std::size_t>(
        std::distance(named.model_names.begin(), it))];
  }
  return w;
}

}  // namespace

void cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  const ScoreTable table = load_table_file(args.scores_file);
  NamedWeights named;
  {
    auto in = open_input(args.weights_file);
    named = read_weights_tsv(in);
  }
  const WeightVector w = align_weights(table, named);

  const FittedNormalizer normalizer =
      args.fit_scores_file.empty()
          ? FittedNormalizer::fit(table, args.cfg.normalize)
          : FittedNormalizer::fit(load_table_file(args.fit_scores_file), args.cfg.normalize);
  const ScoreTable normalized = normalizer.apply(table);
  const auto blended = combine(normalized, w);

  const auto [blend_hits, blend_auc] = column_metrics(blended, table.labels, args.cfg.k);
  out << "model\thits_at_" << args.cfg.k << "\tauc\n";
  out << "blend\t" << format_double(blend_hits) << "\t" << format_double(blend_auc) << "\n";
  for (std::size_t m = 0; m < table.n_models(); ++m) {
    const auto [h, a] = column_metrics(table.columns[m], table.labels, args.cfg.k);
    out << table.model_names[m] << "\t" << format_double(h) << "\t" << format_double(a) << "\n";
  }
}

void cmd_ablate(const AblateArgs& args, std::ostream& out) {
  const ScoreTable valid_table = load_table_file(args.valid_scores_file);
  const ScoreTable test_table = load_table_file(args.test_scores_file);
  if (valid_table.model_names != test_table.model_names)
    throw ArgumentError("valid and test score tables name different models");

  const FittedNormalizer normalizer = FittedNormalizer::fit(valid_table, args.cfg.normalize);
  const ScoreTable valid_norm = normalizer.apply(valid_table);
  const ScoreTable test_norm = normalizer.apply(test_table);

  const WeightVector uniform = average_baseline(valid_table.n_models());
  const OptimizeResult tuned = optimize_weights(valid_table, args.cfg);

  const auto eval_hits = [&](const ScoreTable& norm, std::span<const int> labels,
                             const WeightVector& w) {
    return column_metrics(combine(norm, w), labels, args.cfg.k).first;
  };

  out << "method\tvalid_hits_at_" << args.cfg.k << "\ttest_hits_at_" << args.cfg.k << "\n";
  out << "averaging\t" << format_double(eval_hits(valid_norm, valid_table.labels, uniform))
      << "\t" << format_double(eval_hits(test_norm, test_table.labels, uniform)) << "\n";
  out << "tpe\t" << format_double(eval_hits(valid_norm, valid_table.labels, tuned.best.weights))
      << "\t" << format_double(eval_hits(test_norm, test_table.labels, tuned.best.weights))
      << "\n";
}

void cmd_demo(const DemoArgs& args, std::ostream& out) {
  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);

  const Graph g =
      stochastic_block_model(args.block_sizes, args.p_in, args.p_out, args.cfg.seed);
  {
    auto f = open_output(dir / "edges.tsv");
    write_edge_list(f, g);
  }
  out << "demo: sampled block-model graph with " << g.node_count() << " nodes and "
      << g.edge_count() << " edges\n";

  SplitArgs split_args;
  split_args.edge_file = (dir / "edges.tsv").string();
  split_args.out_dir = args.out_dir;
  split_args.valid_frac = args.valid_frac;
  split_args.test_frac = args.test_frac;
  split_args.n_valid_neg = args.n_valid_neg;
  split_args.n_test_neg = args.n_test_neg;
  split_args.seed = args.cfg.seed;
  cmd_split(split_args, out);

  ScoreArgs score_args;
  score_args.split_dir = args.out_dir;
  score_args.cfg = args.cfg;
  cmd_score(score_args, out);

  OptimizeArgs opt_args;
  opt_args.valid_scores_file = (dir / "valid_scores.tsv").string();
  opt_args.out_dir = args.out_dir;
  opt_args.cfg = args.cfg;
  cmd_optimize(opt_args, out);

  out << "evaluate (test split):\n";
  EvaluateArgs eval_args;
  eval_args.scores_file = (dir / "test_scores.tsv").string();
  eval_args.weights_file = (dir / "weights.tsv").string();
  eval_args.fit_scores_file = (dir / "valid_scores.tsv").string();
  eval_args.cfg = args.cfg;
  cmd_evaluate(eval_args, out);

  out << "ablation (uniform averaging vs tpe):\n";
  AblateArgs ablate_args;
  ablate_args.valid_scores_file = (dir / "valid_scores.tsv").string();
  ablate_args.test_scores_file = (dir / "test_scores.tsv").string();
  ablate_args.cfg = args.cfg;
  cmd_ablate(ablate_args, out);
}

}  // namespace linkblend
