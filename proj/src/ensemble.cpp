#include "linkblend/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "linkblend/errors.hpp"
#include "linkblend/metrics.hpp"

namespace linkblend {

void ScoreTable::validate() const {
  if (model_names.empty()) throw ArgumentError("score table has no model columns");
  std::unordered_set<std::string> seen;
  for (const auto& name : model_names) {
    if (name.empty()) throw ArgumentError("empty model name");
    if (!seen.insert(name).second) throw ArgumentError("duplicate model name '" + name + "'");
  }
  if (labels.size() != pairs.size())
    throw ArgumentError("label count does not match pair count");
  if (columns.size() != model_names.size())
    throw ArgumentError("column count does not match model count");
  for (std::size_t m = 0; m < columns.size(); ++m) {
    if (columns[m].size() != pairs.size())
      throw ArgumentError("column '" + model_names[m] + "' has " +
                          std::to_string(columns[m].size()) + " rows, expected " +
                          std::to_string(pairs.size()));
    for (double s : columns[m])
      if (!std::isfinite(s))
        throw ArgumentError("non-finite score in column '" + model_names[m] + "'");
  }
  for (int l : labels)
    if (l != 0 && l != 1) throw ArgumentError("labels must be 0 or 1");
}

void WeightVector::validate() const {
  if (weights.empty()) throw ArgumentError("weight vector is empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ArgumentError("weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ArgumentError("weights sum to " + std::to_string(sum) + ", expected 1");
}

Normalization parse_normalization(const std::string& name) {
  if (name == "none") return Normalization::none;
  if (name == "minmax") return Normalization::minmax;
  if (name == "zscore") return Normalization::zscore;
  if (name == "rank") return Normalization::rank;
  throw ArgumentError("unknown normalization '" + name + "' (none|minmax|zscore|rank)");
}

ObjectiveMode parse_objective_mode(const std::string& name) {
  if (name == "hits") return ObjectiveMode::hits;
  if (name == "pos-mean" || name == "pos_mean") return ObjectiveMode::pos_mean;
  throw ArgumentError("unknown objective '" + name + "' (hits|pos-mean)");
}

std::string to_string(Normalization method) {
  switch (method) {
    case Normalization::none: return "none";
    case Normalization::minmax: return "minmax";
    case Normalization::zscore: return "zscore";
    case Normalization::rank: return "rank";
  }
  return "?";
}

std::string to_string(ObjectiveMode mode) {
  return mode == ObjectiveMode::hits ? "hits" : "pos-mean";
}

namespace {

void require_finite_column(std::span<const double> scores) {
  for (double s : scores)
    if (!std::isfinite(s)) throw ArgumentError("non-finite score in column");
}

// Tie-averaged ranks scaled to [0,1]; a singleton column maps to 0.5.
std::vector<double> rank_normalize(std::span<const double> scores) {
  const std::size_t n = scores.size();
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = 0.5;
    return out;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0;
    for (std::size_t t = i; t < j; ++t) out[order[t]] = avg_rank / static_cast<double>(n - 1);
    i = j;
  }
  return out;
}

}  // namespace

std::vector<double> normalize_column(std::span<const double> scores, Normalization method) {
  if (scores.empty()) throw ArgumentError("cannot normalize an empty column");
  require_finite_column(scores);
  const std::size_t n = scores.size();
  std::vector<double> out(scores.begin(), scores.end());
  switch (method) {
    case Normalization::none:
      return out;
    case Normalization::minmax: {
      const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
      if (*lo == *hi) {
        std::fill(out.begin(), out.end(), 0.5);
      } else {
        const double range = *hi - *lo;
        for (double& x : out) x = (x - *lo) / range;
      }
      return out;
    }
    case Normalization::zscore: {
      double mean = 0.0;
      for (double x : scores) mean += x;
      mean /= static_cast<double>(n);
      double var = 0.0;
      for (double x : scores) var += (x - mean) * (x - mean);
      const double std_dev = std::sqrt(var / static_cast<double>(n));
      if (std_dev == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
      } else {
        for (double& x : out) x = (x - mean) / std_dev;
      }
      return out;
    }
    case Normalization::rank:
      return rank_normalize(scores);
  }
  throw ArgumentError("unknown normalization method");
}

FittedNormalizer FittedNormalizer::fit(const ScoreTable& table, Normalization method) {
  table.validate();
  FittedNormalizer f;
  f.method = method;
  if (method != Normalization::minmax && method != Normalization::zscore) return f;
  for (const auto& col : table.columns) {
    if (method == Normalization::minmax) {
      const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
      f.offset.push_back(*lo);
      f.scale.push_back(*hi - *lo);
    } else {
      double mean = 0.0;
      for (double x : col) mean += x;
      mean /= static_cast<double>(col.size());
      double var = 0.0;
      for (double x : col) var += (x - mean) * (x - mean);
      f.offset.push_back(mean);
      f.scale.push_back(std::sqrt(var / static_cast<double>(col.size())));
    }
  }
  return f;
}

ScoreTable FittedNormalizer::apply(const ScoreTable& table) const {
  table.validate();
  ScoreTable out = table;
  switch (method) {
    case Normalization::none:
      return out;
    case Normalization::rank:
      for (auto& col : out.columns) col = rank_normalize(col);
      return out;
    case Normalization::minmax:
    case Normalization::zscore: {
      if (offset.size() != table.n_models())
        throw ArgumentError("normalizer was fitted for " + std::to_string(offset.size()) +
                            " models, table has " + std::to_string(table.n_models()));
      for (std::size_t m = 0; m < out.columns.size(); ++m) {
        const double degenerate = method == Normalization::minmax ? 0.5 : 0.0;
        for (double& x : out.columns[m])
          x = scale[m] == 0.0 ? degenerate : (x - offset[m]) / scale[m];
      }
      return out;
    }
  }
  return out;
}

std::vector<double> combine(const ScoreTable& table, const WeightVector& w) {
  if (w.weights.size() != table.n_models())
    throw ArgumentError("weight vector has " + std::to_string(w.weights.size()) +
                        " entries, table has " + std::to_string(table.n_models()) + " models");
  std::vector<double> out(table.n_rows(), 0.0);
  for (std::size_t m = 0; m < table.n_models(); ++m) {
    const double wm = w.weights[m];
    const auto& col = table.columns[m];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += wm * col[i];
  }
  return out;
}

WeightVector project_to_simplex(std::span<const double> raw) {
  if (raw.empty()) throw ArgumentError("cannot project an empty weight vector");
  double sum = 0.0;
  for (double x : raw) {
    if (!(x >= 0.0 && x <= 1.0))
      throw ArgumentError("raw weight components must lie in [0,1]");
    sum += x;
  }
  WeightVector w;
  w.weights.resize(raw.size());
  if (sum == 0.0) {
    std::fill(w.weights.begin(), w.weights.end(), 1.0 / static_cast<double>(raw.size()));
  } else {
    for (std::size_t i = 0; i < raw.size(); ++i) w.weights[i] = raw[i] / sum;
  }
  return w;
}

WeightVector average_baseline(std::size_t n_models) {
  if (n_models == 0) throw ArgumentError("ensemble needs at least one model");
  WeightVector w;
  w.weights.assign(n_models, 1.0 / static_cast<double>(n_models));
  return w;
}

double objective(const ScoreTable& table, const WeightVector& w, ObjectiveMode mode,
                 std::size_t k) {
  const auto combined = combine(table, w);
  if (mode == ObjectiveMode::pos_mean) {
    double sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < combined.size(); ++i) {
      if (table.labels[i] == 1) {
        sum += combined[i];
        ++n_pos;
      }
    }
    if (n_pos == 0) throw ArgumentError("objective requires at least one positive row");
    return sum / static_cast<double>(n_pos);
  }
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < combined.size(); ++i)
    (table.labels[i] == 1 ? pos : neg).push_back(combined[i]);
  return hits_at_k(pos, neg, k).value;
}

}  // namespace linkblend
