#ifndef LINKBLEND_ENSEMBLE_HPP
#define LINKBLEND_ENSEMBLE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linkblend/graph.hpp"

namespace linkblend {

// Aligned per-model prediction scores over a fixed list of labeled node
// pairs. columns[m][i] is model m's score for pairs[i]. Immutable by
// convention once built; validate() checks the alignment/finiteness
// invariants after construction or file load.
struct ScoreTable {
  std::vector<std::string> model_names;
  std::vector<NodePair> pairs;
  std::vector<int> labels;  // 1 = positive, 0 = negative
  std::vector<std::vector<double>> columns;

  std::size_t n_rows() const { return pairs.size(); }
  std::size_t n_models() const { return model_names.size(); }
  void validate() const;
};

// Ensemble coefficients on the probability simplex: nonnegative,
// |sum - 1| <= 1e-9.
struct WeightVector {
  std::vector<double> weights;
  void validate() const;
};

enum class Normalization { none, minmax, zscore, rank };
enum class ObjectiveMode { hits, pos_mean };

Normalization parse_normalization(const std::string& name);
ObjectiveMode parse_objective_mode(const std::string& name);
std::string to_string(Normalization method);
std::string to_string(ObjectiveMode mode);

// Single-column normalization, fit and applied on the same column.
// minmax: (x-min)/(max-min), all-equal -> 0.5; zscore: (x-mean)/std
// (population std), zero-std -> 0; rank: tie-averaged rank / (n-1),
// singleton -> 0.5.
std::vector<double> normalize_column(std::span<const double> scores, Normalization method);

// Per-column affine statistics fitted on one table (the validation split) so
// minmax/zscore can be applied to another table without re-fitting. rank and
// none carry no state and are always computed within the target table.
struct FittedNormalizer {
  Normalization method = Normalization::none;
  std::vector<double> offset;  // per model: min or mean
  std::vector<double> scale;   // per model: max-min or std (0 = degenerate)

  static FittedNormalizer fit(const ScoreTable& table, Normalization method);
  ScoreTable apply(const ScoreTable& table) const;
};

// Per-row weighted sum of the table's columns.
std::vector<double> combine(const ScoreTable& table, const WeightVector& w);

// raw in [0,1]^K -> raw / sum(raw), or uniform when the sum is zero.
WeightVector project_to_simplex(std::span<const double> raw);

// Uniform 1/K weights.
WeightVector average_baseline(std::size_t n_models);

// hits: Hits@K of the combined column, positives vs negatives.
// pos_mean: mean combined score over positive rows only.
double objective(const ScoreTable& table, const WeightVector& w, ObjectiveMode mode,
                 std::size_t k);

}  // namespace linkblend

#endif  // LINKBLEND_ENSEMBLE_HPP
