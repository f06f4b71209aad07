#ifndef LINKBLEND_METRICS_HPP
#define LINKBLEND_METRICS_HPP

#include <cstddef>
#include <span>
#include <string>

namespace linkblend {

struct EvalResult {
  std::string metric_name;
  double value = 0.0;
  std::size_t k = 0;  // Hits@K only; 0 for AUC
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

// Fraction of positives that strictly beat the k-th highest negative score.
// A positive tying the threshold counts as a miss, and k > |neg| is an error
// rather than a clamp.
EvalResult hits_at_k(std::span<const double> pos_scores, std::span<const double> neg_scores,
                     std::size_t k);

// Pairwise ranking accuracy: mean over (pos, neg) pairs of 1 for a win,
// 0.5 for a tie. Computed via tie-averaged ranks, which matches the pairwise
// definition exactly (half-integer arithmetic is exact in doubles).
EvalResult auc(std::span<const double> pos_scores, std::span<const double> neg_scores);

}  // namespace linkblend

#endif  // LINKBLEND_METRICS_HPP
