#include "linkblend/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "linkblend/errors.hpp"

namespace linkblend {

namespace {

void require_finite(std::span<const double> scores, const char* which) {
  for (double s : scores)
    if (!std::isfinite(s)) throw ArgumentError(std::string("non-finite ") + which + " score");
}

}  // namespace

EvalResult hits_at_k(std::span<const double> pos_scores, std::span<const double> neg_scores,
                     std::size_t k) {
  if (pos_scores.empty()) throw ArgumentError("hits_at_k: positive score list is empty");
  if (k < 1) throw ArgumentError("hits_at_k: k must be >= 1");
  if (neg_scores.size() < k)
    throw ArgumentError("hits_at_k: k=" + std::to_string(k) + " exceeds " +
                        std::to_string(neg_scores.size()) + " negative scores");
  require_finite(pos_scores, "positive");
  require_finite(neg_scores, "negative");

  std::vector<double> neg(neg_scores.begin(), neg_scores.end());
  std::nth_element(neg.begin(), neg.begin() + (k - 1), neg.end(), std::greater<>());
  const double threshold = neg[k - 1];

  std::size_t hits = 0;
  for (double p : pos_scores)
    if (p > threshold) ++hits;

  EvalResult r;
  r.metric_name = "hits_at_" + std::to_string(k);
  r.value = static_cast<double>(hits) / static_cast<double>(pos_scores.size());
  r.k = k;
  r.n_pos = pos_scores.size();
  r.n_neg = neg_scores.size();
  return r;
}

EvalResult auc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty())
    throw ArgumentError("auc: both score lists must be non-empty");
  require_finite(pos_scores, "positive");
  require_finite(neg_scores, "negative");

  const std::size_t n_pos = pos_scores.size();
  const std::size_t n_neg = neg_scores.size();
  const std::size_t n = n_pos + n_neg;

  // (score, is_positive), sorted ascending; tied runs get the average rank.
  std::vector<std::pair<double, bool>> all;
  all.reserve(n);
  for (double s : pos_scores) all.emplace_back(s, true);
  for (double s : neg_scores) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && all[j].first == all[i].first) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t)
      if (all[t].second) rank_sum_pos += avg_rank;
    i = j;
  }

  const double np = static_cast<double>(n_pos);
  const double wins_plus_half_ties = rank_sum_pos - np * (np + 1.0) / 2.0;

  EvalResult r;
  r.metric_name = "auc";
  r.value = wins_plus_half_ties / (np * static_cast<double>(n_neg));
  r.n_pos = n_pos;
  r.n_neg = n_neg;
  return r;
}

}  // namespace linkblend
