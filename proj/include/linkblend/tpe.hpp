#ifndef LINKBLEND_TPE_HPP
#define LINKBLEND_TPE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "linkblend/ensemble.hpp"
#include "linkblend/rng.hpp"

namespace linkblend {

struct TpeConfig {
  std::size_t n_trials = 200;
  // 0 means "derive at optimize() time": dim + 1 deterministic points
  // (vertices, then the center) followed by 10 random ones.
  std::size_t n_startup = 0;
  std::size_t gamma_cap = 25;
  double gamma_frac = 0.25;
  std::size_t n_ei_candidates = 24;
  double prior_weight = 1.0;
  std::uint64_t seed = 0;

  std::size_t resolved_startup(std::size_t dim) const {
    return n_startup > 0 ? n_startup : dim + 11;
  }
  void validate(std::size_t dim) const;
};

struct Trial {
  std::vector<double> raw_point;  // in [0,1]^K
  WeightVector weights;           // raw_point projected onto the simplex
  double value = 0.0;             // objective; -inf marks a failed evaluation
};

// 1-D kernel density on [0,1]: one truncated Gaussian per observation plus a
// uniform prior component. Component weights are 1 each and prior_weight for
// the prior, normalized to sum to 1.
class ParzenEstimator {
 public:
  // Direct construction from centers/bandwidths (centers get sorted).
  ParzenEstimator(std::vector<double> centers, std::vector<double> bandwidths,
                  double prior_weight);

  // Bandwidth of each sorted center = max distance to its neighbors, with 0
  // and 1 as virtual edge neighbors, clamped to [0.01, 1.0].
  static ParzenEstimator fit(std::span<const double> observations, double prior_weight);

  double pdf(double x) const;
  double sample(Pcg32& rng) const;

  std::span<const double> centers() const { return centers_; }
  std::span<const double> bandwidths() const { return bandwidths_; }

 private:
  std::vector<double> centers_;
  std::vector<double> bandwidths_;
  double prior_weight_;
  std::vector<double> trunc_mass_;  // per-component Gaussian mass on [0,1]
};

// One TPE proposal. During startup the schedule is deterministic: the K
// one-hot vertices, then the all-equal center point, then uniform random
// points. Afterwards the history splits into good/bad densities per
// dimension and the candidate maximizing l(x)/g(x) wins.
std::vector<double> suggest(std::span<const Trial> history, const TpeConfig& cfg,
                            std::size_t dim, Pcg32& rng);

struct OptimizeResult {
  Trial best;
  std::vector<Trial> history;
};

// Maximizes the objective over [0,1]^dim with n_trials suggest/evaluate
// cycles. Non-finite objective values are recorded as -inf and never enter
// the good set. Fully deterministic given cfg.seed.
OptimizeResult optimize(const std::function<double(std::span<const double>)>& objective,
                        std::size_t dim, const TpeConfig& cfg);

// trials.tsv: trial index, raw coordinates, projected weights, value.
void write_trials_tsv(std::ostream& out, std::span<const Trial> history);

}  // namespace linkblend

#endif  // LINKBLEND_TPE_HPP
