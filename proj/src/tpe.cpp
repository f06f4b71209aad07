#include "linkblend/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "linkblend/errors.hpp"
#include "linkblend/format.hpp"

namespace linkblend {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;
constexpr double kMinBandwidth = 0.01;
constexpr double kMaxBandwidth = 1.0;

double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); }

// Box-Muller, two uniforms per draw so the stream advance is fixed.
double std_normal_sample(Pcg32& rng) {
  const double u1 = rng.next_double();
  const double u2 = rng.next_double();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace

void TpeConfig::validate(std::size_t dim) const {
  if (dim == 0) throw ArgumentError("tpe: dimension must be >= 1");
  if (!(gamma_frac > 0.0 && gamma_frac < 1.0))
    throw ArgumentError("tpe: gamma_frac must lie in (0,1)");
  if (n_ei_candidates < 1) throw ArgumentError("tpe: n_ei_candidates must be >= 1");
  if (!(prior_weight > 0.0)) throw ArgumentError("tpe: prior_weight must be positive");
  if (resolved_startup(dim) < dim + 1)
    throw ArgumentError("tpe: n_startup must be >= dim+1 so the vertex/center schedule runs");
  if (n_trials < resolved_startup(dim))
    throw ArgumentError("tpe: n_trials (" + std::to_string(n_trials) +
                        ") must cover the startup phase (" +
                        std::to_string(resolved_startup(dim)) + ")");
}

ParzenEstimator::ParzenEstimator(std::vector<double> centers, std::vector<double> bandwidths,
                                 double prior_weight)
    : centers_(std::move(centers)), bandwidths_(std::move(bandwidths)),
      prior_weight_(prior_weight) {
  if (centers_.size() != bandwidths_.size())
    throw ArgumentError("parzen: centers and bandwidths must align");
  if (!(prior_weight_ >= 0.0)) throw ArgumentError("parzen: prior weight must be >= 0");
  if (centers_.empty() && prior_weight_ == 0.0)
    throw ArgumentError("parzen: mixture has no components");

  std::vector<std::size_t> order(centers_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return centers_[a] < centers_[b]; });
  std::vector<double> c(centers_.size());
  std::vector<double> b(centers_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    c[i] = centers_[order[i]];
    b[i] = bandwidths_[order[i]];
  }
  centers_ = std::move(c);
  bandwidths_ = std::move(b);

  trunc_mass_.resize(centers_.size());
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (!(centers_[i] >= 0.0 && centers_[i] <= 1.0))
      throw ArgumentError("parzen: center outside [0,1]");
    if (!(bandwidths_[i] > 0.0)) throw ArgumentError("parzen: bandwidth must be positive");
    trunc_mass_[i] = std_normal_cdf((1.0 - centers_[i]) / bandwidths_[i]) -
                     std_normal_cdf((0.0 - centers_[i]) / bandwidths_[i]);
  }
}

ParzenEstimator ParzenEstimator::fit(std::span<const double> observations, double prior_weight) {
  std::vector<double> centers(observations.begin(), observations.end());
  for (double x : centers)
    if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("parzen: observation outside [0,1]");
  std::sort(centers.begin(), centers.end());

  const std::size_t n = centers.size();
  std::vector<double> bandwidths(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? centers[i - 1] : 0.0;
    const double right = i + 1 < n ? centers[i + 1] : 1.0;
    const double bw = std::max(centers[i] - left, right - centers[i]);
    bandwidths[i] = std::clamp(bw, kMinBandwidth, kMaxBandwidth);
  }
  return ParzenEstimator(std::move(centers), std::move(bandwidths), prior_weight);
}

double ParzenEstimator::pdf(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("parzen: pdf argument outside [0,1]");
  double acc = prior_weight_;  // uniform prior has density 1 on [0,1]
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double z = (x - centers_[i]) / bandwidths_[i];
    acc += std_normal_pdf(z) / (bandwidths_[i] * trunc_mass_[i]);
  }
  return acc / (static_cast<double>(centers_.size()) + prior_weight_);
}

double ParzenEstimator::sample(Pcg32& rng) const {
  const double total = static_cast<double>(centers_.size()) + prior_weight_;
  const double pick = rng.next_double() * total;
  if (pick >= static_cast<double>(centers_.size())) return rng.next_double();  // prior
  const auto idx = static_cast<std::size_t>(pick);
  // Truncated Gaussian by rejection; centers lie in [0,1], so acceptance is
  // at worst ~1/2 per attempt.
  const double c = centers_[idx];
  const double b = bandwidths_[idx];
  for (;;) {
    const double x = c + b * std_normal_sample(rng);
    if (x >= 0.0 && x <= 1.0) return x;
  }
}

std::vector<double> suggest(std::span<const Trial> history, const TpeConfig& cfg,
                            std::size_t dim, Pcg32& rng) {
  const std::size_t n = history.size();
  const std::size_t n_startup = cfg.resolved_startup(dim);

  if (n < n_startup) {
    std::vector<double> raw(dim, 0.0);
    if (n < dim) {
      raw[n] = 1.0;  // simplex vertex
    } else if (n == dim) {
      std::fill(raw.begin(), raw.end(), 0.5);  // center: projects to uniform weights
    } else {
      for (double& x : raw) x = rng.next_double();
    }
    return raw;
  }

  // Good set: top n_good finite-valued trials, ties resolved toward earlier
  // trials so the split is reproducible.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return history[a].value > history[b].value;
  });
  const std::size_t n_good_target = std::max<std::size_t>(
      1, std::min<std::size_t>(cfg.gamma_cap,
                               static_cast<std::size_t>(cfg.gamma_frac * static_cast<double>(n))));
  std::vector<std::size_t> good;
  std::vector<std::size_t> bad;
  for (std::size_t idx : order) {
    if (good.size() < n_good_target && std::isfinite(history[idx].value))
      good.push_back(idx);
    else
      bad.push_back(idx);
  }

  std::vector<double> raw(dim);
  std::vector<double> coords;
  for (std::size_t d = 0; d < dim; ++d) {
    coords.clear();
    for (std::size_t idx : good) coords.push_back(history[idx].raw_point[d]);
    const auto density_good = ParzenEstimator::fit(coords, cfg.prior_weight);
    coords.clear();
    for (std::size_t idx : bad) coords.push_back(history[idx].raw_point[d]);
    const auto density_bad = ParzenEstimator::fit(coords, cfg.prior_weight);

    double best_x = 0.0;
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cfg.n_ei_candidates; ++c) {
      const double x = density_good.sample(rng);
      const double ratio = density_good.pdf(x) / density_bad.pdf(x);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_x = x;
      }
    }
    raw[d] = best_x;
  }
  return raw;
}

OptimizeResult optimize(const std::function<double(std::span<const double>)>& objective,
                        std::size_t dim, const TpeConfig& cfg) {
  cfg.validate(dim);
  Pcg32 rng(cfg.seed, rng_stream::kTpe);

  std::vector<Trial> history;
  history.reserve(cfg.n_trials);
  for (std::size_t t = 0; t < cfg.n_trials; ++t) {
    Trial trial;
    trial.raw_point = suggest(history, cfg, dim, rng);
    trial.weights = project_to_simplex(trial.raw_point);
    const double value = objective(trial.raw_point);
    trial.value = std::isfinite(value) ? value : -std::numeric_limits<double>::infinity();
    history.push_back(std::move(trial));
  }

  std::size_t best_idx = 0;
  for (std::size_t t = 1; t < history.size(); ++t)
    if (history[t].value > history[best_idx].value) best_idx = t;

  OptimizeResult result;
  result.best = history[best_idx];
  result.history = std::move(history);
  return result;
}

void write_trials_tsv(std::ostream& out, std::span<const Trial> history) {
  if (history.empty()) return;
  const std::size_t dim = history.front().raw_point.size();
  out << "trial";
  for (std::size_t d = 0; d < dim; ++d) out << "\traw_" << d;
  for (std::size_t d = 0; d < dim; ++d) out << "\tweight_" << d;
  out << "\tvalue\n";
  for (std::size_t t = 0; t < history.size(); ++t) {
    out << t;
    for (double x : history[t].raw_point) out << "\t" << format_double(x);
    for (double w : history[t].weights.weights) out << "\t" << format_double(w);
    out << "\t" << format_double(history[t].value) << "\n";
  }
}

}  // namespace linkblend
