#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "linkblend/errors.hpp"
#include "linkblend/metrics.hpp"
#include "linkblend/rng.hpp"
#include "oracles.hpp"

using namespace linkblend;

namespace {

// Random instance on a coarse dyadic grid (multiples of 1/64 in [0,2]) so
// ties occur often and monotone transforms stay exact.
struct Instance {
  std::vector<double> pos;
  std::vector<double> neg;
};

Instance random_instance(Pcg32& rng, std::size_t max_len = 50) {
  Instance inst;
  const auto np = 1 + rng.next_below(max_len);
  const auto nn = 1 + rng.next_below(max_len);
  for (std::size_t i = 0; i < np; ++i)
    inst.pos.push_back(static_cast<double>(rng.next_below(129)) / 64.0);
  for (std::size_t i = 0; i < nn; ++i)
    inst.neg.push_back(static_cast<double>(rng.next_below(129)) / 64.0);
  return inst;
}

oracles::MonotoneTransform random_transform(Pcg32& rng) {
  // Breakpoints at j/8 over [-1, 3]; dyadic slopes in [0.5, 2]; all
  // arithmetic on these grids is exact in double.
  std::vector<double> xs;
  for (int j = -8; j <= 24; ++j) xs.push_back(static_cast<double>(j) / 8.0);
  std::vector<double> slopes;
  const double choices[5] = {0.5, 0.75, 1.0, 1.25, 2.0};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    slopes.push_back(choices[rng.next_below(5)]);
  const double base = static_cast<double>(rng.next_below(65)) / 8.0 - 4.0;
  return oracles::MonotoneTransform(std::move(xs), std::move(slopes), base);
}

}  // namespace

TEST_CASE("hits_at_k worked example: threshold between positives") {
  const std::vector<double> pos = {0.9, 0.5, 0.2};
  const std::vector<double> neg = {0.8, 0.4, 0.3, 0.1};
  const EvalResult r = hits_at_k(pos, neg, 2);
  CHECK(r.value == doctest::Approx(2.0 / 3.0));
  CHECK(r.value == oracles::brute_force_hits_at_k(pos, neg, 2));
  CHECK(r.k == 2);
  CHECK(r.n_pos == 3);
  CHECK(r.n_neg == 4);
  CHECK(r.metric_name == "hits_at_2");
}

TEST_CASE("hits_at_k is 1 under perfect separation") {
  const std::vector<double> pos = {0.9, 0.8, 0.7};
  const std::vector<double> neg = {0.5, 0.4, 0.3, 0.2};
  for (std::size_t k = 1; k <= neg.size(); ++k)
    CHECK(hits_at_k(pos, neg, k).value == 1.0);
}

TEST_CASE("hits_at_k counts a threshold tie as a miss") {
  const std::vector<double> pos = {0.4};
  const std::vector<double> neg = {0.4, 0.1};
  CHECK(hits_at_k(pos, neg, 1).value == 0.0);
}

TEST_CASE("hits_at_k argument errors") {
  const std::vector<double> pos = {0.5};
  const std::vector<double> neg = {0.1, 0.2};
  CHECK_THROWS_AS(hits_at_k(pos, neg, 3), ArgumentError);
  CHECK_THROWS_AS(hits_at_k(pos, neg, 0), ArgumentError);
  CHECK_THROWS_AS(hits_at_k({}, neg, 1), ArgumentError);
  const std::vector<double> bad = {std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(hits_at_k(bad, neg, 1), ArgumentError);
  CHECK_THROWS_AS(hits_at_k(pos, bad, 1), ArgumentError);
}

TEST_CASE("auc worked examples") {
  CHECK(auc(std::vector<double>{1.0}, std::vector<double>{0.0}).value == 1.0);
  CHECK(auc(std::vector<double>{0.5}, std::vector<double>{0.5}).value == 0.5);
  // pairs: (0.9 > 0.5) wins, (0.2 < 0.5) loses -> 1/2
  CHECK(auc(std::vector<double>{0.9, 0.2}, std::vector<double>{0.5}).value == 0.5);
  CHECK_THROWS_AS(auc({}, std::vector<double>{0.5}), ArgumentError);
  CHECK_THROWS_AS(auc(std::vector<double>{0.5}, {}), ArgumentError);
}

TEST_CASE("hits_at_k and auc match brute force on random tied instances") {
  Pcg32 rng(123, 7);
  for (int rep = 0; rep < 300; ++rep) {
    const Instance inst = random_instance(rng);
    CHECK(auc(inst.pos, inst.neg).value == oracles::brute_force_auc(inst.pos, inst.neg));
    const std::size_t k = 1 + rng.next_below(inst.neg.size());
    CHECK(hits_at_k(inst.pos, inst.neg, k).value ==
          oracles::brute_force_hits_at_k(inst.pos, inst.neg, k));
  }
}

TEST_CASE("hits_at_k is non-decreasing in k") {
  Pcg32 rng(5, 3);
  for (int rep = 0; rep < 50; ++rep) {
    const Instance inst = random_instance(rng, 30);
    double prev = 0.0;
    for (std::size_t k = 1; k <= inst.neg.size(); ++k) {
      const double v = hits_at_k(inst.pos, inst.neg, k).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("metrics are exactly invariant under monotone transforms") {
  Pcg32 rng(99, 2);
  for (int rep = 0; rep < 100; ++rep) {
    const Instance inst = random_instance(rng);
    const auto f = random_transform(rng);
    Instance mapped;
    for (double x : inst.pos) mapped.pos.push_back(f(x));
    for (double x : inst.neg) mapped.neg.push_back(f(x));

    CHECK(auc(inst.pos, inst.neg).value == auc(mapped.pos, mapped.neg).value);
    const std::size_t k = 1 + rng.next_below(inst.neg.size());
    CHECK(hits_at_k(inst.pos, inst.neg, k).value ==
          hits_at_k(mapped.pos, mapped.neg, k).value);
  }
}
