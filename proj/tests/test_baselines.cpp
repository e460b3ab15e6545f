#include <gtest/gtest.h>

#include <random>

#include "rangepack/baselines.hpp"
#include "rangepack/exact.hpp"
#include "rangepack/orlib.hpp"
#include "support/test_support.hpp"

namespace rangepack {
namespace {

using testing::bin_sizes;
using testing::hundredths;
using Sizes = std::vector<std::vector<Units>>;

TEST(FirstFitDecreasing, Examples) {
  const auto inst = hundredths({60, 50, 40, 30});
  const auto r = first_fit_decreasing(inst);
  EXPECT_EQ(bin_sizes(inst, r), (Sizes{{40, 60}, {30, 50}}));
  EXPECT_EQ(first_fit_decreasing(hundredths({})).bin_count(), 0u);
  EXPECT_EQ(first_fit_decreasing(hundredths(std::vector<Units>(10, 10))).bin_count(), 1u);
}

TEST(FirstFitDecreasing, TiesKeepInputOrder) {
  const auto inst = hundredths({50, 70, 50, 50});
  const auto r = first_fit_decreasing(inst);
  ASSERT_EQ(r.bin_count(), 3u);
  EXPECT_EQ(r.bins[1].member_ids, (std::vector<ItemId>{0, 2}));
}

TEST(BestFitDecreasing, Examples) {
  EXPECT_EQ(best_fit_decreasing(hundredths({60, 50, 40, 30})).bin_count(), 2u);
  EXPECT_EQ(best_fit_decreasing(hundredths({})).bin_count(), 0u);
  EXPECT_EQ(best_fit_decreasing(hundredths({50, 50, 50})).bin_count(), 2u);
}

TEST(BestFitDecreasing, PicksTightestBin) {
  // After 0.7, 0.6: residuals 0.3, 0.4. 0.3 goes into the 0.7 bin under BFD.
  const auto inst = hundredths({70, 60, 30});
  const auto bfd = best_fit_decreasing(inst);
  EXPECT_EQ(bin_sizes(inst, bfd), (Sizes{{30, 70}, {60}}));
  // Tie on residual goes to the lower index.
  const auto tie = hundredths({60, 60, 40});
  EXPECT_EQ(best_fit_decreasing(tie).bins[0].member_ids, (std::vector<ItemId>{0, 2}));
}

TEST(FirstFit, Example) {
  const auto inst = hundredths({30, 80, 60, 20});
  const auto r = first_fit(inst);
  EXPECT_EQ(bin_sizes(inst, r), (Sizes{{30, 60}, {20, 80}}));
}

TEST(NextFit, Examples) {
  const auto inst = hundredths({60, 60, 30});
  const auto r = next_fit(inst);
  EXPECT_EQ(bin_sizes(inst, r), (Sizes{{60}, {30, 60}}));
  EXPECT_EQ(next_fit(hundredths({50, 50})).bin_count(), 1u);
  EXPECT_EQ(r.counters.item_touches, 3);
}

TEST(Baselines, RandomizedValidityAndBounds) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng() % 200;
    const Instance inst = generate_uniform(n, 0.000001, 1.0, rng());
    for (auto* algorithm : {&first_fit_decreasing, &best_fit_decreasing, &first_fit, &next_fit}) {
      const auto r = algorithm(inst);
      ASSERT_TRUE(validate_result(inst, r)) << validate_result(inst, r).violation;
      EXPECT_GE(static_cast<int>(r.bin_count()), lower_bound_l1(inst));
    }
    EXPECT_EQ(next_fit(inst).counters.item_touches, static_cast<std::int64_t>(n));
  }
}

TEST(Baselines, DecreasingVariantsWithinThreeHalvesOfOptimum) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = generate_uniform(1 + rng() % 12, 0.000001, 0.999999, rng());
    const int opt = optimal_bins(inst);
    EXPECT_LE(2 * static_cast<int>(first_fit_decreasing(inst).bin_count()), 3 * opt);
    EXPECT_LE(2 * static_cast<int>(best_fit_decreasing(inst).bin_count()), 3 * opt);
  }
}

}  // namespace
}  // namespace rangepack
