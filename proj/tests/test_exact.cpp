#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rangepack/exact.hpp"
#include "rangepack/orlib.hpp"
#include "support/test_support.hpp"

namespace rangepack {
namespace {

using testing::hundredths;
using testing::partition_enumeration_optimum;

TEST(OptimalBins, Examples) {
  EXPECT_EQ(optimal_bins(hundredths({60, 40})), 1);
  EXPECT_EQ(optimal_bins(hundredths({51, 51, 51})), 3);
  EXPECT_EQ(optimal_bins(hundredths({40, 30, 30, 20, 20, 10})), 2);
  EXPECT_EQ(optimal_bins(hundredths({})), 0);
}

TEST(OptimalBins, RunsSearchWhenFirstFitDecreasingMissesBound) {
  // FFD needs 4 bins here; the optimum meets the L1 bound of 3.
  const auto inst = hundredths({51, 46, 41, 39, 37, 28, 28, 22});
  EXPECT_EQ(optimal_bins(inst), 3);
  EXPECT_EQ(partition_enumeration_optimum(inst), 3);
}

TEST(OptimalBins, RefusesLargeInstances) {
  const auto inst = generate_uniform(17, 0.1, 0.9, 1);
  EXPECT_THROW(optimal_bins(inst), OracleLimitError);
  EXPECT_NO_THROW(optimal_bins(generate_uniform(17, 0.1, 0.9, 1), 17));
}

TEST(LowerBoundL1, Examples) {
  EXPECT_EQ(lower_bound_l1(hundredths({50, 50, 50})), 2);
  EXPECT_EQ(lower_bound_l1(hundredths({50, 50})), 1);
  EXPECT_EQ(lower_bound_l1(hundredths({41, 47, 48, 59, 53, 52})), 3);
  EXPECT_EQ(lower_bound_l1(hundredths({})), 0);
}

TEST(OptimalBins, AgreesWithPartitionEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng() % 9;
    const Instance inst = trial % 3 == 0 ? generate_all_small(n, rng()) : generate_uniform(n, 0.000001, 1.0, rng());
    const int opt = optimal_bins(inst);
    ASSERT_EQ(opt, partition_enumeration_optimum(inst)) << inst.name();
    ASSERT_LE(lower_bound_l1(inst), opt);
  }
}

TEST(OptimalBins, PermutationInvariant) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = generate_uniform(2 + rng() % 12, 0.05, 0.7, rng());
    std::vector<Units> sizes;
    for (const auto& item : inst.items()) sizes.push_back(item.weight.numerator());
    std::shuffle(sizes.begin(), sizes.end(), rng);
    const Instance shuffled("shuffled", inst.capacity(), sizes);
    ASSERT_EQ(optimal_bins(inst), optimal_bins(shuffled));
  }
}

}  // namespace
}  // namespace rangepack
