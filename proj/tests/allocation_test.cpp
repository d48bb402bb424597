#include "seersc/allocation.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace seersc {
namespace {

TEST(ThresholdsTest, SixtyFourCategories) {
  const auto t = compute_thresholds(64);
  EXPECT_NEAR(t.tau1, 0.415888308335967186, 1e-12);
  EXPECT_NEAR(t.tau2, 1.386294361119890619, 1e-12);
}

TEST(ThresholdsTest, TwoCategories) {
  const auto t = compute_thresholds(2);
  EXPECT_NEAR(t.tau1, 0.0693147180559945309, 1e-12);
  EXPECT_NEAR(t.tau2, 0.231049060186648436, 1e-12);
}

TEST(ThresholdsTest, DegenerateOrInvalidThrows) {
  EXPECT_THROW(compute_thresholds(1), std::invalid_argument);
  EXPECT_THROW(compute_thresholds(0), std::invalid_argument);
  EXPECT_THROW(compute_thresholds(8, {0.5, 0.2}), std::invalid_argument);
  EXPECT_THROW(compute_thresholds(8, {0.0, 0.2}), std::invalid_argument);
  EXPECT_THROW(compute_thresholds(8, {0.2, 1.0}), std::invalid_argument);
}

TEST(AllocateBudgetTest, TierBoundaries) {
  const auto t = compute_thresholds(64);
  EXPECT_EQ(allocate_budget(0.0, 8, t).samples, 1);
  EXPECT_EQ(allocate_budget(0.0, 8, t).tier, BudgetTier::kSingle);
  EXPECT_EQ(allocate_budget(std::nextafter(t.tau1, 0.0), 8, t).samples, 1);
  EXPECT_EQ(allocate_budget(t.tau1, 8, t).samples, 4);
  EXPECT_EQ(allocate_budget(t.tau1, 8, t).tier, BudgetTier::kHalf);
  EXPECT_EQ(allocate_budget(std::nextafter(t.tau2, 0.0), 8, t).samples, 4);
  EXPECT_EQ(allocate_budget(t.tau2, 8, t).samples, 8);
  EXPECT_EQ(allocate_budget(t.tau2, 8, t).tier, BudgetTier::kFull);
  EXPECT_EQ(allocate_budget(std::log(64.0), 8, t).samples, 8);
}

TEST(AllocateBudgetTest, WorkedExamples) {
  const auto t = compute_thresholds(64);
  EXPECT_EQ(allocate_budget(1.0, 8, t).samples, 4);
  EXPECT_EQ(allocate_budget(std::log(64.0), 9, t).samples, 9);
  EXPECT_EQ(allocate_budget(1.0, 9, t).samples, 5);
  EXPECT_THROW(compute_thresholds(64, {0.2, 0.2}), std::invalid_argument);
}

TEST(AllocateBudgetTest, OddBudgetRoundsHalfUp) {
  const auto t = compute_thresholds(64);
  EXPECT_EQ(allocate_budget(t.tau1, 5, t).samples, 3);
  EXPECT_EQ(allocate_budget(t.tau1, 1, t).samples, 1);
  EXPECT_EQ(samples_for_tier(BudgetTier::kHalf, 7), 4);
}

TEST(AllocateBudgetTest, InvalidInputsThrow) {
  const auto t = compute_thresholds(64);
  EXPECT_THROW(allocate_budget(0.1, 0, t), std::invalid_argument);
  EXPECT_THROW(allocate_budget(-0.1, 8, t), std::invalid_argument);
}

TEST(AllocateBudgetTest, MonotoneInEntropyAndWithinBudget) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> entropy(0.0, std::log(64.0));
  const auto t = compute_thresholds(64);
  for (int trial = 0; trial < 2000; ++trial) {
    const int64_t n = 1 + static_cast<int64_t>(rng() % 32);
    double a = entropy(rng);
    double b = entropy(rng);
    if (a > b) std::swap(a, b);
    const auto da = allocate_budget(a, n, t);
    const auto db = allocate_budget(b, n, t);
    EXPECT_LE(da.samples, db.samples);
    EXPECT_GE(da.samples, 1);
    EXPECT_LE(db.samples, n);
    EXPECT_EQ(db.samples, samples_for_tier(db.tier, n));
  }
}

}  // namespace
}  // namespace seersc
