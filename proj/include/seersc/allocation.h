#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace seersc {

// Entropy thresholds expressed as fractions of the maximum entropy ln(M).
struct ThresholdConfig {
  double tau1_fraction = 1.0 / 10.0;
  double tau2_fraction = 1.0 / 3.0;

  bool operator==(const ThresholdConfig&) const = default;
};

struct Thresholds {
  double tau1 = 0.0;
  double tau2 = 0.0;
};

enum class BudgetTier { kSingle, kHalf, kFull };

std::string_view to_string(BudgetTier tier);

struct BudgetDecision {
  std::string problem_id;
  double entropy_nats = 0.0;
  BudgetTier tier = BudgetTier::kFull;
  int64_t samples = 1;

  bool operator==(const BudgetDecision&) const = default;
};

// tau_i = fraction_i * ln(M). Throws if M < 2 or the fractions are not
// 0 < tau1_fraction < tau2_fraction < 1.
Thresholds compute_thresholds(int64_t sampled, const ThresholdConfig& cfg = {});

// Three-way tier: single below tau1, half on [tau1, tau2), full from tau2 up.
// The half tier rounds odd budgets up.
BudgetDecision allocate_budget(double entropy_nats, int64_t budget, const Thresholds& thresholds);

int64_t samples_for_tier(BudgetTier tier, int64_t budget);

}  // namespace seersc
