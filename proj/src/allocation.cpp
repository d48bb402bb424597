#include "seersc/allocation.h"

#include <cmath>
#include <stdexcept>

namespace seersc {

std::string_view to_string(BudgetTier tier) {
  switch (tier) {
    case BudgetTier::kSingle:
      return "single";
    case BudgetTier::kHalf:
      return "half";
    case BudgetTier::kFull:
      return "full";
  }
  return "full";
}

Thresholds compute_thresholds(int64_t sampled, const ThresholdConfig& cfg) {
  if (sampled < 2) throw std::invalid_argument("entropy range degenerate: M must be >= 2");
  if (!(cfg.tau1_fraction > 0.0 && cfg.tau1_fraction < cfg.tau2_fraction &&
        cfg.tau2_fraction < 1.0)) {
    throw std::invalid_argument("threshold fractions must satisfy 0 < tau1 < tau2 < 1");
  }
  const double log_m = std::log(static_cast<double>(sampled));
  return {cfg.tau1_fraction * log_m, cfg.tau2_fraction * log_m};
}

int64_t samples_for_tier(BudgetTier tier, int64_t budget) {
  switch (tier) {
    case BudgetTier::kSingle:
      return 1;
    case BudgetTier::kHalf:
      return (budget + 1) / 2;
    case BudgetTier::kFull:
      return budget;
  }
  return budget;
}

BudgetDecision allocate_budget(double entropy_nats, int64_t budget, const Thresholds& thresholds) {
  if (budget < 1) throw std::invalid_argument("budget N must be >= 1");
  if (!(entropy_nats >= 0.0)) throw std::invalid_argument("entropy must be nonnegative");
  BudgetDecision decision;
  decision.entropy_nats = entropy_nats;
  if (entropy_nats < thresholds.tau1) {
    decision.tier = BudgetTier::kSingle;
  } else if (entropy_nats < thresholds.tau2) {
    decision.tier = BudgetTier::kHalf;
  } else {
    decision.tier = BudgetTier::kFull;
  }
  decision.samples = samples_for_tier(decision.tier, budget);
  return decision;
}

}  // namespace seersc
