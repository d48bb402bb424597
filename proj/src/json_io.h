#pragma once

// nlohmann/json bindings for the engine's value types. Internal to the
// library; callers go through dataset.h and report.h.

#include "json.hpp"
#include "seersc/experiment.h"
#include "seersc/sim_backend.h"
#include "seersc/strategies.h"

namespace seersc {

void to_json(nlohmann::json& j, const Problem& p);
void to_json(nlohmann::json& j, const TokenRange& r);
void from_json(const nlohmann::json& j, TokenRange& r);
void to_json(nlohmann::json& j, const SimProblemProfile& p);
void from_json(const nlohmann::json& j, SimProblemProfile& p);

void to_json(nlohmann::json& j, const Completion& c);
void from_json(const nlohmann::json& j, Completion& c);
void to_json(nlohmann::json& j, const EntropyReport& r);
void from_json(const nlohmann::json& j, EntropyReport& r);
void to_json(nlohmann::json& j, const BudgetDecision& d);
void from_json(const nlohmann::json& j, BudgetDecision& d);
void to_json(nlohmann::json& j, const StrategyConfig& c);
void from_json(const nlohmann::json& j, StrategyConfig& c);
void to_json(nlohmann::json& j, const StrategyOutcome& o);
void from_json(const nlohmann::json& j, StrategyOutcome& o);
void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

}  // namespace seersc
