#pragma once

#include <json.hpp>

#include "bomp/adversarial.hpp"
#include "bomp/bounds.hpp"
#include "bomp/experiment.hpp"
#include "bomp/proof_checks.hpp"
#include "bomp/rip.hpp"
#include "bomp/solver.hpp"

namespace bomp {

nlohmann::json to_json(const RecoveryTrace& trace);
nlohmann::json to_json(const RipReport& report);
nlohmann::json to_json(const SufficientVerdict& verdict);
nlohmann::json to_json(const FailureReport& report);
nlohmann::json to_json(const ProofSweep& sweep);
nlohmann::json to_json(const ExperimentResult& result);

/// Inverse of to_json(RecoveryTrace); the layout comes from the caller.
RecoveryTrace trace_from_json(const nlohmann::json& j, const BlockLayout& layout);

}  // namespace bomp
