#include "bomp/serialize.hpp"

#include <cmath>
#include <vector>

#include "bomp/errors.hpp"

namespace bomp {
namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// JSON has no NaN; emit null instead.
nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const RecoveryTrace& trace) {
  return {
      {"chosen_indices", trace.chosen_indices},
      {"residual_norms", trace.residual_norms},
      {"final_estimate", to_std(trace.final_estimate.values())},
      {"iterations_run", trace.iterations_run},
      {"status", std::string(to_string(trace.status))},
  };
}

RecoveryTrace trace_from_json(const nlohmann::json& j, const BlockLayout& layout) {
  try {
    const auto values = j.at("final_estimate").get<std::vector<double>>();
    Vector v = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    RecoveryTrace trace{j.at("chosen_indices").get<BlockSet>(),
                        j.at("residual_norms").get<std::vector<double>>(),
                        BlockSignal(layout, std::move(v)),
                        j.at("iterations_run").get<std::size_t>(),
                        RecoveryStatus::kResidualMet};
    const auto status = j.at("status").get<std::string>();
    if (status == "iteration_limit") {
      trace.status = RecoveryStatus::kIterationLimit;
    } else if (status == "iteration_budget_exceeded") {
      trace.status = RecoveryStatus::kIterationBudgetExceeded;
    } else if (status != "residual_met") {
      throw InvalidArgument("unknown trace status '" + status + "'");
    }
    return trace;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad trace JSON: ") + e.what());
  }
}

nlohmann::json to_json(const RipReport& report) {
  return {
      {"order", report.order},
      {"delta", report.delta},
      {"arg_support", report.arg_support},
      {"lambda_min", report.lambda_min},
      {"lambda_max", report.lambda_max},
      {"supports_checked", report.supports_checked},
      {"rip_holds", report.rip_holds()},
  };
}

nlohmann::json to_json(const SufficientVerdict& verdict) {
  return {
      {"verdict", verdict.guaranteed ? "guaranteed" : "not_guaranteed"},
      {"failed_clauses", verdict.failed_clauses},
      {"threshold", finite_or_null(verdict.threshold)},
  };
}

nlohmann::json to_json(const FailureReport& report) {
  return {
      {"first_selected_index", report.first_selected_index},
      {"scores", to_std(report.scores)},
      {"outside_score", report.outside_score},
      {"inside_score", report.inside_score},
      {"failed", report.failed},
      {"t0", report.t0},
      {"t0_bound", report.t0_bound},
      {"final_support", report.final_support},
      {"support_recovered", report.support_recovered},
  };
}

nlohmann::json to_json(const ProofSweep& sweep) {
  return {
      {"trials", sweep.trials},
      {"identity", {{"passes", sweep.identity_passes},
                    {"checks", sweep.identity_checks},
                    {"worst_residual", sweep.worst_identity_residual}}},
      {"lemma1", {{"passes", sweep.lemma1_passes},
                  {"checks", sweep.trials},
                  {"worst_margin", finite_or_null(sweep.worst_lemma1_margin)}}},
      {"theta_bound", {{"passes", sweep.theta_passes}, {"checks", sweep.trials}}},
      {"projector_nesting", {{"passes", sweep.nesting_passes}, {"checks", sweep.trials}}},
      {"xi_decomposition", {{"passes", sweep.decomposition_passes}, {"checks", sweep.trials}}},
      {"unit_probe", {{"passes", sweep.unit_probe_passes}, {"checks", sweep.trials}}},
  };
}

nlohmann::json to_json(const ExperimentResult& result) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : result.records) {
    nlohmann::json rec = {{"seed_offset", r.seed_offset},
                          {"recovered", r.recovered},
                          {"iterations", r.iterations},
                          {"status", r.status}};
    if (!r.error.empty()) rec["error"] = r.error;
    if (r.certified) rec["certified"] = *r.certified;
    records.push_back(std::move(rec));
  }
  return {
      {"recovery_rate", result.recovery_rate},
      {"avg_iterations", result.avg_iterations},
      {"certified_trials", result.certified_trials},
      {"certified_recovered", result.certified_recovered},
      {"records", std::move(records)},
  };
}

}  // namespace bomp
