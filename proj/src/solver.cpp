#include "bomp/solver.hpp"

#include <algorithm>
#include <string>

#include "bomp/errors.hpp"

namespace bomp {

StoppingRule StoppingRule::residual_threshold(double epsilon,
                                              std::optional<std::size_t> budget) {
  StoppingRule rule{StopMode::kResidualThreshold, epsilon, budget};
  rule.validate();
  return rule;
}

StoppingRule StoppingRule::fixed_iterations(std::size_t iterations) {
  StoppingRule rule{StopMode::kFixedIterations, 0.0, iterations};
  rule.validate();
  return rule;
}

StoppingRule StoppingRule::both(double epsilon, std::size_t iterations) {
  StoppingRule rule{StopMode::kBoth, epsilon, iterations};
  rule.validate();
  return rule;
}

void StoppingRule::validate() const {
  if (!(epsilon >= 0.0)) throw InvalidArgument("stopping epsilon must be >= 0");
  if (max_iterations && *max_iterations == 0) {
    throw InvalidArgument("max_iterations must be >= 1");
  }
  if (mode != StopMode::kResidualThreshold && !max_iterations) {
    throw InvalidArgument("fixed-iteration stopping needs max_iterations");
  }
}

std::string_view to_string(StopMode mode) {
  switch (mode) {
    case StopMode::kResidualThreshold: return "residual_threshold";
    case StopMode::kFixedIterations: return "fixed_iterations";
    case StopMode::kBoth: return "both";
  }
  return "unknown";
}

StopMode parse_stop_mode(std::string_view text) {
  if (text == "residual_threshold") return StopMode::kResidualThreshold;
  if (text == "fixed_iterations") return StopMode::kFixedIterations;
  if (text == "both") return StopMode::kBoth;
  throw InvalidArgument("unknown stopping mode '" + std::string(text) + "'");
}

std::string_view to_string(RecoveryStatus status) {
  switch (status) {
    case RecoveryStatus::kResidualMet: return "residual_met";
    case RecoveryStatus::kIterationLimit: return "iteration_limit";
    case RecoveryStatus::kIterationBudgetExceeded: return "iteration_budget_exceeded";
  }
  return "unknown";
}

BlockSet RecoveryTrace::support() const {
  BlockSet s = chosen_indices;
  std::sort(s.begin(), s.end());
  return s;
}

Vector block_scores(const BlockedMatrix& a, const Vector& r) {
  if (static_cast<std::size_t>(r.size()) != a.rows()) {
    throw InvalidArgument("residual length does not match matrix rows");
  }
  const Vector correlations = a.entries().transpose() * r;
  const auto& layout = a.layout();
  const auto d = static_cast<Eigen::Index>(layout.block_width());
  Vector scores(static_cast<Eigen::Index>(layout.num_blocks()));
  for (Eigen::Index l = 0; l < scores.size(); ++l) {
    scores(l) = correlations.segment(l * d, d).norm();
  }
  return scores;
}

BlockIndex select_block(const BlockedMatrix& a, const Vector& r,
                        std::span<const BlockIndex> excluded) {
  const Vector scores = block_scores(a, r);
  std::optional<BlockIndex> best;
  double best_score = 0.0;
  for (BlockIndex l = 1; l <= a.layout().num_blocks(); ++l) {
    if (std::find(excluded.begin(), excluded.end(), l) != excluded.end()) continue;
    const double s = scores(static_cast<Eigen::Index>(l - 1));
    if (!best || s > best_score) {
      best = l;
      best_score = s;
    }
  }
  if (!best) throw InvalidArgument("every block is excluded from selection");
  return *best;
}

Projection project_least_squares(const BlockedMatrix& a,
                                 std::span<const BlockIndex> blocks,
                                 const Vector& y, double rank_tol) {
  if (static_cast<std::size_t>(y.size()) != a.rows()) {
    throw InvalidArgument("observation length does not match matrix rows");
  }
  const BlockSet sorted = normalize_block_set(a.layout(), blocks);
  if (sorted.empty()) {
    return {BlockSignal::zeros(a.layout()), y};
  }
  const Matrix sub = extract_blocks(a, sorted);
  if (sub.cols() > sub.rows()) {
    throw RankDeficient("subdictionary has " + std::to_string(sub.cols()) +
                        " columns but only " + std::to_string(sub.rows()) + " rows");
  }
  const Eigen::ColPivHouseholderQR<Matrix> qr(sub);
  const Matrix r_factor =
      qr.matrixR().topLeftCorner(sub.cols(), sub.cols()).triangularView<Eigen::Upper>();
  const Vector sv = Eigen::JacobiSVD<Matrix>(r_factor).singularValues();
  const double largest = sv.maxCoeff();
  const double smallest = sv.minCoeff();
  if (!(largest > 0.0) || smallest < rank_tol * largest) {
    throw RankDeficient("subdictionary condition " + std::to_string(largest / smallest) +
                        " exceeds 1/rank_tol");
  }
  const Vector coefficients = qr.solve(y);
  Vector residual = y - sub * coefficients;
  return {scatter_blocks(a.layout(), coefficients, sorted), std::move(residual)};
}

RecoveryTrace run_bomp(const SensingProblem& problem, const StoppingRule& stop) {
  stop.validate();
  const BlockedMatrix& a = problem.matrix();
  const Vector& y = problem.observation();
  const std::size_t blocks = a.layout().num_blocks();
  const std::size_t limit = std::min(stop.max_iterations.value_or(blocks), blocks);

  RecoveryTrace trace{{}, {}, BlockSignal::zeros(a.layout()), 0,
                      RecoveryStatus::kResidualMet};
  Vector residual = y;
  trace.residual_norms.push_back(residual.norm());

  const bool uses_residual = stop.mode != StopMode::kFixedIterations;
  while (true) {
    if (uses_residual && trace.residual_norms.back() <= stop.epsilon) {
      trace.status = RecoveryStatus::kResidualMet;
      break;
    }
    if (trace.iterations_run >= limit) {
      trace.status = stop.mode == StopMode::kResidualThreshold
                         ? RecoveryStatus::kIterationBudgetExceeded
                         : RecoveryStatus::kIterationLimit;
      break;
    }
    // Chosen blocks are masked; their scores are at round-off level anyway.
    const BlockIndex next = select_block(a, residual, trace.chosen_indices);
    trace.chosen_indices.push_back(next);
    Projection fit = project_least_squares(a, trace.chosen_indices, y);
    residual = std::move(fit.residual);
    trace.final_estimate = std::move(fit.estimate);
    trace.residual_norms.push_back(residual.norm());
    ++trace.iterations_run;
  }
  return trace;
}

}  // namespace bomp
