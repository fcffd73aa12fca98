#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "bomp/core.hpp"

namespace bomp {

inline constexpr double kRankTol = 1e-10;
inline constexpr double kOrthoTol = 1e-8;

enum class StopMode { kResidualThreshold, kFixedIterations, kBoth };

/// When BOMP stops.
///
/// kResidualThreshold stops once ||r^k||_2 <= epsilon; max_iterations then
/// acts as a budget whose exhaustion is reported as a status. kFixedIterations
/// runs exactly max_iterations steps. kBoth stops at whichever comes first.
/// An unset max_iterations resolves to M at run time.
struct StoppingRule {
  StopMode mode = StopMode::kResidualThreshold;
  double epsilon = 0.0;
  std::optional<std::size_t> max_iterations;

  static StoppingRule residual_threshold(double epsilon,
                                         std::optional<std::size_t> budget = {});
  static StoppingRule fixed_iterations(std::size_t iterations);
  static StoppingRule both(double epsilon, std::size_t iterations);

  /// Throws InvalidArgument for a negative epsilon or a zero iteration count.
  void validate() const;
};

std::string_view to_string(StopMode mode);
StopMode parse_stop_mode(std::string_view text);

enum class RecoveryStatus {
  kResidualMet,              ///< ||r^k|| <= epsilon
  kIterationLimit,           ///< ran the requested number of iterations
  kIterationBudgetExceeded,  ///< residual mode ran out of iterations
};

std::string_view to_string(RecoveryStatus status);

struct RecoveryTrace {
  /// Block chosen at iterations 1..k, in selection order.
  BlockSet chosen_indices;
  /// ||r^0|| = ||y||, then ||r^k|| after each iteration.
  std::vector<double> residual_norms;
  BlockSignal final_estimate;
  std::size_t iterations_run = 0;
  RecoveryStatus status = RecoveryStatus::kResidualMet;

  /// chosen_indices sorted ascending.
  BlockSet support() const;
};

struct Projection {
  BlockSignal estimate;
  Vector residual;
};

/// ||A[l]^T r||_2 for every block l (entry l-1).
Vector block_scores(const BlockedMatrix& a, const Vector& r);

/// argmax_l ||A[l]^T r||_2 over blocks not in `excluded`; ties go to the
/// smallest index.
BlockIndex select_block(const BlockedMatrix& a, const Vector& r,
                        std::span<const BlockIndex> excluded = {});

/// Least-squares fit of y on the columns of A[S] through a column-pivoted
/// Householder QR. Throws RankDeficient when the subdictionary's smallest
/// singular value is below rank_tol times its largest, or when |S| d > m.
Projection project_least_squares(const BlockedMatrix& a,
                                 std::span<const BlockIndex> blocks,
                                 const Vector& y, double rank_tol = kRankTol);

/// Block orthogonal matching pursuit.
RecoveryTrace run_bomp(const SensingProblem& problem, const StoppingRule& stop);

}  // namespace bomp
