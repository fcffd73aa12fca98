#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bomp {

/// Parameters of the recovery bounds. delta is the block-RIP constant of
/// order K+1; bounds are homogeneous in epsilon.
struct BoundInputs {
  std::size_t K = 1;
  double delta = 0.0;
  double epsilon = 1.0;
};

/// delta < 1/sqrt(K+1).
bool rip_condition_holds(std::size_t K, double delta);

/// eps/sqrt(1-delta) + eps*sqrt(1+delta)/(1 - sqrt(K+1) delta): the min block
/// norm above which BOMP recovers the support in K iterations.
/// Throws Infeasible when delta >= 1/sqrt(K+1).
double z1_sufficient_bound(const BoundInputs& b);

/// 2 eps/(1 - sqrt(K+1) delta), the earlier sufficient threshold.
double z2_prior_bound(const BoundInputs& b);

/// eps / (sqrt(1-delta^2) (sqrt(1-delta^2) - sqrt(K) delta)): below this min
/// block norm an instance exists on which BOMP fails.
double necessary_bound(const BoundInputs& b);

struct SufficientVerdict {
  bool guaranteed = false;
  /// Failed clauses: "rip" and/or "norm".
  std::vector<std::string> failed_clauses;
  /// z1 threshold, or NaN when the RIP clause fails.
  double threshold = 0.0;
};

SufficientVerdict check_sufficient(std::size_t K, double delta, double epsilon,
                                   double min_block_norm);

struct Figure1Row {
  std::size_t K;
  double delta;
  double z1;
  double z2;
  double diff;  ///< z1 - z2
};

inline const std::vector<std::size_t> kFigure1DefaultK{10, 20, 30, 40, 50};
inline constexpr std::size_t kFigure1DefaultPoints = 200;

/// For each K, `grid_points` deltas uniformly spaced strictly inside
/// (0, 1/sqrt(K+1)), with both bounds at epsilon = 1. Rows are grouped by K in
/// input order, deltas ascending.
std::vector<Figure1Row> figure1_curves(const std::vector<std::size_t>& K_values,
                                       std::size_t grid_points);

std::string figure1_csv(const std::vector<Figure1Row>& rows);

/// 2 - sqrt(1+delta) > sqrt(1-delta) at every point of the open uniform grid
/// i/(grid_points+1), i = 1..grid_points.
bool verify_inequality_20(std::size_t grid_points);

}  // namespace bomp
