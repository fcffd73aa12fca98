#include "bomp/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "bomp/errors.hpp"

namespace bomp {
namespace {

void validate(const BoundInputs& b) {
  if (b.K == 0) throw InvalidArgument("K must be >= 1");
  if (!(b.delta >= 0.0 && b.delta < 1.0)) {
    throw InvalidArgument("delta must lie in [0, 1)");
  }
  if (!(b.epsilon >= 0.0)) throw InvalidArgument("epsilon must be >= 0");
}

// 1 - sqrt(K+1) delta, required positive.
double recovery_margin(const BoundInputs& b) {
  validate(b);
  const double margin = 1.0 - std::sqrt(static_cast<double>(b.K + 1)) * b.delta;
  if (!rip_condition_holds(b.K, b.delta) || !(margin > 0.0)) {
    throw Infeasible("delta = " + std::to_string(b.delta) +
                     " violates delta < 1/sqrt(K+1) for K = " + std::to_string(b.K));
  }
  return margin;
}

}  // namespace

bool rip_condition_holds(std::size_t K, double delta) {
  return delta < 1.0 / std::sqrt(static_cast<double>(K + 1));
}

double z1_sufficient_bound(const BoundInputs& b) {
  const double margin = recovery_margin(b);
  return b.epsilon / std::sqrt(1.0 - b.delta) +
         b.epsilon * std::sqrt(1.0 + b.delta) / margin;
}

double z2_prior_bound(const BoundInputs& b) {
  const double margin = recovery_margin(b);
  return 2.0 * b.epsilon / margin;
}

double necessary_bound(const BoundInputs& b) {
  recovery_margin(b);
  const double a = std::sqrt(1.0 - b.delta * b.delta);
  const double denom = a * (a - std::sqrt(static_cast<double>(b.K)) * b.delta);
  if (!(denom > 0.0)) {
    throw Infeasible("necessary bound denominator is not positive");
  }
  return b.epsilon / denom;
}

SufficientVerdict check_sufficient(std::size_t K, double delta, double epsilon,
                                   double min_block_norm) {
  SufficientVerdict v;
  const BoundInputs b{K, delta, epsilon};
  validate(b);
  if (!rip_condition_holds(K, delta)) {
    v.failed_clauses.emplace_back("rip");
    v.threshold = std::numeric_limits<double>::quiet_NaN();
    return v;
  }
  v.threshold = z1_sufficient_bound(b);
  if (!(min_block_norm > v.threshold)) v.failed_clauses.emplace_back("norm");
  v.guaranteed = v.failed_clauses.empty();
  return v;
}

std::vector<Figure1Row> figure1_curves(const std::vector<std::size_t>& K_values,
                                       std::size_t grid_points) {
  if (grid_points < 2) throw InvalidArgument("figure1 needs at least 2 grid points");
  std::vector<Figure1Row> rows;
  rows.reserve(K_values.size() * grid_points);
  for (const std::size_t K : K_values) {
    if (K == 0) throw InvalidArgument("K must be >= 1");
    const double upper = 1.0 / std::sqrt(static_cast<double>(K + 1));
    for (std::size_t i = 1; i <= grid_points; ++i) {
      const double delta =
          upper * static_cast<double>(i) / static_cast<double>(grid_points + 1);
      const BoundInputs b{K, delta, 1.0};
      const double z1 = z1_sufficient_bound(b);
      const double z2 = z2_prior_bound(b);
      rows.push_back({K, delta, z1, z2, z1 - z2});
    }
  }
  return rows;
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
  std::string out = "K,delta,z1,z2,diff\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", r.K, r.delta, r.z1,
                  r.z2, r.diff);
    out += buf;
  }
  return out;
}

bool verify_inequality_20(std::size_t grid_points) {
  if (grid_points == 0) throw InvalidArgument("grid_points must be >= 1");
  for (std::size_t i = 1; i <= grid_points; ++i) {
    const double delta = static_cast<double>(i) / static_cast<double>(grid_points + 1);
    if (!(2.0 - std::sqrt(1.0 + delta) > std::sqrt(1.0 - delta))) return false;
  }
  return true;
}

}  // namespace bomp
