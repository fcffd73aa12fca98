#include "bomp/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bomp/errors.hpp"
#include "bomp/solver.hpp"

namespace bomp {

namespace {

// The matrix and its spectrum only need 0 < delta < 1.
void check_shape(std::size_t d, std::size_t K, double delta) {
  if (d == 0 || K == 0) throw InvalidArgument("d and K must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must satisfy 0 < delta < 1");
}

}  // namespace

void AdversarialParams::validate() const {
  if (d == 0 || K == 0) throw InvalidArgument("d and K must be >= 1");
  if (!(delta > 0.0 && delta < 1.0 / std::sqrt(static_cast<double>(K + 1)))) {
    throw InvalidArgument("delta must satisfy 0 < delta < 1/sqrt(K+1)");
  }
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (t0 && !(*t0 > 0.0)) throw InvalidArgument("t0 must be > 0");
  const double aa = a();
  if (!(aa * aa - static_cast<double>(K) * aa * s() > 0.0)) {
    throw InvalidArgument("a^2 - K a s must be positive");
  }
}

double AdversarialParams::s() const {
  return delta / std::sqrt(static_cast<double>(K));
}

double AdversarialParams::a() const { return std::sqrt(1.0 - delta * delta); }

double AdversarialParams::resolved_t0() const {
  return t0.value_or(0.99 * max_t0_for_failure(K, delta, epsilon));
}

BlockedMatrix adversarial_matrix(std::size_t d, std::size_t K, double delta) {
  check_shape(d, K, delta);
  const AdversarialParams p{d, K, delta, 1.0, {}};
  const auto w = static_cast<Eigen::Index>(d);
  const auto n = static_cast<Eigen::Index>(d * (K + 1));
  Matrix a = Matrix::Zero(n, n);
  a.topLeftCorner(w, w).setIdentity();
  for (std::size_t k = 1; k <= K; ++k) {
    const auto row = static_cast<Eigen::Index>(k) * w;
    a.block(row, 0, w, w) = p.s() * Matrix::Identity(w, w);
    a.block(row, row, w, w) = p.a() * Matrix::Identity(w, w);
  }
  return BlockedMatrix(BlockLayout(K + 1, d), std::move(a));
}

AdversarialInstance build_adversarial_instance(const AdversarialParams& p) {
  p.validate();
  const double t0 = p.resolved_t0();
  BlockedMatrix matrix = adversarial_matrix(p.d, p.K, p.delta);
  const BlockLayout layout = matrix.layout();
  const auto n = static_cast<Eigen::Index>(layout.ambient_dim());

  Vector x = Vector::Zero(n);
  Vector e = Vector::Zero(n);
  Vector y = Vector::Zero(n);
  e(0) = p.epsilon;
  y(0) = p.epsilon;
  BlockSet support;
  for (BlockIndex l = 2; l <= layout.num_blocks(); ++l) {
    const auto first = static_cast<Eigen::Index>(layout.offset(l));
    x(first) = t0;
    y(first) = p.a() * t0;
    support.push_back(l);
  }
  return AdversarialInstance{SensingProblem(std::move(matrix), std::move(y), p.epsilon),
                             BlockSignal(layout, std::move(x)), std::move(e),
                             std::move(support)};
}

std::vector<double> closed_form_spectrum(const AdversarialParams& p) {
  check_shape(p.d, p.K, p.delta);
  if (p.d != 1) {
    throw InvalidArgument("closed-form spectrum is only available for d = 1");
  }
  std::vector<double> ev;
  if (p.K > 1) ev.assign(p.K - 1, 1.0 - p.delta * p.delta);
  ev.push_back(1.0 + p.delta);
  ev.push_back(1.0 - p.delta);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double max_t0_for_failure(std::size_t K, double delta, double epsilon) {
  const AdversarialParams p{1, K, delta, epsilon, {}};
  p.validate();
  const double a = std::sqrt(1.0 - delta * delta);
  const double denom = a * (a - std::sqrt(static_cast<double>(K)) * delta);
  if (!(denom > 0.0)) throw Infeasible("failure bound denominator is not positive");
  return epsilon / denom;
}

FailureReport demonstrate_failure(const AdversarialParams& p) {
  const AdversarialInstance inst = build_adversarial_instance(p);
  const auto& a = inst.problem.matrix();
  const Vector& y = inst.problem.observation();

  FailureReport report;
  report.t0 = p.resolved_t0();
  report.t0_bound = max_t0_for_failure(p.K, p.delta, p.epsilon);
  report.scores = block_scores(a, y);
  report.first_selected_index = select_block(a, y);
  report.outside_score =
      p.epsilon + static_cast<double>(p.K) * p.a() * p.s() * report.t0;
  report.inside_score = p.a() * p.a() * report.t0;
  report.failed = report.first_selected_index == 1;

  const RecoveryTrace trace =
      run_bomp(inst.problem, StoppingRule::fixed_iterations(p.K));
  report.final_support = trace.support();
  report.support_recovered = report.final_support == inst.support;
  return report;
}

}  // namespace bomp
