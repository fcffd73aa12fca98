#include "bomp/proof_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bomp/errors.hpp"
#include "bomp/parallel.hpp"
#include "bomp/random.hpp"
#include "bomp/rip.hpp"
#include "bomp/solver.hpp"

namespace bomp {
namespace {

constexpr double kProofTol = 1e-10;
constexpr double kIdentityTol = 1e-9;

// Orthogonal-complement projector of range(sub), applied through a thin Q.
class ComplementProjector {
 public:
  explicit ComplementProjector(const Matrix& sub) {
    if (sub.cols() == 0) return;
    const Eigen::HouseholderQR<Matrix> qr(sub);
    q_ = qr.householderQ() * Matrix::Identity(sub.rows(), sub.cols());
  }

  Matrix apply(const Matrix& v) const {
    if (q_.cols() == 0) return v;
    return v - q_ * (q_.transpose() * v);
  }

 private:
  Matrix q_;
};

BlockSet set_difference(const BlockSet& a, const BlockSet& b) {
  BlockSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

double mixed_l21(const BlockLayout& layout, const Vector& coeffs, std::size_t count) {
  const auto d = static_cast<Eigen::Index>(layout.block_width());
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sum += coeffs.segment(static_cast<Eigen::Index>(i) * d, d).norm();
  }
  return sum;
}

struct Alpha {
  BlockSet blocks;  // T \ Lambda
  Vector values;    // xi on those blocks, concatenated
  double l21;
};

Alpha alpha_of(const ProofInstance& inst) {
  const auto& layout = inst.problem.matrix().layout();
  const BlockSignal xi = compute_xi(inst.problem, inst.support);
  Alpha alpha;
  alpha.blocks = set_difference(inst.support, inst.partial_support);
  alpha.values = gather_blocks(layout, xi.values(), alpha.blocks);
  alpha.l21 = mixed_l21(layout, alpha.values, alpha.blocks.size());
  if (!(alpha.l21 > 0.0)) {
    throw DegenerateInstance("alpha = xi[T \\ Lambda] has zero mixed l2/l1 norm");
  }
  return alpha;
}

}  // namespace

void ProofInstance::validate() const {
  const auto& layout = problem.matrix().layout();
  if (truth.layout() != layout) throw InvalidArgument("truth layout mismatch");
  if (static_cast<std::size_t>(noise.size()) != problem.matrix().rows()) {
    throw InvalidArgument("noise length does not match matrix rows");
  }
  const BlockSet t_sorted = normalize_block_set(layout, support);
  const BlockSet l_sorted = normalize_block_set(layout, partial_support);
  if (t_sorted != support || l_sorted != partial_support) {
    throw InvalidArgument("supports must be ascending");
  }
  if (!std::includes(support.begin(), support.end(), partial_support.begin(),
                     partial_support.end()) ||
      partial_support.size() >= support.size()) {
    throw InvalidArgument("Lambda must be a strict subset of T");
  }
  if (!layout.contains(probe) ||
      std::find(support.begin(), support.end(), probe) != support.end()) {
    throw InvalidArgument("probe index must be a block outside T");
  }
  const BlockSet truth_support = block_support(truth, 0.0);
  if (!std::includes(support.begin(), support.end(), truth_support.begin(),
                     truth_support.end())) {
    throw InvalidArgument("truth has energy outside T");
  }
  const Vector y = problem.matrix().entries() * truth.values() + noise;
  if ((y - problem.observation()).norm() >
      1e-12 * std::max(1.0, problem.observation().norm())) {
    throw InvalidArgument("observation is not A x + e");
  }
  if (!(t > 0.0)) throw InvalidArgument("t must be > 0");
}

BlockSignal compute_xi(const SensingProblem& problem, std::span<const BlockIndex> support) {
  return project_least_squares(problem.matrix(), support, problem.observation()).estimate;
}

double eta_direct(const ProofInstance& inst) {
  inst.validate();
  const auto& a = inst.problem.matrix();
  const Alpha alpha = alpha_of(inst);
  const Vector r =
      project_least_squares(a, inst.partial_support, inst.problem.observation()).residual;
  const Vector noise_perp = project_least_squares(a, inst.support, inst.noise).residual;
  const double probe_score = (a.block(inst.probe).transpose() * r).norm();
  return (r.squaredNorm() - noise_perp.squaredNorm()) / alpha.l21 - probe_score;
}

Vector probe_direction(const ProofInstance& inst) {
  inst.validate();
  const auto& a = inst.problem.matrix();
  const ComplementProjector lambda_perp(extract_blocks(a, inst.partial_support));
  const Vector r = lambda_perp.apply(inst.problem.observation());
  const Vector g = a.block(inst.probe).transpose() * r;
  const double norm = g.norm();
  if (!(norm > 0.0)) {
    throw DegenerateInstance("A[j]^T P_Lambda^perp y vanishes; h is undefined");
  }
  return g / norm;
}

double eta_via_identity(const ProofInstance& inst) {
  inst.validate();
  const auto& a = inst.problem.matrix();
  const auto d = static_cast<Eigen::Index>(a.layout().block_width());
  const Alpha alpha = alpha_of(inst);
  const Vector h = probe_direction(inst);

  const ComplementProjector lambda_perp(extract_blocks(a, inst.partial_support));
  const ComplementProjector support_perp(extract_blocks(a, inst.support));

  const Matrix rest = extract_blocks(a, alpha.blocks);
  Matrix stacked(rest.rows(), rest.cols() + d);
  stacked << rest, a.block(inst.probe);
  const Matrix b = lambda_perp.apply(stacked);

  Vector u = Vector::Zero(stacked.cols());
  Vector v = Vector::Zero(stacked.cols());
  u.head(rest.cols()) = alpha.values;
  v.tail(d) = h;

  const double c = 1.0 / alpha.l21;
  const double t = inst.t;
  const double plus = (b * ((t + c) * u - v)).squaredNorm();
  const double minus = (b * ((t - c) * u + v)).squaredNorm();
  const Vector noise_perp = support_perp.apply(inst.noise);
  const double cross = noise_perp.dot(a.block(inst.probe) * h);
  return plus / (4.0 * t) - minus / (4.0 * t) - cross;
}

Lemma1Result lemma1_check(const SensingProblem& problem, const BlockSignal& truth,
                          std::span<const BlockIndex> support) {
  const auto& layout = problem.matrix().layout();
  const std::size_t order = std::min(support.size() + 1, layout.num_blocks());
  const RipReport rip = exact_block_rip(problem.matrix(), order);
  return lemma1_check(problem, truth, support, rip.delta);
}

Lemma1Result lemma1_check(const SensingProblem& problem, const BlockSignal& truth,
                          std::span<const BlockIndex> support, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidArgument("lemma check needs a block-RIP constant in [0, 1)");
  }
  const auto& layout = problem.matrix().layout();
  const BlockSet sorted = normalize_block_set(layout, support);
  if (sorted.empty()) throw InvalidArgument("support must be nonempty");
  const BlockSignal xi = compute_xi(problem, sorted);

  Lemma1Result res;
  res.delta = delta;
  res.theta_bound = problem.noise_bound() / std::sqrt(1.0 - delta);
  double min_xi = std::numeric_limits<double>::infinity();
  double min_x = std::numeric_limits<double>::infinity();
  for (const BlockIndex i : sorted) {
    min_xi = std::min(min_xi, xi.block(i).norm());
    min_x = std::min(min_x, truth.block(i).norm());
  }
  res.lhs = min_xi;
  res.rhs = min_x - res.theta_bound;
  res.holds = res.lhs >= res.rhs - kProofTol;
  res.theta_norm = (gather_blocks(layout, xi.values(), sorted) -
                    gather_blocks(layout, truth.values(), sorted))
                       .norm();
  res.theta_holds = res.theta_norm <= res.theta_bound + kProofTol;
  return res;
}

RandomProofInstance random_proof_instance(std::uint64_t seed, std::uint64_t trial) {
  auto rng = keyed_engine(seed, trial);
  while (true) {
    const std::size_t M = uniform_index(rng, 3, 8);
    const std::size_t d = uniform_index(rng, 1, 3);
    const std::size_t K = uniform_index(rng, 1, std::min<std::size_t>(3, M - 1));
    const std::size_t m = uniform_index(rng, 3 * (K + 1) * d, 6 * (K + 1) * d);
    const BlockLayout layout(M, d);
    const auto rows = static_cast<Eigen::Index>(m);
    BlockedMatrix a(layout, gaussian_matrix(rng, rows,
                                            static_cast<Eigen::Index>(layout.ambient_dim()),
                                            1.0 / std::sqrt(static_cast<double>(m))));

    const BlockSet support = uniform_subset(rng, M, K);
    const Vector coeffs = gaussian_vector(rng, static_cast<Eigen::Index>(K * d));
    BlockSignal truth = scatter_blocks(layout, coeffs, support);
    const double noise_norm = 0.05 + 1.95 * std::uniform_real_distribution<double>()(rng);
    Vector noise = gaussian_vector(rng, rows);
    noise *= noise_norm / noise.norm();

    const std::size_t lambda_size = uniform_index(rng, 0, K - 1);
    const BlockSet lambda_pick = uniform_subset(rng, K, lambda_size);
    BlockSet partial;
    for (const BlockIndex pos : lambda_pick) partial.push_back(support[pos - 1]);
    BlockSet outside;
    for (BlockIndex l = 1; l <= M; ++l) {
      if (!std::binary_search(support.begin(), support.end(), l)) outside.push_back(l);
    }
    const BlockIndex probe = outside[uniform_index(rng, 0, outside.size() - 1)];

    const RipReport rip = exact_block_rip(a, K + 1, kDefaultRipBudget, 1);
    if (!(rip.delta < 1.0)) continue;

    Vector y = a.entries() * truth.values() + noise;
    SensingProblem problem(std::move(a), std::move(y), noise.norm());
    ProofInstance inst{std::move(problem), std::move(truth), std::move(noise),
                       support,            partial,          probe,
                       1.0};
    try {
      compute_xi(inst.problem, inst.support);
      probe_direction(inst);
    } catch (const RankDeficient&) {
      continue;
    } catch (const DegenerateInstance&) {
      continue;
    }
    return {std::move(inst), rip.delta};
  }
}

ProofSweep verify_proofs(std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  const std::size_t workers = worker_count();
  std::vector<ProofSweep> partial(chunk_count(trials, workers));
  parallel_chunks(trials, workers, [&](std::size_t chunk, std::size_t begin,
                                       std::size_t end) {
    ProofSweep local;
    local.worst_lemma1_margin = std::numeric_limits<double>::infinity();
    for (std::size_t trial = begin; trial < end; ++trial) {
      RandomProofInstance sample = random_proof_instance(seed, trial);
      ProofInstance& inst = sample.instance;
      ++local.trials;

      const double direct = eta_direct(inst);
      for (const double t : kIdentityTValues) {
        inst.t = t;
        const double via = eta_via_identity(inst);
        const double residual = std::abs(direct - via) / std::max(1.0, std::abs(direct));
        local.worst_identity_residual = std::max(local.worst_identity_residual, residual);
        ++local.identity_checks;
        if (residual <= kIdentityTol) ++local.identity_passes;
      }
      if (std::abs(probe_direction(inst).norm() - 1.0) <= kProofTol) {
        ++local.unit_probe_passes;
      }

      const Lemma1Result lemma =
          lemma1_check(inst.problem, inst.truth, inst.support, sample.delta);
      local.worst_lemma1_margin = std::min(local.worst_lemma1_margin, lemma.lhs - lemma.rhs);
      if (lemma.holds) ++local.lemma1_passes;
      if (lemma.theta_holds) ++local.theta_passes;

      // P_Lambda^perp P_T^perp y = P_T^perp y.
      const auto& a = inst.problem.matrix();
      const Vector& y = inst.problem.observation();
      const Vector t_perp = project_least_squares(a, inst.support, y).residual;
      const Vector nested = project_least_squares(a, inst.partial_support, t_perp).residual;
      if ((nested - t_perp).norm() <= kProofTol * std::max(1.0, y.norm())) {
        ++local.nesting_passes;
      }

      // xi[T] = x[T] + theta[T], theta the coefficients of P_T e.
      const auto& layout = a.layout();
      const Vector xi = gather_blocks(layout, compute_xi(inst.problem, inst.support).values(),
                                      inst.support);
      const Vector theta = gather_blocks(
          layout, project_least_squares(a, inst.support, inst.noise).estimate.values(),
          inst.support);
      const Vector x = gather_blocks(layout, inst.truth.values(), inst.support);
      if ((xi - x - theta).norm() <= kProofTol * std::max(1.0, xi.norm())) {
        ++local.decomposition_passes;
      }
    }
    partial[chunk] = local;
  });

  ProofSweep total;
  total.worst_lemma1_margin = std::numeric_limits<double>::infinity();
  for (const auto& p : partial) {
    total.trials += p.trials;
    total.identity_checks += p.identity_checks;
    total.identity_passes += p.identity_passes;
    total.worst_identity_residual =
        std::max(total.worst_identity_residual, p.worst_identity_residual);
    total.lemma1_passes += p.lemma1_passes;
    total.theta_passes += p.theta_passes;
    total.worst_lemma1_margin = std::min(total.worst_lemma1_margin, p.worst_lemma1_margin);
    total.nesting_passes += p.nesting_passes;
    total.decomposition_passes += p.decomposition_passes;
    total.unit_probe_passes += p.unit_probe_passes;
  }
  return total;
}

}  // namespace bomp
