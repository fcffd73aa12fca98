#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bomp/core.hpp"

namespace bomp {

/// One configuration of the recovery analysis at iteration k: the true
/// support T, the blocks Lambda already chosen (a strict subset of T), a
/// probe block j outside T, and the free parameter t > 0 of the
/// polarization identity for eta.
struct ProofInstance {
  SensingProblem problem;
  BlockSignal truth;
  Vector noise;
  BlockSet support;
  BlockSet partial_support;
  BlockIndex probe = 0;
  double t = 1.0;

  /// Throws InvalidArgument unless Lambda is a strict subset of T, j is
  /// outside T, the truth lives on T, y = A x + e and t > 0.
  void validate() const;
};

/// Coefficients of the orthogonal projection of y onto range(A[T]), zero
/// off T. Throws RankDeficient if A[T] is.
BlockSignal compute_xi(const SensingProblem& problem, std::span<const BlockIndex> support);

/// (||r||^2 - ||P_T^perp e||^2) / ||alpha||_{2,1} - ||A[j]^T r||_2 with
/// r = P_Lambda^perp y and alpha = xi[T \ Lambda]. Throws DegenerateInstance
/// when ||alpha||_{2,1} = 0.
double eta_direct(const ProofInstance& inst);

/// eta through the polarization identity
///   (1/4t)||B((t + c)u - v)||^2 - (1/4t)||B((t - c)u + v)||^2 - e' P_T^perp A[j] h
/// with c = 1/||alpha||_{2,1}, B = P_Lambda^perp [A[T \ Lambda], A[j]],
/// u = (alpha; 0), v = (0; h) and h the unit direction of A[j]^T P_Lambda^perp y.
/// Projectors are formed from thin Householder Q factors, independently of
/// the solver. Throws DegenerateInstance when the h normalizer vanishes.
double eta_via_identity(const ProofInstance& inst);

/// h = A[j]^T P_Lambda^perp y / ||A[j]^T P_Lambda^perp y||_2.
Vector probe_direction(const ProofInstance& inst);

struct Lemma1Result {
  double lhs = 0;          ///< min_{i in T} ||xi[i]||_2
  double rhs = 0;          ///< min_{i in T} ||x[i]||_2 - eps / sqrt(1 - delta)
  bool holds = false;      ///< lhs >= rhs - 1e-10
  double theta_norm = 0;   ///< ||xi[T] - x[T]||_2
  double theta_bound = 0;  ///< eps / sqrt(1 - delta)
  bool theta_holds = false;
  double delta = 0;        ///< block-RIP constant used
};

/// Checks the noise-perturbation bound on projected coefficients with the
/// exact block-RIP constant of order min(|T|+1, M) and eps = noise bound of
/// the problem. Throws InvalidArgument when that constant is >= 1.
Lemma1Result lemma1_check(const SensingProblem& problem, const BlockSignal& truth,
                          std::span<const BlockIndex> support);

/// Same with a caller-supplied RIP constant.
Lemma1Result lemma1_check(const SensingProblem& problem, const BlockSignal& truth,
                          std::span<const BlockIndex> support, double delta);

/// Gaussian instance with columns scaled by 1/sqrt(m) and M <= 8, resampled
/// until the order-(K+1) block-RIP constant is below 1 and the needed
/// subdictionaries are well conditioned. Fully determined by (seed, trial).
struct RandomProofInstance {
  ProofInstance instance;
  double delta;  ///< exact block-RIP constant of order K+1
};

RandomProofInstance random_proof_instance(std::uint64_t seed, std::uint64_t trial);

inline const std::vector<double> kIdentityTValues{0.1, 1.0, 10.0};

struct ProofSweep {
  std::size_t trials = 0;
  std::size_t identity_checks = 0;
  std::size_t identity_passes = 0;
  double worst_identity_residual = 0;  ///< max |direct - identity| / max(1, |direct|)
  std::size_t lemma1_passes = 0;
  std::size_t theta_passes = 0;
  double worst_lemma1_margin = 0;      ///< min lhs - rhs
  std::size_t nesting_passes = 0;
  std::size_t decomposition_passes = 0;
  std::size_t unit_probe_passes = 0;
};

/// Runs every appendix check on `trials` random instances.
ProofSweep verify_proofs(std::size_t trials, std::uint64_t seed);

}  // namespace bomp
