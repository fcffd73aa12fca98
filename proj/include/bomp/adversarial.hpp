#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bomp/core.hpp"

namespace bomp {

/// Family of instances on which BOMP's first selection is wrong.
///
/// The matrix is d(K+1) x d(K+1):
///
///     [ I_d      0      ]
///     [ s E    a I_{dK} ]      s = delta/sqrt(K), a = sqrt(1 - delta^2),
///
/// where E stacks K copies of I_d. The signal puts t0 e_1 in blocks 2..K+1,
/// the noise is epsilon e_1 in block 1. Requires 0 < delta < 1/sqrt(K+1).
struct AdversarialParams {
  std::size_t d = 1;
  std::size_t K = 1;
  double delta = 0.1;
  double epsilon = 1.0;
  /// Common block magnitude; defaults to 0.99 * max_t0_for_failure.
  std::optional<double> t0;

  void validate() const;
  double s() const;
  double a() const;
  /// t0 or its default.
  double resolved_t0() const;
};

/// Support is {2, ..., K+1}.
using AdversarialInstance = PlantedInstance;

AdversarialInstance build_adversarial_instance(const AdversarialParams& p);

/// The matrix alone, A(d). Any 0 < delta < 1 is accepted here.
BlockedMatrix adversarial_matrix(std::size_t d, std::size_t K, double delta);

/// Eigenvalues of A(1)^T A(1) in closed form, ascending. Rejects d != 1;
/// like adversarial_matrix, only needs 0 < delta < 1.
std::vector<double> closed_form_spectrum(const AdversarialParams& p);

/// eps / (sqrt(1-delta^2) (sqrt(1-delta^2) - sqrt(K) delta)); BOMP's first
/// pick is block 1 for every t0 strictly below it.
double max_t0_for_failure(std::size_t K, double delta, double epsilon);

struct FailureReport {
  BlockIndex first_selected_index = 0;
  Vector scores;              ///< ||A[l]^T y||_2 for l = 1..K+1
  double outside_score = 0;   ///< closed form eps + K a s t0 (block 1)
  double inside_score = 0;    ///< closed form a^2 t0 (blocks 2..K+1)
  bool failed = false;        ///< first selection is block 1
  double t0 = 0;
  double t0_bound = 0;
  BlockSet final_support;     ///< after K iterations
  bool support_recovered = false;
};

FailureReport demonstrate_failure(const AdversarialParams& p);

}  // namespace bomp
