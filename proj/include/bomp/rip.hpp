#pragma once

#include <cstddef>
#include <cstdint>

#include "bomp/core.hpp"

namespace bomp {

/// Roughly 1e8 floating-point operations.
inline constexpr double kDefaultRipBudget = 1e8;

struct RipReport {
  std::size_t order = 0;
  double delta = 0.0;
  /// Support whose Gram spectrum attains delta (first in lexicographic order
  /// on ties).
  BlockSet arg_support;
  /// Extremes over every enumerated Gram matrix.
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::size_t supports_checked = 0;

  /// Def.-style block RIP needs delta < 1; larger values mean the property
  /// fails at this order.
  bool rip_holds() const { return delta < 1.0; }
};

struct SupportSpectrum {
  double lambda_min;
  double lambda_max;
  double delta() const;
};

/// Extreme eigenvalues of A[S]^T A[S].
SupportSpectrum support_spectrum(const BlockedMatrix& a, std::span<const BlockIndex> support);

/// C(M, K) as a double (exact for the sizes this library can enumerate).
double binomial(std::size_t n, std::size_t k);

/// Estimated cost C(M,K) * (K d)^3 of exact enumeration.
double exact_rip_cost(const BlockLayout& layout, std::size_t order);

/// Exact block-RIP constant of the given order by enumerating every size-K
/// block support. Throws BudgetExceeded when exact_rip_cost exceeds budget,
/// InvalidArgument when order is 0 or exceeds M. Splits the enumeration over
/// worker_count() threads; the result does not depend on the split.
RipReport exact_block_rip(const BlockedMatrix& a, std::size_t order,
                          double budget = kDefaultRipBudget);

/// Same as exact_block_rip with an explicit worker count.
RipReport exact_block_rip(const BlockedMatrix& a, std::size_t order, double budget,
                          std::size_t workers);

/// Max per-support delta over `trials` uniformly drawn size-K supports; a
/// lower bound on the exact constant. When trials >= C(M,K) every support is
/// visited and the exact value is returned.
RipReport rip_lower_bound_sampled(const BlockedMatrix& a, std::size_t order,
                                  std::size_t trials, std::uint64_t seed);

/// Combination of rank `rank` (lexicographic, 1-based entries) among all
/// size-k subsets of {1..n}.
BlockSet unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank);

/// Advances to the next lexicographic combination; false after the last.
bool next_combination(BlockSet& combo, std::size_t n);

}  // namespace bomp
